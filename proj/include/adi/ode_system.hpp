#pragma once

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "adi/dop853.hpp"
#include "adi/geometry.hpp"

namespace adi {

// How tau is started at x0 > 0.
//  pinned:    tau(x0) = tau0
//  linear:    tau(x0) = tau0 - 2 pi x0
//  quadratic: tau(x0) = tau0 - 2 pi x0 + pi^2 tau0 x0^2
enum class TauStart { pinned, linear, quadratic };

struct SeriesInit {
  double x0;
  double psi0;       // pi/2 - pi x0 + (pi^2/2) x0^2
  double tau_start;

  static SeriesInit make(double tau0, double x0, TauStart start);
};

struct OdeOptions {
  double x0 = 1e-6;
  double rtol = 1e-12;
  double atol = 1e-12;
  TauStart tau_start = TauStart::pinned;
};

struct OdeState {
  double psi;
  double tau;
};

// Right-hand side of the (psi, tau) system.
OdeState ode_rhs(double x, OdeState s);

class OdeSolution {
 public:
  OdeSolution(double tau0, OdeOptions opt, SeriesInit init,
              std::vector<dop853::DenseStep<2>> steps, dop853::Stats stats);

  double tau0() const { return tau0_; }
  const OdeOptions& options() const { return opt_; }
  const SeriesInit& init() const { return init_; }
  const dop853::Stats& stats() const { return stats_; }
  double x_begin() const { return init_.x0; }
  double x_end() const { return x_end_; }
  std::size_t n_steps() const { return steps_.size(); }

  // Accepted step boundaries x0 = g_0 < g_1 < ... < g_n = 1.
  std::vector<double> grid() const;

  // Dense evaluation; OutOfRange outside [x0, 1].
  OdeState at(double x) const;
  OdeState derivative_at(double x) const;

 private:
  const dop853::DenseStep<2>& locate(double x) const;

  double tau0_;
  OdeOptions opt_;
  SeriesInit init_;
  std::vector<dop853::DenseStep<2>> steps_;
  dop853::Stats stats_;
  double x_end_;
};

// Integrates on [x0, 1]. StepFailure if error control cannot proceed.
OdeSolution integrate(double tau0, const OdeOptions& opt = {});

// T(x) = (cos 2pi x - tau sin 2pi x, -sin 2pi x - tau cos 2pi x).
Point2 curve_point(const OdeSolution& sol, double x);
Point2 curve_point(double x, double tau);

// Max over x in {0.1, 0.5, 0.8} of |psi_a - psi_b| + |tau_a - tau_b| for two
// starting abscissas.
double self_check_init(double tau0, double x0a = 1e-6, double x0b = 1e-7,
                       TauStart start = TauStart::quadratic, double rtol = 1e-12,
                       double atol = 1e-12);

void write_csv(std::ostream& os, const OdeSolution& sol, int resolution);
nlohmann::json metadata_json(const OdeSolution& sol);

const char* to_string(TauStart s);

}  // namespace adi
