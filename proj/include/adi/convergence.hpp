#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include <json.hpp>

#include "adi/exec.hpp"
#include "adi/fermat_recursion.hpp"
#include "adi/ode_system.hpp"

namespace adi {

// Piecewise-linear interpolant of (y_i, t_i) over the abscissae x_i = i/n.
struct RecursionSample {
  double psi;
  double tau;
};
RecursionSample interpolate(const DiscreteTrajectory& traj, double x);

struct ConvergenceRow {
  int n;
  double err_psi;  // sup over nodes in [lo, hi] of |y_i - psi(i/n)|
  double err_tau;  // same for |t_i - tau(i/n)|
  double ratio_psi = std::numeric_limits<double>::quiet_NaN();  // previous row / this row
  double ratio_tau = std::numeric_limits<double>::quiet_NaN();
};

ConvergenceRow continuum_error(const OdeSolution& sol, int n, double lo = 0.1, double hi = 0.8);

// Rows for each n in order; ratios compare consecutive rows.
std::vector<ConvergenceRow> convergence_table(double tau0, const std::vector<int>& ns,
                                              double lo = 0.1, double hi = 0.8,
                                              const OdeOptions& ode = {1e-6, 1e-12, 1e-12,
                                                                       TauStart::quadratic},
                                              Exec exec = Exec::openmp);

nlohmann::json to_json(const std::vector<ConvergenceRow>& rows);
void write_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

}  // namespace adi
