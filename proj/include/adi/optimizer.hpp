#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adi/cost.hpp"
#include "adi/error.hpp"
#include "adi/exec.hpp"
#include "adi/feasibility.hpp"
#include "adi/ode_system.hpp"

namespace adi {

inline constexpr double kWindowLo = 1.64697;
inline constexpr double kWindowHi = 1.6525;

struct PipelineOptions {
  OdeOptions ode;
  FeasibilityOptions feas;
  QuadratureOptions quad;
};

struct CostEvaluation {
  double xi;
  CostBreakdown breakdown;
};

// Full cost at tau0 with xi bisected to the limit of double precision.
CostEvaluation evaluate_cost_detail(double tau0, const PipelineOptions& opt = {});
double evaluate_cost(double tau0, const PipelineOptions& opt = {});

struct CostSample {
  double tau0;
  double cost = std::numeric_limits<double>::quiet_NaN();
  std::optional<ErrorKind> error;
  std::string message;
};

std::vector<CostSample> sweep_cost(double lo, double hi, int grid,
                                   const PipelineOptions& opt = {}, Exec exec = Exec::openmp);

// NotUnimodal unless successive differences change sign at most once, from
// decreasing to increasing. A failed sample rethrows its error kind.
void check_unimodal(const std::vector<CostSample>& sweep);

struct RefineOptions {
  int grid = 2000;
  double xtol = 1e-9;
  bool polish = true;
  double polish_halfwidth = 2e-8;
  int polish_points = 21;
};

struct OptimalSolution {
  double tau0_star;
  double xi_star;
  double theta_star;
  double cost_star;
  double clearance_star;
  double tau_min_star;
  double bracket_lo;
  double bracket_hi;
  int grid_resolution;
  double sweep_min_cost;
  double golden_tau0;
  int golden_iterations;
  bool polished;
  FeasibilityReport certificate;
  CostBreakdown breakdown;
};

// Grid sweep, unimodality check, golden section on the cell pair around the
// grid minimum, then an optional least-squares parabola polish.
OptimalSolution refine_minimum(double lo, double hi, const PipelineOptions& opt = {},
                               const RefineOptions& ropt = {}, Exec exec = Exec::openmp);

nlohmann::json to_json(const OptimalSolution& s);
void write_csv(std::ostream& os, const std::vector<CostSample>& sweep);
void write_svg(std::ostream& os, const std::vector<CostSample>& sweep);

}  // namespace adi
