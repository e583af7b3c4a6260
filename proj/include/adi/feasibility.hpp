#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adi/error.hpp"
#include "adi/exec.hpp"
#include "adi/ode_system.hpp"

namespace adi {

struct FeasibilityOptions {
  int scan_grid = 10000;
  double tol_bisect = 1e-8;
  double tol_recheck = 5e-10;
  double tol_brent = 1e-10;
  int clearance_scan = 400;
  double feasible_threshold = 1e-6;
  double left_margin = 1e-9;  // bracket left end needs T_1 - 1 < -margin
};

struct Deployment {
  double xi;
  double selfcheck_gap;
};

// Smallest root of T_1(x) = 1 beyond x0, bisected to tol_bisect, plus the
// gap to a tol_recheck re-run. NoCrossing if the scan finds no sign change.
Deployment deployment_parameter(const OdeSolution& sol,
                                const FeasibilityOptions& opt = {});

// Same root bisected until the bracket cannot shrink.
double deployment_parameter_exact(const OdeSolution& sol,
                                  const FeasibilityOptions& opt = {});

struct Clearance {
  double tau_min;
  double x_min;
  double clearance;
};

double clearance_from_tau_min(double tau_min);

// Minimum of tau over [x0, xi] (grid scan, then Brent) and the resulting
// radial distance of the curve from the unit circle.
Clearance clearance_certificate(const OdeSolution& sol, double xi,
                                const FeasibilityOptions& opt = {});

struct FeasibilityReport {
  double tau0 = 0.0;
  double xi = std::numeric_limits<double>::quiet_NaN();
  double theta = std::numeric_limits<double>::quiet_NaN();
  double tau_min = std::numeric_limits<double>::quiet_NaN();
  double clearance = std::numeric_limits<double>::quiet_NaN();
  bool feasible = false;
  double xi_selfcheck_gap = std::numeric_limits<double>::quiet_NaN();
  std::optional<ErrorKind> error;
  std::string message;
};

FeasibilityReport assess_feasibility(const OdeSolution& sol,
                                     const FeasibilityOptions& opt = {});

// Integrates and assesses; numerical failures land in the report.
FeasibilityReport assess_feasibility(double tau0, const OdeOptions& ode,
                                     const FeasibilityOptions& opt = {});

std::vector<double> linspace(double lo, double hi, int n);

std::vector<FeasibilityReport> feasibility_sweep(double lo, double hi, int grid,
                                                 const OdeOptions& ode = {},
                                                 const FeasibilityOptions& opt = {},
                                                 Exec exec = Exec::openmp);

void write_csv(std::ostream& os, const std::vector<FeasibilityReport>& reports);
void write_svg(std::ostream& os, const std::vector<FeasibilityReport>& reports);
nlohmann::json to_json(const FeasibilityReport& r);

}  // namespace adi
