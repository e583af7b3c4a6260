#include "adi/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "adi/numerics.hpp"
#include "adi/plot.hpp"

namespace adi {

using num::kPi;

namespace {

double g_of(const OdeSolution& sol, double x) { return curve_point(sol, x).x - 1.0; }

// Grid cell [a, b] holding the first negative-to-nonnegative change of
// T_1 - 1 beyond the trivial root at x0.
std::pair<double, double> crossing_bracket(const OdeSolution& sol,
                                           const FeasibilityOptions& opt) {
  const auto xs = linspace(sol.x_begin(), sol.x_end(), opt.scan_grid);
  double prev = g_of(sol, xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double g = g_of(sol, xs[i]);
    if (prev < -opt.left_margin && g >= 0.0) return {xs[i - 1], xs[i]};
    prev = g;
  }
  throw Error(ErrorKind::NoCrossing, "T_1 - 1 has no sign change on (x0, 1]");
}

double bisect_root(const OdeSolution& sol, std::pair<double, double> br, double tol) {
  auto g = [&](double x) { return g_of(sol, x); };
  return num::bisect(g, br.first, br.second, tol);
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "grid must have at least 2 points");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

Deployment deployment_parameter(const OdeSolution& sol, const FeasibilityOptions& opt) {
  const auto br = crossing_bracket(sol, opt);
  const double xi = bisect_root(sol, br, opt.tol_bisect);
  const double xi_fine = bisect_root(sol, br, opt.tol_recheck);
  return {xi, std::abs(xi - xi_fine)};
}

double deployment_parameter_exact(const OdeSolution& sol, const FeasibilityOptions& opt) {
  return bisect_root(sol, crossing_bracket(sol, opt), 0.0);
}

double clearance_from_tau_min(double tau_min) {
  // sqrt(1 + t^2) - 1 without cancellation.
  return tau_min * tau_min / (std::sqrt(1.0 + tau_min * tau_min) + 1.0);
}

Clearance clearance_certificate(const OdeSolution& sol, double xi,
                                const FeasibilityOptions& opt) {
  const double a = sol.x_begin();
  const double b = std::min(xi, sol.x_end());
  const auto xs = linspace(a, b, std::max(opt.clearance_scan, 3));
  std::size_t j = 0;
  double best = sol.at(xs[0]).tau;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double v = sol.at(xs[i]).tau;
    if (v < best) best = v, j = i;
  }
  const double lo = xs[j == 0 ? 0 : j - 1];
  const double hi = xs[std::min(j + 1, xs.size() - 1)];
  auto tau = [&](double x) { return sol.at(x).tau; };
  Clearance c{best, xs[j], 0.0};
  if (j > 0 && j + 1 < xs.size()) {
    const auto r = num::brent_minimize(tau, lo, hi, opt.tol_brent);
    if (r.fx < c.tau_min) c.tau_min = r.fx, c.x_min = r.x;
  }
  c.clearance = clearance_from_tau_min(c.tau_min);
  return c;
}

FeasibilityReport assess_feasibility(const OdeSolution& sol, const FeasibilityOptions& opt) {
  FeasibilityReport r;
  r.tau0 = sol.tau0();
  try {
    const auto dep = deployment_parameter(sol, opt);
    r.xi = dep.xi;
    r.xi_selfcheck_gap = dep.selfcheck_gap;
    r.theta = (1.0 - r.xi) * kPi;
    const auto c = clearance_certificate(sol, r.xi, opt);
    r.tau_min = c.tau_min;
    r.clearance = c.clearance;
    r.feasible = r.tau_min > opt.feasible_threshold && r.xi > 0.5 && r.xi <= 1.0;
    if (!r.feasible) r.message = "curve does not keep tau above the feasibility threshold";
  } catch (const Error& e) {
    r.error = e.kind();
    r.message = e.what();
    r.feasible = false;
  }
  return r;
}

FeasibilityReport assess_feasibility(double tau0, const OdeOptions& ode,
                                     const FeasibilityOptions& opt) {
  try {
    return assess_feasibility(integrate(tau0, ode), opt);
  } catch (const Error& e) {
    FeasibilityReport r;
    r.tau0 = tau0;
    r.error = e.kind();
    r.message = e.what();
    return r;
  }
}

std::vector<FeasibilityReport> feasibility_sweep(double lo, double hi, int grid,
                                                 const OdeOptions& ode,
                                                 const FeasibilityOptions& opt,
                                                 Exec exec) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "sweep needs lo < hi");
  const auto taus = linspace(lo, hi, grid);
  std::vector<FeasibilityReport> out(taus.size());
  parallel_for(exec, taus.size(), [&](std::size_t i) {
    try {
      out[i] = assess_feasibility(taus[i], ode, opt);
    } catch (const std::exception& e) {
      out[i].tau0 = taus[i];
      out[i].error = ErrorKind::InvalidArgument;
      out[i].message = e.what();
    }
  });
  return out;
}

void write_csv(std::ostream& os, const std::vector<FeasibilityReport>& reports) {
  const auto old_prec = os.precision(std::numeric_limits<double>::max_digits10);
  os << "tau0,xi,theta,tau_min,clearance,feasible,selfcheck_gap\n";
  for (const auto& r : reports) {
    os << r.tau0 << ',' << r.xi << ',' << r.theta << ',' << r.tau_min << ',' << r.clearance
       << ',' << (r.feasible ? 1 : 0) << ',' << r.xi_selfcheck_gap << '\n';
  }
  os.precision(old_prec);
}

void write_svg(std::ostream& os, const std::vector<FeasibilityReport>& reports) {
  plot::Series xi{"xi", {}, {}}, tmin{"tau_min", {}, {}}, th{"theta", {}, {}};
  for (const auto& r : reports) {
    xi.x.push_back(r.tau0), xi.y.push_back(r.xi);
    tmin.x.push_back(r.tau0), tmin.y.push_back(r.tau_min);
    th.x.push_back(r.tau0), th.y.push_back(r.theta);
  }
  plot::write_svg(os, {{"deployment parameter", "tau0", "xi", {xi}, {}},
                       {"minimum of tau on [x0, xi]", "tau0", "tau_min", {tmin}, {{0.2, "0.2"}}},
                       {"deployment angle", "tau0", "theta", {th},
                        {{0.52, "0.52"}, {1.148, "1.148"}}}});
}

nlohmann::json to_json(const FeasibilityReport& r) {
  nlohmann::json j = {{"tau0", r.tau0},
                      {"xi", r.xi},
                      {"theta", r.theta},
                      {"tau_min", r.tau_min},
                      {"clearance", r.clearance},
                      {"feasible", r.feasible},
                      {"selfcheck_gap", r.xi_selfcheck_gap}};
  if (r.error) {
    j["error"] = std::string(to_string(*r.error));
    j["message"] = r.message;
  }
  return j;
}

}  // namespace adi
