#include "adi/cost.hpp"

#include <cmath>
#include <vector>

#include "adi/error.hpp"
#include "adi/numerics.hpp"

namespace adi {

using num::kPi;

double inspection_integrand(const OdeSolution& sol, double x) {
  const auto v = sol.at(x);
  return 2.0 * kPi * x * v.tau / std::sin(v.psi);
}

double inspection_integral(const OdeSolution& sol, double xi, const QuadratureOptions& q) {
  if (!(xi >= 0.0)) throw Error(ErrorKind::InvalidArgument, "xi must be nonnegative");
  if (xi > sol.x_end()) throw Error(ErrorKind::OutOfRange, "xi beyond integrated range");
  if (xi <= sol.x_begin()) return 0.0;
  // Panels follow the integrator's steps so each one sees a single polynomial.
  std::vector<double> breaks;
  for (double g : sol.grid()) {
    if (g >= xi) break;
    breaks.push_back(g);
  }
  breaks.push_back(xi);
  auto f = [&](double x) { return inspection_integrand(sol, x); };
  return num::integrate_panels(f, breaks, q.rtol, q.atol, q.max_depth).value;
}

double partial_cost(const OdeSolution& sol, double xi, const QuadratureOptions& q) {
  if (!(xi > 0.0)) throw Error(ErrorKind::InvalidArgument, "xi must be positive");
  return inspection_integral(sol, xi, q) / xi;
}

double log_term(double theta) { return std::atanh(std::sin(theta)) / kPi; }

double b_theta(double theta, double s) {
  if (!(theta >= 0.0 && theta < kPi / 2.0))
    throw Error(ErrorKind::InvalidArgument, "theta must lie in [0, pi/2)");
  return log_term(theta) + (1.0 - theta / kPi) * (1.0 / std::cos(theta) + s);
}

CostBreakdown total_cost(const OdeSolution& sol, double xi, const QuadratureOptions& q) {
  if (!(xi > 0.5 && xi <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "xi must lie in (1/2, 1]");
  CostBreakdown c;
  c.tau0 = sol.tau0();
  c.xi = xi;
  c.theta = (1.0 - xi) * kPi;
  c.log_term = std::atanh(std::sin(xi * kPi)) / kPi;
  c.deployment_term = xi / std::cos((1.0 - xi) * kPi);
  c.inspection_integral = inspection_integral(sol, xi, q);
  c.total = c.log_term + c.deployment_term + c.inspection_integral;
  return c;
}

nlohmann::json to_json(const CostBreakdown& c) {
  return {{"tau0", c.tau0},
          {"xi", c.xi},
          {"theta", c.theta},
          {"log_term", c.log_term},
          {"deployment_term", c.deployment_term},
          {"integral", c.inspection_integral},
          {"total", c.total}};
}

}  // namespace adi
