#pragma once

#include <json.hpp>

#include "adi/ode_system.hpp"

namespace adi {

struct QuadratureOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  unsigned max_depth = 15;
};

// 2 pi int_0^xi x tau / sin psi dx, integrand taken as zero on [0, x0].
double inspection_integral(const OdeSolution& sol, double xi,
                           const QuadratureOptions& q = {});

// Integrand 2 pi x tau(x) / sin psi(x), i.e. the derivative of I at x.
double inspection_integrand(const OdeSolution& sol, double x);

// inspection_integral / xi.
double partial_cost(const OdeSolution& sol, double xi, const QuadratureOptions& q = {});

struct CostBreakdown {
  double tau0;
  double xi;
  double theta;
  double log_term;
  double deployment_term;
  double inspection_integral;
  double total;
};

// log((1 + sin t)/(1 - sin t)) / (2 pi), written via atanh.
double log_term(double theta);

double b_theta(double theta, double s);

CostBreakdown total_cost(const OdeSolution& sol, double xi, const QuadratureOptions& q = {});

nlohmann::json to_json(const CostBreakdown& c);

}  // namespace adi
