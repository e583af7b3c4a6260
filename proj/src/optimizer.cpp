#include "adi/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "adi/numerics.hpp"
#include "adi/plot.hpp"

namespace adi {

using num::kPi;

CostEvaluation evaluate_cost_detail(double tau0, const PipelineOptions& opt) {
  const auto sol = integrate(tau0, opt.ode);
  const double xi = deployment_parameter_exact(sol, opt.feas);
  return {xi, total_cost(sol, xi, opt.quad)};
}

double evaluate_cost(double tau0, const PipelineOptions& opt) {
  return evaluate_cost_detail(tau0, opt).breakdown.total;
}

std::vector<CostSample> sweep_cost(double lo, double hi, int grid, const PipelineOptions& opt,
                                   Exec exec) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "sweep needs lo < hi");
  const auto taus = linspace(lo, hi, grid);
  std::vector<CostSample> out(taus.size());
  parallel_for(exec, taus.size(), [&](std::size_t i) {
    out[i].tau0 = taus[i];
    try {
      out[i].cost = evaluate_cost(taus[i], opt);
    } catch (const Error& e) {
      out[i].error = e.kind();
      out[i].message = e.what();
    } catch (const std::exception& e) {
      out[i].error = ErrorKind::InvalidArgument;
      out[i].message = e.what();
    }
  });
  return out;
}

void check_unimodal(const std::vector<CostSample>& sweep) {
  for (const auto& s : sweep)
    if (s.error) throw Error(*s.error, "sweep point failed: " + s.message);
  int changes = 0;
  int last_sign = 0;
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    const double d = sweep[i].cost - sweep[i - 1].cost;
    const int sign = (d > 0) - (d < 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) {
      ++changes;
      if (last_sign > 0)
        throw Error(ErrorKind::NotUnimodal, "cost rises then falls inside the bracket",
                    static_cast<long>(i));
    }
    last_sign = sign;
  }
  if (changes > 1)
    throw Error(ErrorKind::NotUnimodal, "multiple local minima in the bracket");
}

namespace {

// Vertex of the least-squares parabola through (x_i, f_i); nullopt if the
// fit is not convex.
std::optional<double> parabola_vertex(const std::vector<double>& x,
                                      const std::vector<double>& f) {
  const double c = x[x.size() / 2];
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v - c));
  if (!(scale > 0)) return std::nullopt;
  const double f0 = f[f.size() / 2];
  // Normal equations for f - f0 = a u^2 + b u + e with u = (x - c)/scale.
  std::array<double, 5> s{};
  std::array<double, 3> r{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = (x[i] - c) / scale;
    double p = 1.0;
    for (int k = 0; k < 5; ++k) s[k] += p, p *= u;
    const double y = f[i] - f0;
    r[0] += y * u * u, r[1] += y * u, r[2] += y;
  }
  const double m[3][3] = {{s[4], s[3], s[2]}, {s[3], s[2], s[1]}, {s[2], s[1], s[0]}};
  auto det3 = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det3(m);
  if (d == 0.0) return std::nullopt;
  double ma[3][3], mb[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ma[i][j] = mb[i][j] = m[i][j];
  for (int i = 0; i < 3; ++i) ma[i][0] = r[i], mb[i][1] = r[i];
  const double a = det3(ma) / d;
  const double b = det3(mb) / d;
  if (!(a > 0.0)) return std::nullopt;
  const double u = -b / (2.0 * a);
  if (std::abs(u) > 1.0) return std::nullopt;
  return c + u * scale;
}

}  // namespace

OptimalSolution refine_minimum(double lo, double hi, const PipelineOptions& opt,
                               const RefineOptions& ropt, Exec exec) {
  const auto sweep = sweep_cost(lo, hi, ropt.grid, opt, exec);
  check_unimodal(sweep);
  std::size_t imin = 0;
  for (std::size_t i = 1; i < sweep.size(); ++i)
    if (sweep[i].cost < sweep[imin].cost) imin = i;

  OptimalSolution out{};
  out.grid_resolution = ropt.grid;
  out.sweep_min_cost = sweep[imin].cost;
  out.bracket_lo = sweep[imin == 0 ? 0 : imin - 1].tau0;
  out.bracket_hi = sweep[std::min(imin + 1, sweep.size() - 1)].tau0;

  auto f = [&](double t) { return evaluate_cost(t, opt); };
  const auto g = num::golden_section(f, out.bracket_lo, out.bracket_hi, ropt.xtol);
  out.golden_tau0 = g.x;
  out.golden_iterations = g.iterations;
  double tau_star = g.x;
  out.polished = false;

  if (ropt.polish && ropt.polish_points >= 5) {
    const double a = std::max(out.bracket_lo, g.x - ropt.polish_halfwidth);
    const double b = std::min(out.bracket_hi, g.x + ropt.polish_halfwidth);
    if (b > a) {
      const auto xs = linspace(a, b, ropt.polish_points);
      std::vector<double> fs(xs.size());
      parallel_for(exec, xs.size(), [&](std::size_t i) {
        try {
          fs[i] = f(xs[i]);
        } catch (...) {
          fs[i] = std::numeric_limits<double>::quiet_NaN();
        }
      });
      if (std::all_of(fs.begin(), fs.end(), [](double v) { return std::isfinite(v); })) {
        if (auto v = parabola_vertex(xs, fs)) {
          tau_star = *v;
          out.polished = true;
        }
      }
    }
  }

  const auto sol = integrate(tau_star, opt.ode);
  const double xi = deployment_parameter_exact(sol, opt.feas);
  out.tau0_star = tau_star;
  out.xi_star = xi;
  out.theta_star = (1.0 - xi) * kPi;
  out.breakdown = total_cost(sol, xi, opt.quad);
  out.cost_star = out.breakdown.total;
  out.certificate = assess_feasibility(sol, opt.feas);
  out.tau_min_star = out.certificate.tau_min;
  out.clearance_star = out.certificate.clearance;
  return out;
}

nlohmann::json to_json(const OptimalSolution& s) {
  return {{"tau0_star", s.tau0_star},
          {"xi_star", s.xi_star},
          {"theta_star", s.theta_star},
          {"cost_star", s.cost_star},
          {"tau_min_star", s.tau_min_star},
          {"clearance_star", s.clearance_star},
          {"bracket", {s.bracket_lo, s.bracket_hi}},
          {"grid_resolution", s.grid_resolution},
          {"sweep_min_cost", s.sweep_min_cost},
          {"golden_tau0", s.golden_tau0},
          {"golden_iterations", s.golden_iterations},
          {"polished", s.polished},
          {"breakdown", to_json(s.breakdown)},
          {"certificate", to_json(s.certificate)}};
}

void write_csv(std::ostream& os, const std::vector<CostSample>& sweep) {
  const auto old_prec = os.precision(std::numeric_limits<double>::max_digits10);
  os << "tau0,cost,error\n";
  for (const auto& s : sweep)
    os << s.tau0 << ',' << s.cost << ',' << (s.error ? to_string(*s.error) : "") << '\n';
  os.precision(old_prec);
}

void write_svg(std::ostream& os, const std::vector<CostSample>& sweep) {
  plot::Series c{"cost", {}, {}};
  for (const auto& s : sweep) c.x.push_back(s.tau0), c.y.push_back(s.cost);
  plot::write_svg(os, {{"average inspection cost", "tau0", "cost", {c},
                        {{3.549259, "3.549259"}, {3.549260, "3.549260"}}}});
}

}  // namespace adi
