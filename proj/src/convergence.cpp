#include "adi/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "adi/error.hpp"

namespace adi {

RecursionSample interpolate(const DiscreteTrajectory& traj, double x) {
  const double u = x * traj.n;
  const int m = traj.m();
  if (!(u >= 0.0 && u <= m))
    throw Error(ErrorKind::OutOfRange, "abscissa outside the recursion range");
  const int i = std::min(static_cast<int>(std::floor(u)), m - 1);
  const double w = u - i;
  auto y = [&](int j) { return j == 0 ? std::acos(0.0) : traj.steps[j - 1].y; };
  auto t = [&](int j) { return j == 0 ? traj.tau0 : traj.steps[j - 1].t; };
  return {(1.0 - w) * y(i) + w * y(i + 1), (1.0 - w) * t(i) + w * t(i + 1)};
}

ConvergenceRow continuum_error(const OdeSolution& sol, int n, double lo, double hi) {
  if (!(0.0 < lo && lo < hi && hi < sol.x_end()))
    throw Error(ErrorKind::InvalidArgument, "need 0 < lo < hi < x_end");
  const int m = static_cast<int>(std::ceil(hi * n));
  const auto tr = forward_recursion(sol.tau0(), n, m);
  ConvergenceRow row{n, 0.0, 0.0};
  for (int i = static_cast<int>(std::ceil(lo * n)); i <= m; ++i) {
    const double x = static_cast<double>(i) / n;
    if (x < lo || x > hi) continue;
    const OdeState s = sol.at(x);
    row.err_psi = std::max(row.err_psi, std::abs(tr.steps[i - 1].y - s.psi));
    row.err_tau = std::max(row.err_tau, std::abs(tr.steps[i - 1].t - s.tau));
  }
  return row;
}

std::vector<ConvergenceRow> convergence_table(double tau0, const std::vector<int>& ns,
                                              double lo, double hi, const OdeOptions& ode,
                                              Exec exec) {
  const OdeSolution sol = integrate(tau0, ode);
  std::vector<ConvergenceRow> rows(ns.size());
  std::vector<std::string> errors(ns.size());
  parallel_for(exec, ns.size(), [&](std::size_t j) {
    try {
      rows[j] = continuum_error(sol, ns[j], lo, hi);
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  });
  for (std::size_t j = 0; j < ns.size(); ++j)
    if (!errors[j].empty())
      throw Error(ErrorKind::InvalidArgument, "n = " + std::to_string(ns[j]) + ": " + errors[j],
                  static_cast<long>(j));
  for (std::size_t j = 1; j < rows.size(); ++j) {
    rows[j].ratio_psi = rows[j - 1].err_psi / rows[j].err_psi;
    rows[j].ratio_tau = rows[j - 1].err_tau / rows[j].err_tau;
  }
  return rows;
}

nlohmann::json to_json(const std::vector<ConvergenceRow>& rows) {
  auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows)
    j.push_back({{"n", r.n},
                 {"err_psi", r.err_psi},
                 {"err_tau", r.err_tau},
                 {"ratio_psi", num(r.ratio_psi)},
                 {"ratio_tau", num(r.ratio_tau)}});
  return j;
}

void write_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  const auto old = os.precision(std::numeric_limits<double>::max_digits10);
  os << "n,err_psi,err_tau,ratio_psi,ratio_tau\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.err_psi << ',' << r.err_tau << ',' << r.ratio_psi << ','
       << r.ratio_tau << '\n';
  os.precision(old);
}

}  // namespace adi
