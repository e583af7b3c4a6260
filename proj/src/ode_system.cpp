#include "adi/ode_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "adi/error.hpp"
#include "adi/numerics.hpp"

namespace adi {

using num::kPi;

SeriesInit SeriesInit::make(double tau0, double x0, TauStart start) {
  if (!(x0 > 0.0) || x0 > 1e-5)
    throw Error(ErrorKind::InvalidArgument, "x0 must lie in (0, 1e-5]");
  SeriesInit s;
  s.x0 = x0;
  s.psi0 = kPi / 2.0 - kPi * x0 + (kPi * kPi / 2.0) * x0 * x0;
  switch (start) {
    case TauStart::pinned: s.tau_start = tau0; break;
    case TauStart::linear: s.tau_start = tau0 - 2.0 * kPi * x0; break;
    case TauStart::quadratic:
      s.tau_start = tau0 - 2.0 * kPi * x0 + kPi * kPi * tau0 * x0 * x0;
      break;
  }
  return s;
}

OdeState ode_rhs(double x, OdeState s) {
  const double cot = std::cos(s.psi) / std::sin(s.psi);
  return {-2.0 * kPi + cot / x, 2.0 * kPi * (s.tau * cot - 1.0)};
}

OdeSolution::OdeSolution(double tau0, OdeOptions opt, SeriesInit init,
                         std::vector<dop853::DenseStep<2>> steps, dop853::Stats stats)
    : tau0_(tau0), opt_(opt), init_(init), steps_(std::move(steps)), stats_(stats) {
  x_end_ = steps_.empty() ? init_.x0 : steps_.back().x + steps_.back().h;
}

std::vector<double> OdeSolution::grid() const {
  std::vector<double> g;
  g.reserve(steps_.size() + 1);
  for (const auto& s : steps_) g.push_back(s.x);
  g.push_back(x_end_);
  return g;
}

const dop853::DenseStep<2>& OdeSolution::locate(double x) const {
  if (!(x >= init_.x0 && x <= x_end_) || steps_.empty())
    throw Error(ErrorKind::OutOfRange, "abscissa outside the integrated range");
  auto it = std::upper_bound(steps_.begin(), steps_.end(), x,
                             [](double v, const auto& s) { return v < s.x; });
  return it == steps_.begin() ? *it : *std::prev(it);
}

OdeState OdeSolution::at(double x) const {
  const auto v = locate(x).value(x);
  return {v[0], v[1]};
}

OdeState OdeSolution::derivative_at(double x) const {
  const auto v = locate(x).derivative(x);
  return {v[0], v[1]};
}

OdeSolution integrate(double tau0, const OdeOptions& opt) {
  if (!(tau0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "tau0 must be positive");
  if (!(opt.rtol > 0.0) || !(opt.atol > 0.0))
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
  const SeriesInit init = SeriesInit::make(tau0, opt.x0, opt.tau_start);
  dop853::Options dopt;
  dopt.rtol = opt.rtol;
  dopt.atol = opt.atol;
  dop853::Stats stats;
  auto rhs = [](double x, const dop853::State<2>& y, dop853::State<2>& dy) {
    if (!(y[0] > 0.0 && y[0] < kPi)) {
      dy = {std::numeric_limits<double>::quiet_NaN(), 0.0};
      return;
    }
    const OdeState d = ode_rhs(x, {y[0], y[1]});
    dy = {d.psi, d.tau};
  };
  auto steps = dop853::integrate<2>(rhs, init.x0, 1.0, {init.psi0, init.tau_start}, dopt,
                                    &stats);
  return OdeSolution(tau0, opt, init, std::move(steps), stats);
}

Point2 curve_point(double x, double tau) {
  const double c = std::cos(2.0 * kPi * x);
  const double s = std::sin(2.0 * kPi * x);
  return {c - tau * s, -s - tau * c};
}

Point2 curve_point(const OdeSolution& sol, double x) {
  return curve_point(x, sol.at(x).tau);
}

double self_check_init(double tau0, double x0a, double x0b, TauStart start, double rtol,
                       double atol) {
  OdeOptions a{x0a, rtol, atol, start};
  OdeOptions b{x0b, rtol, atol, start};
  const auto sa = integrate(tau0, a);
  if (x0a == x0b) return 0.0;
  const auto sb = integrate(tau0, b);
  double gap = 0.0;
  for (double x : {0.1, 0.5, 0.8}) {
    const auto va = sa.at(x);
    const auto vb = sb.at(x);
    gap = std::max(gap, std::abs(va.psi - vb.psi) + std::abs(va.tau - vb.tau));
  }
  return gap;
}

void write_csv(std::ostream& os, const OdeSolution& sol, int resolution) {
  if (resolution < 2) throw Error(ErrorKind::InvalidArgument, "resolution must be >= 2");
  const auto old_prec = os.precision(std::numeric_limits<double>::max_digits10);
  os << "x,psi,tau\n";
  const double a = sol.x_begin();
  const double b = sol.x_end();
  for (int i = 0; i < resolution; ++i) {
    const double x = (i == resolution - 1) ? b : a + (b - a) * i / (resolution - 1);
    const auto v = sol.at(x);
    os << x << ',' << v.psi << ',' << v.tau << '\n';
  }
  os.precision(old_prec);
}

const char* to_string(TauStart s) {
  switch (s) {
    case TauStart::pinned: return "pinned";
    case TauStart::linear: return "linear";
    case TauStart::quadratic: return "quadratic";
  }
  return "unknown";
}

nlohmann::json metadata_json(const OdeSolution& sol) {
  return {{"tau0", sol.tau0()},
          {"x0", sol.x_begin()},
          {"rtol", sol.options().rtol},
          {"atol", sol.options().atol},
          {"tau_start", to_string(sol.options().tau_start)},
          {"n_steps", sol.n_steps()}};
}

}  // namespace adi
