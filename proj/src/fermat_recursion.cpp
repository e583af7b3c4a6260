#include "adi/fermat_recursion.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "adi/error.hpp"
#include "adi/numerics.hpp"

namespace adi {

using num::kPi;

std::vector<double> DiscreteTrajectory::t_values() const {
  std::vector<double> t;
  t.reserve(steps.size() + 1);
  t.push_back(tau0);
  for (const auto& s : steps) t.push_back(s.t);
  return t;
}

double DiscreteTrajectory::tangency_angle(int i) const {
  return PerimeterPoint::wrapped(2.0 * kPi - i * alpha).phi;
}

namespace {

// The angle chain does not depend on t, so t_m is affine in t_0 with slopes
// that reach 1e5..1e8. Everything is carried in long double to keep the
// shooting residual resolvable.
using ld = long double;

struct AngleChain {
  ld alpha, ta, sa;
  std::vector<ld> x;  // x_1 .. x_m at x[0 .. m-1]
  std::vector<ld> y;  // y_0 .. y_m
};

AngleChain angle_chain(double alpha, int m) {
  AngleChain c;
  c.alpha = alpha;
  c.ta = std::tan(c.alpha / 2);
  c.sa = std::sin(c.alpha);
  c.x.reserve(static_cast<std::size_t>(m));
  c.y.reserve(static_cast<std::size_t>(m) + 1);
  c.y.push_back(std::acos(ld{0}));
  for (int i = 1; i <= m; ++i) {
    const ld x = c.y.back() - c.alpha;
    if (!(x > 0)) throw Error(ErrorKind::AngleDomain, "y_{i-1} - alpha <= 0", i);
    c.x.push_back(x);
    c.y.push_back(std::acos((static_cast<ld>(i) / (i + 1)) * std::cos(x)));
  }
  return c;
}

// t_m, or -inf if some t_{i-1} <= tan(alpha/2).
ld final_t(const AngleChain& c, ld tau0) {
  ld t = tau0;
  for (std::size_t j = 0; j < c.x.size(); ++j) {
    if (!(t > c.ta)) return -std::numeric_limits<ld>::infinity();
    t = (t - c.ta) * std::sin(c.y[j]) / std::sin(c.x[j]) - c.ta;
  }
  return t;
}

DiscreteTrajectory build(const AngleChain& c, double alpha, ld tau0) {
  const int m = static_cast<int>(c.x.size());
  DiscreteTrajectory tr;
  tr.alpha = alpha;
  tr.tau0 = static_cast<double>(tau0);
  tr.steps.reserve(static_cast<std::size_t>(m));
  tr.points.reserve(static_cast<std::size_t>(m) + 1);
  tr.points.push_back(tangent_point(0.0, tr.tau0));
  ld t_prev = tau0;
  ld weighted = 0;
  for (int i = 1; i <= m; ++i) {
    if (!(t_prev > c.ta))
      throw Error(ErrorKind::TriangleDegenerate, "t_{i-1} <= tan(alpha/2)", i);
    const ld sx = std::sin(c.x[i - 1]);
    const ld t = (t_prev - c.ta) * std::sin(c.y[i - 1]) / sx - c.ta;
    const ld d = (t_prev - c.ta) * c.sa / sx;
    tr.steps.push_back({i, static_cast<double>(c.x[i - 1]), static_cast<double>(c.y[i]),
                        static_cast<double>(t), static_cast<double>(d)});
    tr.points.push_back(tangent_point(2.0 * kPi - i * alpha, static_cast<double>(t)));
    weighted += i * d;
    t_prev = t;
  }
  tr.n = static_cast<int>(std::lround(2.0 * kPi / alpha));
  tr.cost_weighted = static_cast<double>(weighted / (m + 1));
  return tr;
}

}  // namespace

DiscreteTrajectory forward_recursion_alpha(double tau0, double alpha, int m) {
  if (!(alpha > 0.0) || !std::isfinite(tau0) || m < 0)
    throw Error(ErrorKind::InvalidArgument, "forward recursion needs alpha > 0, m >= 0");
  return build(angle_chain(alpha, m), alpha, tau0);
}

DiscreteTrajectory forward_recursion(double tau0, int n, int m) {
  if (n < 5) throw Error(ErrorKind::InvalidArgument, "n must be at least 5");
  if (m > n) throw Error(ErrorKind::InvalidArgument, "m must not exceed n");
  if (!(tau0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "tau0 must be positive");
  auto tr = forward_recursion_alpha(tau0, 2.0 * kPi / n, m);
  tr.n = n;
  return tr;
}

DiscreteTrajectory shoot_theta(double theta, int k, const ShootOptions& opt) {
  if (!(theta >= 0.0 && theta < kPi / 2.0))
    throw Error(ErrorKind::InvalidArgument, "theta must lie in [0, pi/2)");
  if (k < 5) throw Error(ErrorKind::InvalidArgument, "k must be at least 5");
  const double alpha = 2.0 * (kPi - theta) / k;
  const double target = std::tan(theta);
  const AngleChain chain = angle_chain(alpha, k);

  // -inf (collapsed chain) counts as "tau0 too small".
  auto residual = [&](ld tau0) { return final_t(chain, tau0) - target; };

  ld lo = std::tan(alpha / 2.0) + opt.bracket_lo_offset;
  ld hi = opt.bracket_hi;
  const ld flo = residual(lo);
  const ld fhi = residual(hi);
  if (!(flo <= 0 && fhi >= 0) || (flo == 0 && fhi == 0))
    throw Error(ErrorKind::NoBracket, "t_k - tan(theta) has no sign change on the bracket");
  ld mid = flo == 0 ? lo : hi;
  ld fmid = flo == 0 ? flo : fhi;
  while (std::abs(fmid) > opt.tol) {
    const ld next = (lo + hi) / 2;
    if (!(next > lo && next < hi)) break;
    mid = next;
    fmid = residual(mid);
    if (fmid < 0) lo = mid;
    else hi = mid;
  }
  if (!(std::abs(fmid) <= opt.tol)) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "bisection bracket collapsed at |t_k - tan(theta)| = "
        << static_cast<double>(std::abs(fmid)) << " > tol";
    throw Error(ErrorKind::MaxIterations, msg.str());
  }

  auto tr = build(chain, alpha, mid);
  tr.n = k;
  tr.theta = theta;
  tr.points.back() = Point2{1.0, target};
  return tr;
}

double discrete_cost(const DiscreteTrajectory& traj, Weights w) {
  const int m = traj.m();
  if (m == 0) return 0.0;
  double sum = 0.0;
  for (const auto& s : traj.steps) {
    const double weight = (w == Weights::upper) ? s.i : (s.i - 1);
    sum += weight * s.d;
  }
  return (w == Weights::upper) ? sum / (m + 1) : sum / m;
}

double snell_residual(const RecursionStep& s) {
  return std::cos(s.x) / std::cos(s.y) - static_cast<double>(s.i + 1) / s.i;
}

double refraction_travel_time(Point2 a1, Point2 a2, double s1, double s2, double x) {
  return std::hypot(x - a1.x, a1.y) / s1 + std::hypot(x - a2.x, a2.y) / s2;
}

RefractionInstance refraction_optimum(Point2 a1, Point2 a2, double s1, double s2) {
  if (!(a1.y > 0.0) || !(a2.y < 0.0))
    throw Error(ErrorKind::InvalidArgument, "a1 must lie above and a2 below the interface");
  if (!(s1 > 0.0) || !(s2 > 0.0))
    throw Error(ErrorKind::InvalidArgument, "speeds must be positive");

  auto T = [&](double x) { return refraction_travel_time(a1, a2, s1, s2, x); };
  const double lo = std::min(a1.x, a2.x);
  const double hi = std::max(a1.x, a2.x);
  double x = lo;
  if (hi > lo) {
    x = num::golden_section(T, lo, hi, 1e-10).x;
    // Newton on T'(x) = 0; T is strictly convex so the polish only tightens.
    for (int it = 0; it < 8; ++it) {
      const double r1 = std::hypot(x - a1.x, a1.y);
      const double r2 = std::hypot(x - a2.x, a2.y);
      const double g = (x - a1.x) / (s1 * r1) + (x - a2.x) / (s2 * r2);
      const double hess = a1.y * a1.y / (s1 * r1 * r1 * r1) +
                          a2.y * a2.y / (s2 * r2 * r2 * r2);
      const double xn = std::clamp(x - g / hess, lo, hi);
      if (xn == x) break;
      x = xn;
    }
  }
  const double r1 = std::hypot(x - a1.x, a1.y);
  const double r2 = std::hypot(x - a2.x, a2.y);
  RefractionInstance out;
  out.a1 = a1;
  out.a2 = a2;
  out.s1 = s1;
  out.s2 = s2;
  out.x_star = x;
  out.alpha1 = std::asin(std::clamp((x - a1.x) / r1, -1.0, 1.0));
  out.alpha2 = std::asin(std::clamp((a2.x - x) / r2, -1.0, 1.0));
  out.travel_time = T(x);
  return out;
}

nlohmann::json to_json(const DiscreteTrajectory& traj) {
  nlohmann::json j;
  j["n"] = traj.n;
  j["alpha"] = traj.alpha;
  j["tau0"] = traj.tau0;
  if (traj.theta) j["theta"] = *traj.theta;
  j["cost_upper"] = discrete_cost(traj, Weights::upper);
  j["cost_lower"] = discrete_cost(traj, Weights::lower);
  j["t"] = traj.t_values();
  return j;
}

Polyline to_polyline(const DiscreteTrajectory& traj) {
  return Polyline(std::vector<Point2>(traj.points.rbegin(), traj.points.rend()));
}

}  // namespace adi
