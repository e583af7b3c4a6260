#pragma once

// Thin wrappers over Boost.Math root finding, minimization and quadrature,
// plus a golden-section search (not provided by Boost).

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

#include "adi/error.hpp"

namespace adi::num {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

struct MinResult {
  double x;
  double fx;
  int iterations;
};

// Bisection on a bracket with f(lo), f(hi) of opposite sign. xtol = 0 runs
// until the bracket cannot shrink further in double precision.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol, int max_iter = 400) {
  auto done = [xtol](double a, double b) {
    return (b - a) <= xtol || std::nextafter(a, b) >= b ||
           std::nextafter(std::nextafter(a, b), b) >= b;
  };
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw Error(ErrorKind::NoBracket, "bisect: no sign change");
  std::uintmax_t it = static_cast<std::uintmax_t>(max_iter);
  auto r = boost::math::tools::bisect(f, lo, hi, done, it);
  return 0.5 * (r.first + r.second);
}

// Brent's method (golden section + parabolic steps) with an absolute
// abscissa tolerance, mapped onto Boost's relative bit count. Boost caps the
// request at half the mantissa, i.e. about 1.5e-8 relative.
template <class F>
MinResult brent_minimize(F&& f, double a, double b, double xtol,
                         int max_iter = 500) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  int bits = static_cast<int>(std::ceil(1.0 - std::log2(xtol / scale)));
  bits = std::clamp(bits, 8, std::numeric_limits<double>::digits / 2);
  std::uintmax_t it = static_cast<std::uintmax_t>(max_iter);
  auto r = boost::math::tools::brent_find_minima(f, a, b, bits, it);
  if (it >= static_cast<std::uintmax_t>(max_iter))
    throw Error(ErrorKind::MaxIterations, "brent minimization did not converge");
  return {r.first, r.second, static_cast<int>(it)};
}

// Golden-section search for a unimodal f on [a, b] down to bracket width xtol.
template <class F>
MinResult golden_section(F&& f, double a, double b, double xtol,
                         int max_iter = 500) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (b - a > xtol && it < max_iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  if (b - a > xtol)
    throw Error(ErrorKind::MaxIterations, "golden section did not converge");
  return fc < fd ? MinResult{c, fc, it} : MinResult{d, fd, it};
}

struct QuadResult {
  double value;
  double error;
};

// Adaptive 15-point Gauss-Kronrod over consecutive panels [p_i, p_{i+1}].
// Succeeds when the summed error estimate is within max(atol, rtol*|I|).
template <class F>
QuadResult integrate_panels(F&& f, std::span<const double> breaks, double rtol,
                            double atol, unsigned max_depth = 15) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  QuadResult out{0.0, 0.0};
  double l1_total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    double err = 0.0;
    double l1 = 0.0;
    // Boost compares its unscaled error estimate with a scaled tolerance, so
    // each panel is mapped onto [0, 1] to keep the two commensurate.
    const double a = breaks[i];
    const double w = breaks[i + 1] - breaks[i];
    auto g = [&](double u) { return w * f(a + w * u); };
    out.value += GK::integrate(g, 0.0, 1.0, max_depth, rtol, &err, &l1);
    out.error += err;
    l1_total += l1;
  }
  if (!std::isfinite(out.value) ||
      out.error > std::max({atol, rtol * std::abs(out.value), rtol * l1_total}))
    throw Error(ErrorKind::QuadratureNoConverge,
                "error estimate exceeds tolerance after max subdivisions");
  return out;
}

}  // namespace adi::num
