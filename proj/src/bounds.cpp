#include "adi/bounds.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "adi/cost.hpp"
#include "adi/error.hpp"
#include "adi/feasibility.hpp"
#include "adi/geometry.hpp"
#include "adi/numerics.hpp"
#include "adi/plot.hpp"

namespace adi {

using num::kPi;

double h_lower(double theta) {
  const double s = kPi * (std::tan(theta) + kPi - 2.0 * theta + 3.0) / (4.0 * (kPi - theta));
  return b_theta(theta, s);
}

double h_prime(double theta) {
  const double t = std::tan(theta);
  return 0.25 * (t * t - 1.0) + (kPi - theta) * t / std::cos(theta) / kPi;
}

namespace {

// Tangent-line geometry of the (theta, k) chain.
struct Chain {
  int k;
  std::vector<Point2> p;  // tangency points
  std::vector<Point2> e;  // unit directions of increasing t
  std::vector<double> w;  // w[i] weights segment i, w[0] unused

  Chain(double theta, int k_, WeightDenominator den) : k(k_) {
    const double alpha = 2.0 * (kPi - theta) / k;
    const double denom = den == WeightDenominator::k_plus_1 ? k + 1.0 : static_cast<double>(k);
    p.resize(k + 1);
    e.resize(k + 1);
    w.assign(k + 1, 0.0);
    for (int i = 0; i <= k; ++i) {
      const double phi = 2.0 * kPi - i * alpha;
      p[i] = {std::cos(phi), std::sin(phi)};
      e[i] = {std::sin(phi), -std::cos(phi)};
      if (i >= 1) w[i] = (i - 1) / denom;
    }
    // The last line is tangent at 2*theta; keep its point exact.
    p[k] = {std::cos(2.0 * theta), std::sin(2.0 * theta)};
    e[k] = {std::sin(2.0 * theta), -std::cos(2.0 * theta)};
  }

  Point2 A(int i, double t) const { return p[i] + t * e[i]; }

  double objective(std::span<const double> t) const {
    double f = 0.0;
    for (int i = 2; i <= k; ++i) f += w[i] * distance(A(i, t[i]), A(i - 1, t[i - 1]));
    return f;
  }

  // Gradient over all k + 1 entries; optional tridiagonal Hessian (diag,
  // sub) over the same indexing.
  void derivatives(std::span<const double> t, std::vector<double>& g,
                   std::vector<double>* diag, std::vector<double>* off) const {
    g.assign(k + 1, 0.0);
    if (diag) diag->assign(k + 1, 0.0), off->assign(k, 0.0);
    for (int i = 2; i <= k; ++i) {
      const Point2 u = A(i, t[i]) - A(i - 1, t[i - 1]);
      const double d = norm(u);
      if (!(d > 0.0)) continue;
      const Point2 uh = (1.0 / d) * u;
      g[i] += w[i] * dot(uh, e[i]);
      g[i - 1] -= w[i] * dot(uh, e[i - 1]);
      if (diag) {
        const Point2 nh{-uh.y, uh.x};
        const double ca = dot(nh, e[i]);
        const double cb = -dot(nh, e[i - 1]);
        const double s = w[i] / d;
        (*diag)[i] += s * ca * ca;
        (*diag)[i - 1] += s * cb * cb;
        (*off)[i - 1] += s * ca * cb;
      }
    }
  }
};

double kkt_residual_of(const std::vector<double>& t, const std::vector<double>& g, int k) {
  double r = 0.0;
  for (int j = 0; j < k; ++j) r = std::max(r, std::abs(t[j] - std::max(0.0, t[j] - g[j])));
  return r;
}

}  // namespace

double nlp_objective(double theta, int k, std::span<const double> t, WeightDenominator den) {
  if (static_cast<int>(t.size()) != k + 1)
    throw Error(ErrorKind::InvalidArgument, "t must have k + 1 entries");
  return Chain(theta, k, den).objective(t);
}

std::vector<double> nlp_gradient(double theta, int k, std::span<const double> t,
                                 WeightDenominator den) {
  if (static_cast<int>(t.size()) != k + 1)
    throw Error(ErrorKind::InvalidArgument, "t must have k + 1 entries");
  std::vector<double> g;
  Chain(theta, k, den).derivatives(t, g, nullptr, nullptr);
  return g;
}

double nlp_kkt_residual(double theta, int k, std::span<const double> t, WeightDenominator den) {
  const auto g = nlp_gradient(theta, k, t, den);
  return kkt_residual_of(std::vector<double>(t.begin(), t.end()), g, k);
}

NlpSolution nlp_lower_bound(double theta, int k, const NlpOptions& opt) {
  if (!(theta >= 0.0 && theta < kPi / 2.0))
    throw Error(ErrorKind::InvalidArgument, "theta must lie in [0, pi/2)");
  if (k < 5) throw Error(ErrorKind::InvalidArgument, "k must be at least 5");

  const Chain ch(theta, k, opt.denominator);
  std::vector<double> t(k + 1, 1.0);
  t[k] = std::tan(theta);

  // Free variables are t_1 .. t_{k-1}; t_0 carries zero weight and t_k is fixed.
  const int n = k - 1;
  std::vector<double> g, diag, off, d(n), e(std::max(n - 1, 1)), rhs(n), trial(k + 1);
  std::vector<char> active(n);
  double f = ch.objective(t);
  double f_prev = std::numeric_limits<double>::infinity();
  double mu = 1e-12;
  double res = 0.0;
  int it = 0;
  constexpr double kSigma = 1e-4;
  const double eps = std::numeric_limits<double>::epsilon();

  for (; it < opt.max_iterations; ++it) {
    ch.derivatives(t, g, &diag, &off);
    res = kkt_residual_of(t, g, k);
    if (res <= opt.kkt_tol && std::abs(f_prev - f) <= opt.stationarity_tol) break;

    const double eps_active = std::min(1e-6, res);
    for (int j = 0; j < n; ++j) active[j] = t[j + 1] <= eps_active && g[j + 1] > 0.0;

    bool accepted = false;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      double dmax = 0.0;
      for (int j = 0; j < n; ++j) dmax = std::max(dmax, diag[j + 1]);
      for (int j = 0; j < n; ++j) {
        d[j] = (active[j] ? dmax : diag[j + 1] + mu * dmax) + 1e-300;
        rhs[j] = g[j + 1];
      }
      for (int j = 0; j + 1 < n; ++j)
        e[j] = (active[j] || active[j + 1]) ? 0.0 : off[j + 1];
      const lapack_int info =
          LAPACKE_dptsv(LAPACK_COL_MAJOR, n, 1, d.data(), e.data(), rhs.data(), n);
      if (info != 0) {
        mu = std::max(mu * 100.0, 1e-10);
        continue;
      }
      // Projected Armijo search along P(t - s p).
      double s = 1.0;
      for (int ls = 0; ls < 60; ++ls, s *= 0.5) {
        double pred = 0.0;
        trial = t;
        for (int j = 0; j < n; ++j) {
          const double v = std::max(0.0, t[j + 1] - s * rhs[j]);
          trial[j + 1] = v;
          pred += active[j] ? g[j + 1] * (t[j + 1] - v) : s * g[j + 1] * rhs[j];
        }
        const double fn = ch.objective(trial);
        const bool armijo = f - fn >= kSigma * pred;
        const bool at_roundoff = pred <= 16 * eps * std::abs(f) && fn <= f + 16 * eps * std::abs(f);
        if (armijo || at_roundoff) {
          f_prev = f;
          f = fn;
          t.swap(trial);
          accepted = true;
          break;
        }
      }
      if (accepted) mu = s == 1.0 ? std::max(mu * 0.1, 1e-14) : mu * 10.0;
      else mu = std::max(mu * 100.0, 1e-10);
    }
    if (!accepted) break;
  }

  ch.derivatives(t, g, nullptr, nullptr);
  res = kkt_residual_of(t, g, k);
  if (!(res <= opt.kkt_tol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "projected Newton stopped with kkt residual " << res << ", objective " << f
        << " after " << it << " iterations";
    throw Error(ErrorKind::MaxIterations, msg.str());
  }
  // t_0 has zero weight: place it at the foot of the perpendicular from A_1.
  t[0] = std::max(0.0, dot(ch.A(1, t[1]) - ch.p[0], ch.e[0]));

  NlpSolution out;
  out.theta = theta;
  out.k = k;
  out.t = std::move(t);
  out.objective = ch.objective(out.t);
  out.kkt_residual = res;
  out.composed_bound = b_theta(theta, out.objective);
  out.iterations = it;
  return out;
}

std::vector<NlpSolution> nlp_sweep(double theta_lo, double theta_hi, int grid, int k,
                                   const NlpOptions& opt, Exec exec) {
  const auto thetas = linspace(theta_lo, theta_hi, grid);
  std::vector<NlpSolution> out(thetas.size());
  std::vector<std::string> errors(thetas.size());
  parallel_for(exec, thetas.size(), [&](std::size_t i) {
    try {
      out[i] = nlp_lower_bound(thetas[i], k, opt);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      throw Error(ErrorKind::MaxIterations, "theta sweep point failed: " + errors[i],
                  static_cast<long>(i));
  return out;
}

AngleWindow theta_window(int k, const NlpOptions& opt) {
  AngleWindow w;
  w.theta_lo = kThetaLo;
  w.theta_hi = kThetaHi;
  w.k = k;
  w.h_at_hi = h_lower(kThetaHi);
  w.nlp_bound_at_lo = nlp_lower_bound(kThetaLo, k, opt).composed_bound;
  w.margin_hi = w.h_at_hi - kPriorUpperBound;
  w.margin_lo = w.nlp_bound_at_lo - kPriorUpperBound;
  if (!(w.margin_hi > 0.0) || !(w.margin_lo > 0.0))
    throw Error(ErrorKind::WindowViolated, "a window endpoint bound does not exceed the prior upper bound");
  return w;
}

nlohmann::json to_json(const NlpSolution& s, bool with_t) {
  nlohmann::json j = {{"theta", s.theta},
                      {"k", s.k},
                      {"objective", s.objective},
                      {"composed_bound", s.composed_bound},
                      {"kkt_residual", s.kkt_residual},
                      {"iterations", s.iterations}};
  if (with_t) j["t"] = s.t;
  return j;
}

nlohmann::json to_json(const AngleWindow& w) {
  return {{"theta_lo", w.theta_lo},
          {"theta_hi", w.theta_hi},
          {"k", w.k},
          {"prior_upper_bound", kPriorUpperBound},
          {"h_at_theta_hi", w.h_at_hi},
          {"nlp_bound_at_theta_lo", w.nlp_bound_at_lo},
          {"margins", {{"theta_hi", w.margin_hi}, {"theta_lo", w.margin_lo}}}};
}

void write_csv(std::ostream& os, const std::vector<NlpSolution>& sols) {
  const auto old_prec = os.precision(std::numeric_limits<double>::max_digits10);
  os << "theta,k,objective,composed_bound,kkt_residual\n";
  for (const auto& s : sols)
    os << s.theta << ',' << s.k << ',' << s.objective << ',' << s.composed_bound << ','
       << s.kkt_residual << '\n';
  os.precision(old_prec);
}

void write_svg(std::ostream& os, const std::vector<NlpSolution>& sols) {
  plot::Series b{"composed bound", {}, {}};
  for (const auto& s : sols) b.x.push_back(s.theta), b.y.push_back(s.composed_bound);
  plot::write_svg(os, {{"NLP lower bound composed with B_theta", "theta", "bound", {b},
                        {{3.551, "y = 3.551"}}}});
}

}  // namespace adi
