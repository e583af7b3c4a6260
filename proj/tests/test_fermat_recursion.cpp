#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "adi/error.hpp"
#include "adi/fermat_recursion.hpp"
#include "adi/numerics.hpp"
#include "adi/ode_system.hpp"
#include "adi/oracle.hpp"

using namespace adi;
using num::kPi;

namespace {

constexpr double kTau0 = 1.6469768608776936;

// Weighted length (1/(k+1)) sum i |A_i - A_{i-1}| from tangent parameters;
// A_k is pinned at (1, tan theta).
double weighted_length(double theta, int k, const std::vector<double>& t) {
  const double alpha = 2.0 * (kPi - theta) / k;
  std::vector<Point2> a(k + 1);
  for (int i = 0; i < k; ++i) a[i] = tangent_point(2.0 * kPi - i * alpha, t[i]);
  a[k] = {1.0, std::tan(theta)};
  double s = 0.0;
  for (int i = 1; i <= k; ++i) s += i * distance(a[i], a[i - 1]);
  return s / (k + 1);
}

}  // namespace

TEST(ForwardRecursion, FirstIncidenceAngle) {
  for (int n : {5, 17, 1000}) {
    const auto tr = forward_recursion(kTau0, n, 1);
    EXPECT_NEAR(tr.steps[0].x, kPi / 2 - 2 * kPi / n, 4e-16);
  }
}

TEST(ForwardRecursion, SnellAndSineLaw) {
  const auto tr = forward_recursion(kTau0, 1000, 800);
  const double a = tr.alpha, ta = std::tan(a / 2);
  double prev_t = tr.tau0, prev_y = kPi / 2;
  for (const auto& s : tr.steps) {
    EXPECT_LE(std::abs(snell_residual(s)), 1e-12) << s.i;
    EXPECT_DOUBLE_EQ(s.x, prev_y - a);
    const double rhs = (prev_t - ta) * std::sin(a);
    EXPECT_NEAR(s.d * std::sin(s.x), rhs, 1e-12 * (1.0 + std::abs(rhs)));
    if (s.i > 1) {
      EXPECT_GT(s.x, 0.0);
      EXPECT_LT(s.x, s.y);
      EXPECT_LT(s.y, kPi / 2);
    }
    prev_t = s.t;
    prev_y = s.y;
  }
  EXPECT_NEAR(tr.alpha * tr.n, 2 * kPi, 1e-14);
}

TEST(ForwardRecursion, PointsOnTangentLines) {
  const auto tr = forward_recursion(kTau0, 500, 300);
  for (int i = 0; i <= tr.m(); ++i)
    EXPECT_NEAR(dot(tr.points[i], perimeter_point(tr.tangency_angle(i))), 1.0, 1e-12);
}

TEST(ForwardRecursion, ContinuumAgreementAtMillion) {
  OdeOptions o;
  o.tau_start = TauStart::quadratic;
  const auto sol = integrate(kTau0, o);
  const int n = 1000000;
  const auto tr = forward_recursion(kTau0, n, 400000);
  const auto s = sol.at(0.4);
  EXPECT_NEAR(tr.steps.back().y, s.psi, 5e-5);
  EXPECT_NEAR(tr.steps.back().t, s.tau, 5e-5);
}

TEST(ForwardRecursion, DomainErrorsCarryIndex) {
  try {
    forward_recursion(0.05, 100, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TriangleDegenerate);
    EXPECT_GE(e.index(), 1);
  }
  try {
    forward_recursion_alpha(2.0, 2.0 * (kPi - 0.6) / 6, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AngleDomain);
    EXPECT_EQ(e.index(), 4);
  }
}

TEST(ShootTheta, LandsOnTarget) {
  for (auto [theta, k] : {std::pair{0.6, 200}, {0.52, 1000}, {1.1, 300}, {0.0, 1000}}) {
    const auto tr = shoot_theta(theta, k);
    EXPECT_LE(std::abs(tr.steps.back().t - std::tan(theta)), 1e-10) << theta << " " << k;
    EXPECT_EQ(tr.points.back().x, 1.0);
    EXPECT_EQ(tr.points.back().y, std::tan(theta));
  }
}

TEST(ShootTheta, ZeroAngleEndsAtZero) {
  const auto tr = shoot_theta(0.0, 1000);
  EXPECT_NEAR(tr.steps.back().t, 0.0, 1e-10);
}

TEST(ShootTheta, ConsistentWithContinuumOptimum) {
  const auto tr = shoot_theta(0.5909025598581181, 2000);
  EXPECT_NEAR(tr.tau0, 1.6469768, 1e-3);
}

TEST(ShootTheta, DiscretizationErrorIsFirstOrder) {
  const double theta = 0.5909025598581181;
  const double e1 = shoot_theta(theta, 1000).tau0 - 1.6469768608776936;
  const double e2 = shoot_theta(theta, 2000).tau0 - 1.6469768608776936;
  const double e4 = shoot_theta(theta, 4000).tau0 - 1.6469768608776936;
  EXPECT_NEAR(e1 / e2, 2.0, 0.05);
  EXPECT_NEAR(e2 / e4, 2.0, 0.05);
  EXPECT_NEAR(2 * e4 - e2, 0.0, 1e-5);
}

TEST(ShootTheta, EndpointMapIncreasingOnBracket) {
  const double theta = 0.6;
  const int k = 200;
  const double alpha = 2 * (kPi - theta) / k;
  const double lo = std::tan(alpha / 2) + 1e-6, hi = 10.0;
  double prev = -INFINITY;
  for (int j = 0; j < 50; ++j) {
    const double tau0 = lo + (hi - lo) * j / 49;
    double tk = -INFINITY;
    try {
      tk = forward_recursion_alpha(tau0, alpha, k).steps.back().t;
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::TriangleDegenerate);
    }
    if (std::isfinite(prev)) EXPECT_GT(tk, prev);
    prev = std::isfinite(tk) ? tk : prev;
  }
}

TEST(ShootTheta, NoBracketIsReported) {
  ShootOptions o;
  o.bracket_hi = 0.05;
  try {
    shoot_theta(0.6, 200, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoBracket);
  }
}

TEST(ShootTheta, LocallyOptimal) {
  const double theta = 0.6;
  const int k = 200;
  const auto tr = shoot_theta(theta, k);
  const auto t = tr.t_values();
  const double base = weighted_length(theta, k, t);
  EXPECT_NEAR(base, discrete_cost(tr, Weights::upper), 1e-9);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(1, k - 1);
  for (int r = 0; r < 20; ++r) {
    const int i = pick(rng);
    for (double h : {1e-4, -1e-4}) {
      auto p = t;
      p[i] += h;
      EXPECT_GT(weighted_length(theta, k, p), base) << "i=" << i << " h=" << h;
    }
  }
}

// At theta = 0.6 the angle chain exits its domain for k <= 12, whatever tau0.
TEST(ShootTheta, SixSegmentsLeaveAngleDomain) {
  try {
    shoot_theta(0.6, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AngleDomain);
  }
}

TEST(ShootTheta, SmallInstanceMatchesCoordinateDescent) {
  const double theta = 0.6;
  const int k = 13;
  const auto tr = shoot_theta(theta, k);
  const double alpha = 2 * (kPi - theta) / k;
  const double lb = std::tan(alpha / 2);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(lb, 20.0);
  double best = INFINITY;
  for (int start = 0; start < 5; ++start) {
    std::vector<double> t(k + 1);
    for (int i = 0; i < k; ++i) t[i] = u(rng);
    t[k] = std::tan(theta);
    double f = weighted_length(theta, k, t);
    for (int sweep = 0; sweep < 20000; ++sweep) {
      for (int i = 0; i < k; ++i) {
        auto g = [&](double v) {
          const double keep = t[i];
          t[i] = v;
          const double r = weighted_length(theta, k, t);
          t[i] = keep;
          return r;
        };
        const double w = std::max(1e-3, 4 * std::abs(t[i]) * 1e-2);
        t[i] = num::brent_minimize(g, std::max(lb, t[i] - w), t[i] + w, 1e-14).x;
      }
      const double fn = weighted_length(theta, k, t);
      if (f - fn < 1e-15) break;
      f = fn;
    }
    best = std::min(best, f);
  }
  EXPECT_NEAR(discrete_cost(tr, Weights::upper), best, 1e-7);
}

TEST(DiscreteCost, SingleSegment) {
  DiscreteTrajectory tr;
  tr.n = 5;
  tr.alpha = 2 * kPi / 5;
  tr.tau0 = 1.0;
  tr.steps.push_back({1, 0.5, 0.6, 0.1, 2.0});
  tr.points = {{1, 0}, {0, 1}};
  EXPECT_DOUBLE_EQ(discrete_cost(tr, Weights::upper), 1.0);
  EXPECT_DOUBLE_EQ(discrete_cost(tr, Weights::lower), 0.0);
}

TEST(DiscreteCost, UpperEqualsOracleAtTangencyAngles) {
  const auto tr = forward_recursion(kTau0, 200, 100);
  const auto phis = tangency_angles(tr);
  const auto r = average_cost_at_angles(to_polyline(tr), phis, Exec::serial);
  EXPECT_EQ(r.never_count, 0);
  EXPECT_NEAR(r.mean_cost, discrete_cost(tr, Weights::upper), 1e-9);
}

TEST(DiscreteCost, UpperDominatesLower) {
  const auto tr = shoot_theta(0.7, 300);
  EXPECT_GE(discrete_cost(tr, Weights::upper), discrete_cost(tr, Weights::lower));
}

TEST(Refraction, EqualSpeedsStraightLine) {
  const auto r = refraction_optimum({-0.3, 1.2}, {0.9, -0.7}, 2.0, 2.0);
  EXPECT_NEAR(r.alpha1, r.alpha2, 1e-9);
}

TEST(Refraction, SymmetricInstance) {
  for (double s2 : {0.3, 1.0, 4.0}) EXPECT_NEAR(refraction_optimum({0, 1}, {0, -1}, 1.0, s2).x_star, 0.0, 1e-10);
}

TEST(Refraction, SnellOnRandomInstances) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> c(-3.0, 3.0), h(0.05, 3.0), s(0.2, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const auto r = refraction_optimum({c(rng), h(rng)}, {c(rng), -h(rng)}, s(rng), s(rng));
    EXPECT_NEAR(std::sin(r.alpha1) / std::sin(r.alpha2) - r.s1 / r.s2, 0.0, 1e-8) << i;
  }
}

TEST(Export, JsonAndPolyline) {
  const auto tr = shoot_theta(0.6, 50);
  const auto j = to_json(tr);
  for (const char* key : {"n", "alpha", "tau0", "theta", "cost_upper", "cost_lower", "t"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["t"].size(), 51u);
  const auto p = to_polyline(tr);
  EXPECT_EQ(p.vertices().front().x, 1.0);
  EXPECT_EQ(p.vertices().back().x, tr.points.front().x);
}
