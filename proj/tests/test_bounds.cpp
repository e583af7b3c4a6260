#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "adi/bounds.hpp"
#include "adi/cost.hpp"
#include "adi/error.hpp"
#include "adi/geometry.hpp"
#include "adi/numerics.hpp"

using namespace adi;
using num::kPi;

namespace {

// Independent evaluation of sum_{i=2}^{k} w_i |A_i - A_{i-1}|.
double objective_ref(double theta, int k, const std::vector<double>& t, double denom) {
  const double alpha = 2 * (kPi - theta) / k;
  std::vector<Point2> a(k + 1);
  for (int i = 0; i <= k; ++i) a[i] = tangent_point(2 * kPi - i * alpha, t[i]);
  double s = 0.0;
  for (int i = 1; i <= k; ++i) s += (i - 1) / denom * distance(a[i], a[i - 1]);
  return s;
}

}  // namespace

TEST(HLower, ReportedValue) { EXPECT_NEAR(h_lower(1.148), 3.55348, 1e-4); }

TEST(HLower, IncreasingBeyondWindow) {
  for (int j = 0; j < 500; ++j) {
    const double th = 1.148 + (kPi / 2 - 1e-3 - 1.148) * j / 500.0;
    EXPECT_GT(h_prime(th), 0.0) << th;
  }
}

TEST(HLower, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 1.5);
  for (int i = 0; i < 20; ++i) {
    const double th = u(rng), h = 1e-6;
    const double fd = (h_lower(th + h) - h_lower(th - h)) / (2 * h);
    EXPECT_NEAR(fd / h_prime(th), 1.0, 1e-6) << th;
  }
}

TEST(Nlp, ReportedBoundAtWindowEdge) {
  const auto s = nlp_lower_bound(0.52, 1000);
  EXPECT_NEAR(s.composed_bound, 3.5512215, 1e-3);
  EXPECT_GE(s.composed_bound - kPriorUpperBound, 2e-4);
  EXPECT_LE(s.kkt_residual, 1e-8);
  EXPECT_EQ(s.composed_bound, b_theta(0.52, s.objective));
  ASSERT_EQ(s.t.size(), 1001u);
  for (double v : s.t) EXPECT_GE(v, 0.0);
  EXPECT_EQ(s.t.back(), std::tan(0.52));
}

TEST(Nlp, ObjectiveAndGradientMatchReference) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  const int k = 40;
  const double th = 0.7;
  std::vector<double> t(k + 1);
  for (auto& v : t) v = u(rng);
  EXPECT_NEAR(nlp_objective(th, k, t), objective_ref(th, k, t, k + 1.0), 1e-13);
  EXPECT_NEAR(nlp_objective(th, k, t, WeightDenominator::k), objective_ref(th, k, t, k), 1e-13);
  // The last line is tangent at 2 theta, which the reference reproduces up
  // to rounding of 2 pi - k alpha.
  const auto g = nlp_gradient(th, k, t);
  for (int i = 0; i < k; ++i) {
    auto p = t, m = t;
    p[i] += 1e-6;
    m[i] -= 1e-6;
    const double fd = (nlp_objective(th, k, p) - nlp_objective(th, k, m)) / 2e-6;
    EXPECT_NEAR(g[i], fd, 1e-7) << i;
  }
}

TEST(Nlp, SmallInstanceMatchesCoordinateDescent) {
  const double th = 0.6;
  const int k = 6;
  const auto s = nlp_lower_bound(th, k);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int start = 0; start < 50; ++start) {
    std::vector<double> t(k + 1);
    for (int i = 0; i < k; ++i) t[i] = u(rng);
    t[k] = std::tan(th);
    double f = objective_ref(th, k, t, k + 1.0);
    for (int sweep = 0; sweep < 5000; ++sweep) {
      for (int i = 0; i < k; ++i) {
        auto g = [&](double v) {
          const double keep = t[i];
          t[i] = v;
          const double r = objective_ref(th, k, t, k + 1.0);
          t[i] = keep;
          return r;
        };
        t[i] = num::brent_minimize(g, 0.0, 20.0, 1e-14).x;
        if (g(0.0) <= g(t[i])) t[i] = 0.0;
      }
      const double fn = objective_ref(th, k, t, k + 1.0);
      if (f - fn < 1e-16) break;
      f = fn;
    }
    EXPECT_NEAR(s.objective, f, 1e-7) << "start " << start;
  }
}

TEST(Nlp, SweepDecreasingAboveThreshold) {
  const auto sols = nlp_sweep(0.0, kThetaLo, 101, 1000);
  for (std::size_t i = 0; i < sols.size(); ++i) {
    EXPECT_GT(sols[i].composed_bound, 3.551) << sols[i].theta;
    if (i > 0) EXPECT_LT(sols[i].composed_bound, sols[i - 1].composed_bound) << sols[i].theta;
  }
}

TEST(Nlp, Convexity) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  const int k = 50;
  for (int r = 0; r < 100; ++r) {
    std::vector<double> a(k + 1), b(k + 1), m(k + 1);
    for (int i = 0; i < k; ++i) a[i] = u(rng), b[i] = u(rng), m[i] = 0.5 * (a[i] + b[i]);
    a[k] = b[k] = m[k] = std::tan(0.52);
    EXPECT_LE(nlp_objective(0.52, k, m),
              0.5 * (nlp_objective(0.52, k, a) + nlp_objective(0.52, k, b)) + 1e-12);
  }
}

TEST(Nlp, ScaleOut) {
  EXPECT_LE(std::abs(nlp_lower_bound(0.52, 1000).composed_bound -
                     nlp_lower_bound(0.52, 500).composed_bound),
            5e-3);
}

TEST(Nlp, WeightsKOverK) {
  // The (i-1)/k weighting gives a larger value at the window edge.
  NlpOptions o;
  o.denominator = WeightDenominator::k;
  EXPECT_GT(nlp_lower_bound(0.52, 1000, o).composed_bound,
            nlp_lower_bound(0.52, 1000).composed_bound);
}

TEST(Nlp, MaxIterationsIsReported) {
  NlpOptions o;
  o.max_iterations = 1;
  try {
    nlp_lower_bound(0.52, 1000, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MaxIterations);
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
  }
}

TEST(ThetaWindow, Margins) {
  const auto w = theta_window();
  EXPECT_EQ(w.theta_lo, 0.52);
  EXPECT_EQ(w.theta_hi, 1.148);
  EXPECT_NEAR(w.margin_hi, 0.00258, 1e-4);
  EXPECT_NEAR(w.margin_lo, 3.2e-4, 1e-5);
  const auto j = to_json(w);
  EXPECT_TRUE(j.contains("margins"));
}

TEST(Export, Csv) {
  std::stringstream ss;
  write_csv(ss, {nlp_lower_bound(0.3, 20)});
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "theta,k,objective,composed_bound,kkt_residual");
}
