#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "adi/error.hpp"
#include "adi/feasibility.hpp"
#include "adi/numerics.hpp"
#include "adi/ode_system.hpp"

using namespace adi;
using num::kPi;

namespace {
constexpr double kTau0 = 1.6469768608776936;
}

TEST(SeriesInit, Formulas) {
  const double x0 = 1e-6;
  const auto lin = SeriesInit::make(kTau0, x0, TauStart::linear);
  EXPECT_DOUBLE_EQ(lin.psi0, kPi / 2 - kPi * x0 + kPi * kPi / 2 * x0 * x0);
  EXPECT_NEAR(lin.tau_start, kTau0 - 2 * kPi * x0, 1e-15);
  EXPECT_EQ(SeriesInit::make(kTau0, x0, TauStart::pinned).tau_start, kTau0);
  EXPECT_THROW(SeriesInit::make(kTau0, 2e-5, TauStart::linear), Error);
}

TEST(Integrate, LinearStartHonoursSeries) {
  OdeOptions o;
  o.tau_start = TauStart::linear;
  const auto sol = integrate(kTau0, o);
  EXPECT_NEAR(sol.at(sol.x_begin()).tau, kTau0 - 2 * kPi * o.x0, 1e-15);
}

TEST(Integrate, TauMinimumNearReported) {
  const auto sol = integrate(kTau0);
  const double xi = deployment_parameter(sol).xi;
  const auto c = clearance_certificate(sol, xi);
  EXPECT_NEAR(c.tau_min, 0.24774522, 1e-4);
}

TEST(Integrate, PsiSeriesNearOrigin) {
  const auto sol = integrate(kTau0);
  EXPECT_LE(std::abs(sol.at(1e-4).psi - (kPi / 2 - kPi * 1e-4)), 1e-6);
}

TEST(Integrate, ResidualAtRandomDensePoints) {
  const auto sol = integrate(kTau0);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(sol.x_begin(), sol.x_end());
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    const auto s = sol.at(x);
    const auto d = sol.derivative_at(x);
    ASSERT_GT(s.psi, 0.0);
    ASSERT_LT(s.psi, kPi);
    const double cot = std::cos(s.psi) / std::sin(s.psi);
    EXPECT_LE(std::abs(d.psi + 2 * kPi - cot / x), 1e-8 * (1 + std::abs(d.psi))) << x;
    EXPECT_LE(std::abs(d.tau / (2 * kPi) - s.tau * cot + 1), 1e-8 * (1 + std::abs(d.tau))) << x;
  }
}

TEST(Integrate, ToleranceRobustness) {
  OdeOptions loose;
  loose.rtol = 1e-10;
  const auto a = integrate(kTau0).at(0.8);
  const auto b = integrate(kTau0, loose).at(0.8);
  EXPECT_LE(std::abs(a.psi - b.psi), 1e-8);
  EXPECT_LE(std::abs(a.tau - b.tau), 1e-8);
}

TEST(Integrate, OutOfRange) {
  const auto sol = integrate(kTau0);
  EXPECT_THROW(sol.at(0.0), Error);
  EXPECT_THROW(sol.at(1.5), Error);
  EXPECT_THROW(curve_point(sol, -0.1), Error);
}

TEST(Integrate, GridStrictlyIncreasing) {
  const auto g = integrate(kTau0).grid();
  ASSERT_GE(g.size(), 2u);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  EXPECT_EQ(g.front(), 1e-6);
  EXPECT_EQ(g.back(), 1.0);
}

TEST(CurvePoint, StartOffsetIsFirstOrderInX0) {
  const auto sol = integrate(kTau0);
  const double x0 = sol.x_begin();
  const auto p = curve_point(sol, x0);
  EXPECT_NEAR(p.x, 1.0 - 2 * kPi * x0 * kTau0, 1e-9);
  EXPECT_NEAR(p.y, -kTau0 - 2 * kPi * x0, 1e-9);
}

TEST(CurvePoint, StartNearA0) {
  const auto sol = integrate(kTau0);
  const auto p = curve_point(sol, sol.x_begin());
  EXPECT_NEAR(p.x, 1.0, 1e-5);
  EXPECT_NEAR(p.y, -kTau0, 1e-5);
}

TEST(CurvePoint, NormIdentity) {
  const auto sol = integrate(kTau0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(sol.x_begin(), 1.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    const double tau = sol.at(x).tau;
    const auto p = curve_point(sol, x);
    EXPECT_NEAR(dot(p, p), 1 + tau * tau, 1e-10 * (1 + tau * tau));
  }
}

TEST(CurvePoint, DeploymentHitsLineXEqualsOne) {
  const auto sol = integrate(kTau0);
  const double xi = deployment_parameter(sol).xi;
  EXPECT_NEAR(curve_point(sol, xi).x, 1.0, 1e-7);
}

TEST(SelfCheckInit, WindowEndsAndIdentity) {
  EXPECT_LE(self_check_init(1.647), 1e-9);
  EXPECT_LE(self_check_init(1.6525), 1e-9);
  EXPECT_EQ(self_check_init(1.647, 1e-6, 1e-6), 0.0);
}

TEST(Integrate, PsiIndependentOfTau0) {
  const auto a = integrate(1.647).at(0.6);
  const auto b = integrate(1.652).at(0.6);
  EXPECT_NEAR(a.psi, b.psi, 1e-12);
  EXPECT_NE(a.tau, b.tau);
}

TEST(Export, CsvAndMetadata) {
  const auto sol = integrate(kTau0);
  std::stringstream ss;
  write_csv(ss, sol, 10);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "x,psi,tau");
  const auto j = metadata_json(sol);
  for (const char* key : {"tau0", "x0", "rtol", "atol", "n_steps"}) EXPECT_TRUE(j.contains(key));
  EXPECT_EQ(j["n_steps"].get<std::size_t>(), sol.n_steps());
}
