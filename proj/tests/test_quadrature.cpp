#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>

#include "rieszlag/quadrature.hpp"
#include "rieszlag/specfun.hpp"

using namespace rieszlag;

TEST(GaussLegendreTest, NodesAndWeights) {
  for (int n : {1, 2, 5, 16, 20, 64, 128}) {
    auto [x, w] = gauss_legendre(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += w[i];
      if (i > 0) {
        EXPECT_LT(x[i - 1], x[i]);
      }
      EXPECT_NEAR(x[i], -x[n - 1 - i], 1e-15);
    }
    EXPECT_NEAR(sum, 2.0, 1e-14);
  }
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
  EXPECT_THROW(gauss_legendre(129), std::invalid_argument);
}

TEST(GaussLegendreTest, ExactForDegreeTwoNMinusOne) {
  auto [x, w] = gauss_legendre(10);
  double acc = 0.0;
  for (int i = 0; i < 10; ++i) acc += w[i] * std::pow(x[i], 18);
  EXPECT_NEAR(acc, 2.0 / 19.0, 1e-15);
}

TEST(MakeRuleTest, CompositeIntegratesHighPower) {
  const auto r = make_rule({0.0, 1.0}, RuleKind::composite_gauss_legendre, {.panels = 10, .points = 16});
  EXPECT_TRUE(r.valid());
  EXPECT_EQ(r.size(), 160u);
  EXPECT_EQ(r.kind, RuleKind::composite_gauss_legendre);
  EXPECT_LT(std::abs(r.integrate([](double x) { return std::pow(x, 20); }) * 21.0 - 1.0), 1e-13);
}

TEST(MakeRuleTest, GaussianOnHalfLine) {
  QuadratureRule r = make_rule({0.0, 6.0}, RuleKind::composite_gauss_legendre, {.panels = 12, .points = 20});
  r.append(make_rule({6.0, std::numeric_limits<double>::infinity()}, RuleKind::exp_tail,
                     {.panels = 8, .points = 20, .scale = 1.0}));
  EXPECT_TRUE(r.valid());
  const double v = r.integrate([](double x) { return std::exp(-x * x); });
  EXPECT_LT(std::abs(v - 0.5 * gamma_fn(0.5)), 1e-12);
}

TEST(MakeRuleTest, ExpTailAlone) {
  const auto r = make_rule({0.0, std::numeric_limits<double>::infinity()}, RuleKind::exp_tail,
                           {.panels = 20, .points = 20, .scale = 1.0});
  EXPECT_TRUE(r.valid());
  EXPECT_NEAR(r.integrate([](double x) { return std::exp(-x); }), 1.0, 1e-12);
  EXPECT_NEAR(r.integrate([](double x) { return x * x * std::exp(-x); }), 2.0, 1e-10);
}

TEST(MakeRuleTest, EndpointPowerWeight) {
  const auto r = make_rule({0.0, 1.0}, RuleKind::endpoint_power_weighted, {.panels = 10, .points = 16, .exponent = -0.4});
  EXPECT_TRUE(r.valid());
  EXPECT_LT(std::abs(r.integrate([](double x) { return std::pow(x, -0.4); }) - 1.0 / 0.6), 1e-10);
  // the weight is absorbed even for exponents close to -1
  const auto r2 = make_rule({0.0, 1.0}, RuleKind::endpoint_power_weighted, {.panels = 30, .points = 20, .exponent = -0.95});
  EXPECT_LT(std::abs(r2.integrate([](double x) { return std::pow(x, -0.95) * (1.0 + x); }) - (20.0 + 1.0 / 1.05)),
            1e-10);
}

TEST(MakeRuleTest, Errors) {
  EXPECT_THROW(make_rule({1.0, 1.0}, RuleKind::composite_gauss_legendre), std::invalid_argument);
  EXPECT_THROW(make_rule({2.0, 1.0}, RuleKind::composite_gauss_legendre), std::invalid_argument);
  EXPECT_THROW(make_rule({0.0, 1.0}, RuleKind::endpoint_power_weighted, {.exponent = -1.0}), std::invalid_argument);
  EXPECT_THROW(make_rule({0.0, std::numeric_limits<double>::infinity()}, RuleKind::composite_gauss_legendre),
               std::invalid_argument);
}

TEST(HalfLineRuleTest, PowerTimesGaussian) {
  for (double a : {-0.8, -0.5, 0.0, 0.7, 3.0}) {
    const auto r = half_line_rule(a);
    EXPECT_TRUE(r.valid());
    // integral_0^inf x^a e^{-x^2} dx = Gamma((a+1)/2)/2
    const double v = r.integrate([&](double x) { return std::pow(x, a) * std::exp(-x * x); });
    EXPECT_LT(std::abs(v / (0.5 * std::tgamma(0.5 * (a + 1.0))) - 1.0), 1e-11) << a;
  }
}

TEST(RealLineRuleTest, Gaussian) {
  const auto r = real_line_rule();
  EXPECT_TRUE(r.valid());
  EXPECT_NEAR(r.integrate([](double x) { return std::exp(-x * x); }), std::sqrt(std::numbers::pi), 1e-13);
}

TEST(QuadratureRuleTest, CsvHasHeaderAndRows) {
  const auto r = make_rule({0.0, 1.0}, RuleKind::composite_gauss_legendre, {.panels = 1, .points = 3});
  std::ostringstream os;
  r.write_csv(os);
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("node,weight\n", 0), 0u);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4);
}

TEST(GradedBreaksTest, ShrinksTowardChosenEnd) {
  const auto b = graded_breaks(0.0, 1.0, true, 0.5, 1e-3);
  EXPECT_DOUBLE_EQ(b.front(), 0.0);
  EXPECT_DOUBLE_EQ(b.back(), 1.0);
  for (std::size_t i = 1; i < b.size(); ++i) EXPECT_LT(b[i - 1], b[i]);
  EXPECT_LT(b[1] - b[0], 2e-3);
  const auto c = graded_breaks(0.0, 1.0, false, 0.5, 1e-3);
  EXPECT_LT(c.back() - c[c.size() - 2], 2e-3);
}
