#include <gtest/gtest.h>

#include <cmath>

#include "rieszlag/verify.hpp"

using namespace rieszlag;

TEST(BoundStatementTest, NamesRoundTrip) {
  for (auto s : {BoundStatement::prop33_i, BoundStatement::prop33_ii_even, BoundStatement::prop33_ii_odd,
                 BoundStatement::prop33_iii, BoundStatement::prop31_l_table}) {
    auto back = parse_bound_statement(to_string(s));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, s);
  }
  EXPECT_FALSE(parse_bound_statement("prop33-iv").has_value());
}

TEST(CheckProp33Test, FarFieldBelowDiagonalStable) {
  const auto r = check_prop33(BoundStatement::prop33_i, 1, 0.5);
  EXPECT_TRUE(std::isfinite(r.sup_ratio));
  EXPECT_GT(r.sup_ratio, 0.0);
  EXPECT_TRUE(r.stable);
  EXPECT_TRUE(r.empirical_only);
  ASSERT_EQ(r.refinement_history.size(), 2u);
  EXPECT_LT(r.argmax.y, 0.5 * r.argmax.x * (1.0 + 1e-12));
}

TEST(CheckProp33Test, OddFarFieldAboveDiagonal) {
  const auto odd = check_prop33(BoundStatement::prop33_ii_odd, 1, 0.0);
  EXPECT_TRUE(std::isfinite(odd.sup_ratio));
  EXPECT_TRUE(odd.stable);
  const auto even = check_prop33(BoundStatement::prop33_ii_even, 1, 0.0);
  EXPECT_TRUE(std::isfinite(even.sup_ratio));
  EXPECT_LE(even.sup_ratio, odd.sup_ratio);
}

TEST(CheckProp33Test, NearDiagonalAndTable) {
  for (int k : {1, 2}) {
    const auto r = check_prop33(BoundStatement::prop33_iii, k, 2.0);
    EXPECT_TRUE(std::isfinite(r.sup_ratio)) << k;
    EXPECT_TRUE(r.stable) << k;
    const auto t = check_prop33(BoundStatement::prop31_l_table, k, 0.0);
    EXPECT_TRUE(t.stable) << k;
    EXPECT_GE(t.argmax_l, 0);
    EXPECT_LE(t.argmax_l, k);
  }
}

TEST(CheckProp33Test, DegenerateRegionRejected) {
  SampleSpec s = default_sample(BoundStatement::prop33_i);
  s.rho_lo = s.rho_hi = 0.5;
  EXPECT_THROW(check_prop33(BoundStatement::prop33_i, 1, 0.0, s), std::invalid_argument);
  s = default_sample(BoundStatement::prop33_i);
  s.rho_hi = 2.0;
  EXPECT_THROW(check_prop33(BoundStatement::prop33_i, 1, 0.0, s), std::invalid_argument);
  s = default_sample(BoundStatement::prop33_ii_odd);
  s.rho_lo = 1.0;
  EXPECT_THROW(check_prop33(BoundStatement::prop33_ii_odd, 1, 0.0, s), std::invalid_argument);
  s = default_sample(BoundStatement::prop33_iii);
  s.rho_lo = 0.3;
  EXPECT_THROW(check_prop33(BoundStatement::prop33_iii, 1, 0.0, s), std::invalid_argument);
  EXPECT_THROW(check_prop33(BoundStatement::prop33_i, 0, 0.0), std::invalid_argument);
  EXPECT_THROW(check_prop33(BoundStatement::prop33_i, 1, -1.0), std::invalid_argument);
}

TEST(CheckProp33Test, ThreadCountDoesNotChangeResult) {
  SampleSpec s = default_sample(BoundStatement::prop33_ii_even);
  s.nx = 4;
  s.ny = 3;
  const auto a = check_prop33(BoundStatement::prop33_ii_even, 2, 0.0, s, 1);
  const auto b = check_prop33(BoundStatement::prop33_ii_even, 2, 0.0, s, 4);
  EXPECT_EQ(a.refinement_history, b.refinement_history);
  EXPECT_EQ(a.argmax.x, b.argmax.x);
  EXPECT_EQ(a.argmax.y, b.argmax.y);
}

TEST(NOperatorTest, ConstantOnWindow) {
  // f = 1 on (x/2, 2x): integral of (1 + sqrt(x/|x-y|))/y
  const double x = 2.0;
  auto one = [](double) { return 1.0; };
  const double got = n_operator(one, {0.5, 5.0}, x);
  double ref = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double w = std::sqrt(0.5 * x) * (i + 0.5) / n;
    const double y = x - w * w;
    ref += (2.0 * w + 2.0 * std::sqrt(x)) / y * std::sqrt(0.5 * x) / n;
  }
  for (int i = 0; i < n; ++i) {
    const double w = std::sqrt(x) * (i + 0.5) / n;
    const double y = x + w * w;
    ref += (2.0 * w + 2.0 * std::sqrt(x)) / y * std::sqrt(x) / n;
  }
  EXPECT_NEAR(got, ref, 1e-8);
  EXPECT_THROW(n_operator(one, {0.5, 5.0}, 0.0), std::invalid_argument);
}

TEST(DominationTest, FarFieldTermsGovern) {
  const Bump f{1.5, 0.5};
  const auto far = check_maximal_domination(1, 0.5, f, {5.0});
  ASSERT_EQ(far.points.size(), 1u);
  EXPECT_EQ(far.points[0].dominant, "hardy0");
  EXPECT_EQ(far.points[0].local, 0.0);
  EXPECT_EQ(far.points[0].nf, 0.0);
  EXPECT_GT(far.points[0].lhs, 0.0);
  const auto near0 = check_maximal_domination(1, 0.5, f, {0.1});
  EXPECT_EQ(near0.points[0].dominant, "hardy_inf");
  EXPECT_EQ(near0.points[0].hardy0, 0.0);
  EXPECT_TRUE(near0.empirical_only);
}

TEST(DominationTest, ZeroFunction) {
  const Bump f{1.5, 0.5, 0.0};
  const auto r = check_maximal_domination(2, 0.0, f, {0.1, 1.5, 5.0});
  for (const auto& p : r.points) {
    EXPECT_EQ(p.lhs, 0.0);
    EXPECT_EQ(p.hardy0, 0.0);
    EXPECT_EQ(p.hardy_inf, 0.0);
    EXPECT_EQ(p.local, 0.0);
    EXPECT_EQ(p.nf, 0.0);
    EXPECT_EQ(p.dominant, "none");
  }
  EXPECT_EQ(r.fitted_c, 0.0);
  EXPECT_TRUE(r.stable);
}

TEST(DominationTest, FittedConstantStable) {
  const Bump f{1.5, 0.5};
  const auto r = check_maximal_domination(1, 0.5, f, {0.3, 1.2, 1.7, 4.0}, {}, 2);
  EXPECT_TRUE(std::isfinite(r.fitted_c));
  EXPECT_GT(r.fitted_c, 0.0);
  EXPECT_TRUE(r.stable);
  ASSERT_EQ(r.refinement_history.size(), 2u);
  EXPECT_GE(r.refinement_history[1], r.refinement_history[0]);
}

TEST(DominationTest, Errors) {
  EXPECT_THROW(check_maximal_domination(1, 0.0, Bump{0.5, 1.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(check_maximal_domination(1, 0.0, Bump{1.5, 0.5, -1.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(check_maximal_domination(7, 0.0, Bump{1.5, 0.5}, {1.0}), std::invalid_argument);
}

TEST(LpRangeTest, Examples) {
  EXPECT_TRUE(lp_in_range(1, 0.0, 2.0, 0.0));   // -4 < 0 < 2
  EXPECT_TRUE(lp_in_range(2, 0.0, 2.0, 0.0));   // -2 < 0 < 2
  EXPECT_FALSE(lp_in_range(2, 0.0, 2.0, -3.0));
  EXPECT_TRUE(lp_in_range(1, 0.0, 2.0, -3.0));
  EXPECT_FALSE(lp_in_range(1, 0.0, 2.0, 2.0));
  EXPECT_FALSE(lp_in_range(1, 0.0, 1.0, 0.0));
}

TEST(LpScanTest, FamilyIsSeededAndInsideWindow) {
  const auto a = lp_scan_family(40, 7);
  const auto b = lp_scan_family(20, 7);
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_EQ(a[i].center, b[i].center);
    EXPECT_EQ(a[i].radius, b[i].radius);
  }
  for (const auto& f : a) {
    EXPECT_GE(f.support().lo, 0.1);
    EXPECT_LE(f.support().hi, 10.0);
    EXPECT_GE(f.radius, 0.4);
    EXPECT_LE(f.radius, 1.2);
  }
  EXPECT_NE(lp_scan_family(10, 8)[0].center, a[0].center);
}

TEST(LpScanTest, InRangeRatiosFinite) {
  const auto r = lp_scan(1, 0.0, 2.0, 0.0, 10);
  EXPECT_TRUE(r.in_range);
  ASSERT_EQ(r.ratios.size(), 10u);
  for (double v : r.ratios) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(v, 0.0);
  }
  EXPECT_TRUE(std::isfinite(r.max_ratio));
  EXPECT_TRUE(r.empirical_only);
  EXPECT_LT(r.max_ratio, 2.0);
}

TEST(LpScanTest, ScalingInvariance) {
  LpScanOptions three;
  three.height = 3.0;
  const auto a = lp_scan(2, 0.0, 2.0, 0.0, 10);
  const auto b = lp_scan(2, 0.0, 2.0, 0.0, 10, 1, three);
  EXPECT_TRUE(a.in_range);
  for (std::size_t i = 0; i < a.ratios.size(); ++i) EXPECT_NEAR(b.ratios[i], a.ratios[i], 1e-12 * a.ratios[i]);
}

TEST(LpScanTest, OutOfRangeStillScanned) {
  const auto r = lp_scan(2, 0.0, 2.0, -3.0, 10);
  EXPECT_FALSE(r.in_range);
  EXPECT_EQ(r.ratios.size(), 10u);
  EXPECT_NE(r.note.find("no claim"), std::string::npos);
}

TEST(LpScanTest, Errors) {
  EXPECT_THROW(lp_scan(1, -0.5, 2.0, 0.0, 10), std::invalid_argument);
  EXPECT_THROW(lp_scan(1, 0.0, 2.0, 0.0, 9), std::invalid_argument);
  EXPECT_THROW(lp_scan(1, 0.0, 0.5, 0.0, 10), std::invalid_argument);
  EXPECT_THROW(lp_scan(4, 0.0, 2.0, 0.0, 10), std::invalid_argument);
}

TEST(LpScanTest, ThreadCountDoesNotChangeResult) {
  const auto a = lp_scan(1, 0.5, 2.0, 0.0, 10, 3, {}, 1);
  const auto b = lp_scan(1, 0.5, 2.0, 0.0, 10, 3, {}, 3);
  EXPECT_EQ(a.ratios, b.ratios);
}
