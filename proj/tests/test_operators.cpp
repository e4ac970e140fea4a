#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rieszlag/operators.hpp"

using namespace rieszlag;

namespace {

SpectralCoeffs unit(const BasisTag& b, int N, int m) {
  SpectralCoeffs c{b, std::vector<double>(N + 1, 0.0)};
  c.coeffs[m] = 1.0;
  return c;
}

SpectralCoeffs fine_analysis(const Bump& f, const BasisTag& b) {
  return analyze(f, b, 3200, support_rule(f.support(), 256, 20));
}

}  // namespace

TEST(BumpTest, ShapeAndSupport) {
  const Bump b{1.5, 0.5};
  EXPECT_DOUBLE_EQ(b(1.5), 1.0);
  EXPECT_EQ(b(1.0), 0.0);
  EXPECT_EQ(b(2.2), 0.0);
  EXPECT_GT(b(1.9), 0.0);
  EXPECT_DOUBLE_EQ(b.support().lo, 1.0);
  EXPECT_DOUBLE_EQ(b.support().hi, 2.0);
}

TEST(HeatApplyTest, Eigenvalues) {
  const auto c = heat_apply(1.0, unit(BasisTag::laguerre(0.0), 5, 2));
  EXPECT_NEAR(c.coeffs[2], std::exp(-5.0), 1e-16);
  const auto h = heat_apply(0.3, unit(BasisTag::hermite(), 5, 3));
  EXPECT_NEAR(h.coeffs[3], std::exp(-0.3 * 3.5), 1e-16);
  EXPECT_THROW(heat_apply(0.0, h), std::invalid_argument);
}

TEST(HeatApplyTest, SmallTimeContinuity) {
  SpectralCoeffs c{BasisTag::laguerre(0.5), std::vector<double>(41)};
  for (int n = 0; n <= 40; ++n) c.coeffs[n] = 1.0 / (1.0 + n);
  const auto d = heat_apply(1e-8, c);
  double worst = 0.0;
  for (int n = 0; n <= 40; ++n) worst = std::max(worst, std::abs(d.coeffs[n] - c.coeffs[n]));
  EXPECT_LT(worst, 1e-7);
}

TEST(HeatApplyTest, SemigroupAndCommutation) {
  SpectralCoeffs c{BasisTag::hermite(), std::vector<double>(21)};
  for (int n = 0; n <= 20; ++n) c.coeffs[n] = std::cos(n);
  const auto a = heat_apply(0.4, heat_apply(0.7, c)), b = heat_apply(1.1, c);
  const auto p = negative_power(0.8, heat_apply(0.5, c)), q = heat_apply(0.5, negative_power(0.8, c));
  for (int n = 0; n <= 20; ++n) {
    EXPECT_NEAR(a.coeffs[n], b.coeffs[n], 1e-15);
    EXPECT_NEAR(p.coeffs[n], q.coeffs[n], 1e-15);
  }
}

TEST(HeatApplyTest, MatchesIntegralRepresentation) {
  const double a = 0.5, t = 0.6;
  const Bump f{1.5, 1.0};
  const auto c = analyze(f, BasisTag::laguerre(a), 200, f.support());
  const auto h = heat_apply(t, c);
  const auto r = support_rule(f.support(), 64, 20);
  for (double x : {0.4, 1.2, 2.6}) {
    const double direct = r.integrate([&](double y) { return heat_kernel_laguerre(t, x, y, a) * f(y); });
    EXPECT_NEAR(synthesize(h, x), direct, 1e-8);
  }
}

TEST(NegativePowerTest, Examples) {
  const auto h = negative_power(0.5, unit(BasisTag::hermite(), 4, 0));
  EXPECT_NEAR(h.coeffs[0], std::sqrt(2.0), 1e-15);
  const auto l = negative_power(1.0, unit(BasisTag::laguerre(0.0), 4, 1));
  EXPECT_NEAR(l.coeffs[1], 1.0 / 3.0, 1e-15);
  SpectralCoeffs u = unit(BasisTag::hermite(), 4, 1);
  u.coeffs[3] = 2.0;
  const auto v = negative_power(0.7, u);
  EXPECT_EQ(v.coeffs[1], std::pow(1.5, -0.7));
  EXPECT_EQ(v.coeffs[3], 2.0 * std::pow(3.5, -0.7));
  EXPECT_THROW(negative_power(0.0, u), std::invalid_argument);
}

TEST(NegativePowerTest, MatchesGammaWeightedHeatIntegral) {
  // (1/Gamma(b)) integral t^{b-1} e^{-t lambda} dt = lambda^{-b}, on the coefficients
  const double beta = 0.75;
  SpectralCoeffs c{BasisTag::laguerre(0.3), std::vector<double>(8)};
  for (int n = 0; n < 8; ++n) c.coeffs[n] = 1.0 + n;
  const auto direct = negative_power(beta, c);
  const auto r = half_line_rule(beta - 1.0, 40.0, 4, 20);
  for (int n = 0; n < 8; ++n) {
    const double lam = c.basis.eigenvalue(n);
    const double v = r.integrate([&](double t) { return std::pow(t, beta - 1.0) * std::exp(-t * lam); }) / std::tgamma(beta);
    EXPECT_LT(std::abs(v * c.coeffs[n] - direct.coeffs[n]), 1e-7 * direct.coeffs[n]);
  }
}

TEST(RieszSpectralHermiteTest, Examples) {
  EXPECT_NEAR(riesz_spectral_hermite(1, unit(BasisTag::hermite(), 3, 1)).coeffs[0], std::sqrt(4.0 / 3.0), 1e-15);
  const auto z = riesz_spectral_hermite(1, unit(BasisTag::hermite(), 3, 0));
  for (double v : z.coeffs) EXPECT_EQ(v, 0.0);
  EXPECT_NEAR(riesz_spectral_hermite(2, unit(BasisTag::hermite(), 3, 2)).coeffs[0], 4.0 * std::sqrt(2.0) / 5.0, 1e-15);
  EXPECT_THROW(riesz_spectral_hermite(3, unit(BasisTag::hermite(), 2, 0)), std::invalid_argument);
  EXPECT_THROW(riesz_spectral_hermite(1, unit(BasisTag::laguerre(0.0), 3, 0)), std::invalid_argument);
}

TEST(RieszSpectralHermiteTest, AgreesWithDifferentialDefinition) {
  // (d/dx + x)^k H^{-k/2} h_n via jets
  for (int k = 1; k <= 3; ++k)
    for (int n = 0; n <= 12; ++n) {
      const double x = 0.37;
      const auto out = riesz_spectral_hermite(k, unit(BasisTag::hermite(), 12, n));
      Jet j = basis_jet(BasisTag::hermite(), n, x, k) * std::pow(n + 0.5, -0.5 * k);
      for (int i = 0; i < k; ++i) j = d_plus_x_jet(j, x);
      EXPECT_NEAR(synthesize(out, x), j.value(), 1e-12) << k << " " << n;
    }
}

TEST(RieszLaguerreSpectralTest, GroundStateIsAnnihilated) {
  for (double a : {0.0, 1.5})
    for (double x : {0.3, 1.0, 2.2}) EXPECT_NEAR(riesz_apply_laguerre_spectral(1, unit(BasisTag::laguerre(a), 6, 0), x).value, 0.0, 1e-13);
}

TEST(RieszLaguerreSpectralTest, Linearity) {
  const auto b = BasisTag::laguerre(0.5);
  SpectralCoeffs f{b, {0.3, -1.0, 0.2, 0.0, 0.5}}, g{b, {1.0, 0.4, 0.0, -0.7, 0.1}}, h{b, std::vector<double>(5)};
  for (int n = 0; n < 5; ++n) h.coeffs[n] = 2.0 * f.coeffs[n] - 3.0 * g.coeffs[n];
  for (int k = 1; k <= 2; ++k)
    for (double x : {0.5, 1.4}) {
      const double lhs = riesz_apply_laguerre_spectral(k, h, x).value;
      const double rhs = 2.0 * riesz_apply_laguerre_spectral(k, f, x).value - 3.0 * riesz_apply_laguerre_spectral(k, g, x).value;
      EXPECT_NEAR(lhs, rhs, 1e-13);
    }
}

TEST(RieszLaguerreSpectralTest, TailFlag) {
  const Bump f{1.25, 0.75};
  const auto c = analyze(f, BasisTag::laguerre(0.0), 30, f.support());
  EXPECT_TRUE(riesz_apply_laguerre_spectral(1, c, 1.0).tail_flag);
  EXPECT_FALSE(riesz_apply_laguerre_spectral(1, unit(BasisTag::laguerre(0.0), 6, 2), 1.0).tail_flag);
}

TEST(RichardsonTest, RemovesLinearAndLogTerms) {
  std::vector<double> v;
  for (int i = 0; i < 8; ++i) {
    const double e = 0.1 * std::pow(0.5, i);
    v.push_back(3.0 + 2.0 * e - 0.7 * e * std::log(e) + 0.3 * e * e);
  }
  const auto r = richardson(v, 0.5);
  EXPECT_NEAR(r.value, 3.0, 1e-6);
  EXPECT_LT(r.err_estimate, 1e-5);
}

TEST(WkTest, Values) {
  EXPECT_EQ(riesz_wk(1), 0.0);
  EXPECT_EQ(riesz_wk(3), 0.0);
  EXPECT_EQ(riesz_wk(2), -2.0);
  EXPECT_EQ(riesz_wk(4), 4.0);
}

TEST(PvApplyTest, HermiteMatchesSpectral) {
  const Bump f{0.0, 1.0};
  const auto c = fine_analysis(f, BasisTag::hermite());
  for (int k = 1; k <= 3; ++k) {
    KernelSpec s;
    s.family = KernelFamily::hermite_riesz;
    s.k = k;
    s.l = k;
    for (double x : {-0.5, 0.1, 0.6}) {
      const auto pv = pv_apply(s, f, f.support(), x);
      const double spec = riesz_apply_hermite_spectral(k, c, x).value;
      EXPECT_LT(std::abs(pv.total() - spec), 1e-3 * (1.0 + std::abs(spec))) << k << " " << x;
      EXPECT_FALSE(pv.flagged);
      EXPECT_DOUBLE_EQ(pv.wk_correction, riesz_wk(k) * f(x));
    }
  }
}

TEST(PvApplyTest, EvenOrderCorrectionTerm) {
  const Bump f{0.0, 1.0};
  KernelSpec s;
  s.family = KernelFamily::hermite_riesz;
  s.k = 2;
  s.l = 2;
  const auto pv = pv_apply(s, f, f.support(), 0.3);
  EXPECT_DOUBLE_EQ(pv.wk_correction, -2.0 * f(0.3));
  EXPECT_EQ(pv.epsilons.size(), 8u);
  EXPECT_EQ(pv.values.size(), 8u);
  for (std::size_t i = 1; i < pv.epsilons.size(); ++i) EXPECT_LT(pv.epsilons[i], pv.epsilons[i - 1]);
}

TEST(PvApplyTest, FourthOrderCorrectionSign) {
  const Bump f{0.0, 1.0};
  const auto c = fine_analysis(f, BasisTag::hermite());
  KernelSpec s;
  s.family = KernelFamily::hermite_riesz;
  s.k = 4;
  s.l = 4;
  const auto pv = pv_apply(s, f, f.support(), -0.2);
  const double spec = riesz_apply_hermite_spectral(4, c, -0.2).value;
  EXPECT_NEAR((spec - pv.extrapolated) / f(-0.2), 4.0, 1e-3);
}

TEST(PvApplyTest, LaguerreMatchesSpectral) {
  const Bump f{1.25, 0.75};
  for (double a : {0.0, 2.0}) {
    const auto c = fine_analysis(f, BasisTag::laguerre(a));
    for (int k = 1; k <= 2; ++k) {
      KernelSpec s;
      s.family = KernelFamily::laguerre_riesz;
      s.k = k;
      s.alpha = AlphaParam(a);
      const double x = 1.1;
      const auto pv = pv_apply(s, f, f.support(), x);
      const double spec = riesz_apply_laguerre_spectral(k, c, x).value;
      EXPECT_LT(std::abs(pv.total() - spec), 1e-3 * (1.0 + std::abs(spec))) << a << " " << k;
    }
  }
}

TEST(PvApplyTest, AwayFromSupportIsPlainIntegral) {
  const Bump f{1.0, 0.5};
  KernelSpec s;
  s.family = KernelFamily::laguerre_riesz;
  s.k = 2;
  s.alpha = AlphaParam(0.5);
  const auto pv = pv_apply(s, f, f.support(), 3.0);
  EXPECT_EQ(pv.wk_correction, 0.0);
  const auto r = support_rule(f.support(), 64, 20);
  const double plain = r.integrate([&](double y) { return riesz_kernel_laguerre(2, 0.5, 3.0, y).value * f(y); });
  EXPECT_NEAR(pv.total(), plain, 1e-9 * (1.0 + std::abs(plain)));
}

TEST(PvApplyTest, Errors) {
  const Bump f{0.0, 1.0};
  KernelSpec s;
  s.family = KernelFamily::hermite_heat;
  EXPECT_THROW(pv_apply(s, f, f.support(), 0.0), std::invalid_argument);
  s.family = KernelFamily::hermite_riesz;
  s.k = 2;
  s.l = 1;
  EXPECT_THROW(pv_apply(s, f, f.support(), 0.0), std::invalid_argument);
  s.l = 2;
  EXPECT_THROW(pv_apply(s, f, f.support(), 0.0, {.start = 0.1, .ratio = 1.5}), std::invalid_argument);
}

TEST(PhiTest, LimitForSecondOrder) {
  const auto r = phi_limit_table(2);
  EXPECT_NEAR(r.extrapolated, -1.0, 1e-4);
  for (std::size_t i = 1; i < r.values.size(); ++i)
    EXPECT_LT(std::abs(r.values[i] + 1.0), std::abs(r.values[i - 1] + 1.0));
}

TEST(PhiTest, LimitForFourthOrder) {
  // evaluates to +2: the alternating sign (-1)^{k/2} 2^{k/2-1}
  EXPECT_NEAR(phi_limit(4), 2.0, 1e-4);
  EXPECT_NEAR(phi_limit(6), -4.0, 1e-4);
}

TEST(PhiTest, Parity) {
  for (int k : {2, 4})
    for (double e : {0.05, 0.01}) EXPECT_NEAR(phi_function(k, e) - phi_function(k, -e), 2.0 * phi_function(k, e), 1e-14);
  for (int k : {1, 3})
    for (double e : {0.05, 0.3}) EXPECT_EQ(phi_function(k, e) - phi_function(k, -e), 0.0);
  EXPECT_THROW(phi_limit(3), std::invalid_argument);
  EXPECT_THROW(phi_function(2, 0.0), std::invalid_argument);
}

TEST(HardyTest, IndicatorExamples) {
  auto ind = [](double y) { return y < 1.0 ? 1.0 : 0.0; };
  const std::vector<double> grid{0.01, 0.1, 0.5, 0.9, 1.0};
  const auto h0 = hardy0(0.0, ind, grid, {0.0, 1.0});
  const auto hi = hardy_inf(0.0, ind, grid, {0.0, 1.0});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(h0[i], 1.0, 1e-12);
    EXPECT_NEAR(hi[i], std::log(1.0 / grid[i]), 1e-12);
  }
}

TEST(HardyTest, PowerLawClosedForms) {
  const std::vector<double> grid{0.05, 0.3, 1.0, 2.5, 7.0};
  for (double eta : {-0.5, 0.0, 1.5})
    for (double a : {0.1, 0.3}) {
      auto f = [&](double y) { return std::pow(y, a); };
      const auto h0 = hardy0(eta, f, grid);
      for (std::size_t i = 0; i < grid.size(); ++i)
        EXPECT_NEAR(h0[i], std::pow(grid[i], a) / (eta + a + 1.0), 1e-9 * std::pow(grid[i], a)) << eta << " " << a;
    }
  // H_inf^eta x^{-b} = x^{-b} / (eta + b) for eta + b > 0
  for (double eta : {0.0, 1.5})
    for (double b : {0.5, 2.0}) {
      auto f = [&](double y) { return std::pow(y, -b); };
      const auto hi = hardy_inf(eta, f, grid);
      for (std::size_t i = 0; i < grid.size(); ++i)
        EXPECT_NEAR(hi[i], std::pow(grid[i], -b) / (eta + b), 1e-9 * std::pow(grid[i], -b)) << eta << " " << b;
    }
}

TEST(HardyTest, PositivityAndErrors) {
  const Bump f{1.0, 0.5};
  std::vector<double> grid;
  for (double x = 0.05; x < 5.0; x *= 1.3) grid.push_back(x);
  for (double v : hardy0(0.5, f, grid, f.support())) EXPECT_GE(v, 0.0);
  for (double v : hardy_inf(0.5, f, grid, f.support())) EXPECT_GE(v, 0.0);
  EXPECT_THROW(hardy0(-1.0, f, grid), std::invalid_argument);
  EXPECT_THROW(hardy0(0.0, f, {1.0, 0.5}), std::invalid_argument);
}

TEST(WeightedNormTest, Examples) {
  const Bump f{2.0, 0.5};
  const auto r = norm_rule();
  const double mass = support_rule(f.support()).integrate(f);
  EXPECT_NEAR(weighted_norm(f, 1.0, 0.0, r).value, mass, 1e-9);
  const auto base = weighted_norm(f, 2.0, 0.0, r);
  auto g = [&](double x) { return -3.0 * f(x); };
  EXPECT_NEAR(weighted_norm(g, 2.0, 0.0, r).value, 3.0 * base.value, 1e-14 * base.value);
  const Bump u{2.0, 0.5};
  for (double d : {-1.0, 0.5}) {
    const double v = weighted_norm(u, 2.0, d, r).value;
    const double lo = std::pow(std::min(std::pow(1.5, d), std::pow(2.5, d)), 0.5) * base.value;
    const double hi = std::pow(std::max(std::pow(1.5, d), std::pow(2.5, d)), 0.5) * base.value;
    EXPECT_GE(v, lo);
    EXPECT_LE(v, hi);
  }
  EXPECT_THROW(weighted_norm(f, 0.5, 0.0, r), std::invalid_argument);
  EXPECT_TRUE(base.finite);
}
