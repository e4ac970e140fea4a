#pragma once

// Heat kernels of the Hermite and Laguerre semigroups, their images under
// (d/dx + x)^l and D_alpha^k, and the t-integrals that give the fractional
// integral and Riesz kernels.
//
// Time is handled through s = tanh(t/2), i.e. t = log((1+s)/(1-s)). Then
// e^{-t} = (1-s)/(1+s), e^{-t}/(1-e^{-2t}) = (1-s^2)/(4s) and the common
// Gaussian exponent is -(x-y)^2/(4s) - s(x+y)^2/4.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszlag/combinat.hpp"
#include "rieszlag/quadrature.hpp"
#include "rieszlag/specfun.hpp"

namespace rieszlag {

class SubstitutedTime {
 public:
  static SubstitutedTime from_s(double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::domain_error("substituted time needs s in (0, 1)");
    SubstitutedTime r;
    r.s_ = s;
    r.oms_ = 1.0 - s;
    r.t_ = std::log1p(s) - std::log1p(-s);
    return r;
  }

  static SubstitutedTime from_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("time must be finite and > 0");
    SubstitutedTime r;
    const double q = std::exp(-t);
    r.t_ = t;
    r.s_ = std::tanh(0.5 * t);
    r.oms_ = 2.0 * q / (1.0 + q);
    return r;
  }

  double s() const { return s_; }
  double one_minus_s() const { return oms_; }
  double t() const { return t_; }
  /// e^{-t}
  double q() const { return oms_ / (1.0 + s_); }
  /// e^{-t} / (1 - e^{-2t})
  double qq() const { return oms_ * (1.0 + s_) / (4.0 * s_); }
  /// e^{-2t} / (1 - e^{-2t})
  double beta() const { return oms_ * oms_ / (4.0 * s_); }
  /// 2 / (1 - s^2) = dt/ds
  double dt_ds() const { return 2.0 / (oms_ * (1.0 + s_)); }

 private:
  SubstitutedTime() = default;
  double s_ = 0.5, oms_ = 0.5, t_ = 0.0;
};

/// -(x-y)^2/(4s) - s(x+y)^2/4, the heat-kernel exponent in s variables.
inline double heat_exponent(const SubstitutedTime& T, double x, double y) {
  const double d = x - y, p = x + y;
  return -d * d / (4.0 * T.s()) - 0.25 * T.s() * p * p;
}

/// -(x^2+y^2)/2 (1+e^{-2t})/(1-e^{-2t}) + 2xy e^{-t}/(1-e^{-2t}), written
/// directly in t.
inline double heat_exponent_direct(double t, double x, double y) {
  const double om = -std::expm1(-2.0 * t);
  const double e2 = std::exp(-2.0 * t);
  return -0.5 * (x * x + y * y) * (1.0 + e2) / om + 2.0 * x * y * std::exp(-t) / om;
}

/// -[(x - y e^{-t})^2 + (y - x e^{-t})^2] / (2 (1 - e^{-2t})).
inline double heat_exponent_regrouped(double t, double x, double y) {
  const double q = std::exp(-t), om = -std::expm1(-2.0 * t);
  const double a = x - y * q, b = y - x * q;
  return -(a * a + b * b) / (2.0 * om);
}

// ---------------------------------------------------------------- Hermite

inline double heat_kernel_hermite(const SubstitutedTime& T, double x, double y) {
  const double s = T.s();
  return std::sqrt(T.one_minus_s() * (1.0 + s) / (4.0 * std::numbers::pi * s)) * std::exp(heat_exponent(T, x, y));
}

/// W_t(x, y), the Mehler kernel of e^{-tH}.
inline double heat_kernel_hermite(double t, double x, double y) {
  if (!(t > 0.0)) throw std::domain_error("heat_kernel_hermite: t must be > 0");
  return heat_kernel_hermite(SubstitutedTime::from_t(t), x, y);
}

/// The same kernel from the t-form of the Mehler formula.
inline double heat_kernel_hermite_direct(double t, double x, double y) {
  if (!(t > 0.0)) throw std::domain_error("heat_kernel_hermite: t must be > 0");
  const double om = -std::expm1(-2.0 * t);
  return std::sqrt(std::exp(-t) / (om * std::numbers::pi)) * std::exp(heat_exponent_direct(t, x, y));
}

/// P_l with (d/dx + x)^l W_t(x, y) = W_t(x, y) P_l. e^{x^2/2} W_t is a
/// Gaussian in x with curvature -2a and slope w at x.
inline double hermite_heat_factor(int l, const SubstitutedTime& T, double x, double y) {
  if (l < 0) throw std::invalid_argument("l must be >= 0");
  const double s = T.s(), oms = T.one_minus_s();
  const double a = oms * oms / (4.0 * s);
  const double w = oms * ((y - x) + s * (x + y)) / (2.0 * s);
  // sum_m l!/(m!(l-2m)!) (-a)^m w^{l-2m}, via the Hermite-type recurrence
  // P_{n+1} = w P_n - 2 a n P_{n-1}.
  double prev = 1.0, cur = w;
  if (l == 0) return prev;
  for (int n = 1; n < l; ++n) {
    const double next = w * cur - 2.0 * a * n * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline double d_plus_x_pow_l_heat(int l, const SubstitutedTime& T, double x, double y) {
  return heat_kernel_hermite(T, x, y) * hermite_heat_factor(l, T, x, y);
}

/// (d/dx + x)^l W_t(x, y).
inline double d_plus_x_pow_l_heat(int l, double t, double x, double y) {
  if (!(t > 0.0)) throw std::domain_error("d_plus_x_pow_l_heat: t must be > 0");
  return d_plus_x_pow_l_heat(l, SubstitutedTime::from_t(t), x, y);
}

// --------------------------------------------------------------- Laguerre

namespace detail {

inline void check_positive_xy(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("Laguerre kernels need x, y > 0");
}

// E_{N,l} as doubles for N <= kMaxE, converted from the exact values.
inline constexpr int kMaxE = 12;
inline const std::array<std::array<double, kMaxE / 2 + 1>, kMaxE + 1>& e_table() {
  static const auto table = [] {
    std::array<std::array<double, kMaxE / 2 + 1>, kMaxE + 1> t{};
    for (int N = 0; N <= kMaxE; ++N)
      for (int l = 0; 2 * l <= N; ++l) t[N][l] = e_coeff_double(N, l);
    return t;
  }();
  return table;
}

inline double binom_double(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Shared quantities for the Laguerre formulas at one (t, x, y).
struct LaguerrePoint {
  double z;      // 2xy e^{-t}/(1-e^{-2t})
  double c;      // 2y e^{-t}/(1-e^{-2t})
  double beta;   // e^{-2t}/(1-e^{-2t})
  double log_pre;  // log of sqrt(2 qq) z^{alpha+1/2} e^{E}
  std::vector<double> rho;  // rho[i] = e^{-z} z^{-(alpha+i)} I_{alpha+i}(z)
};

inline LaguerrePoint laguerre_point(const SubstitutedTime& T, double x, double y, double alpha, int orders) {
  LaguerrePoint p;
  const double qq = T.qq();
  p.z = 2.0 * x * y * qq;
  p.c = 2.0 * y * qq;
  p.beta = T.beta();
  p.log_pre = 0.5 * std::log(2.0 * qq) + (alpha + 0.5) * std::log(p.z) + heat_exponent(T, x, y);
  p.rho.resize(orders + 1);
  for (int i = 0; i <= orders; ++i) p.rho[i] = bessel_i_reduced(alpha + i, p.z);
  return p;
}

struct SumParts {
  double sum = 0.0;
  double abs_sum = 0.0;
};

// Triple sum over (j, n, m) in units of the common prefactor.
inline SumParts dw1_sum(int k, const LaguerrePoint& p, double x) {
  const auto& E = e_table();
  SumParts r;
  for (int j = 0; j <= k; ++j) {
    const double ckj = binom_double(k, j);
    for (int n = 0; 2 * n <= j; ++n) {
      for (int m = 0; 2 * m <= k - j; ++m) {
        const double coef = ckj * E[j][n] * E[k - j][m] / std::ldexp(1.0, j - n);
        const double term = coef * std::pow(p.c, 2 * (j - n)) * std::pow(-p.beta, k - j - m) *
                            std::pow(x, k - 2 * m - 2 * n) * p.rho[j - n];
        r.sum += term;
        r.abs_sum += std::abs(term);
      }
    }
  }
  return r;
}

// Sum through the Hermite factors P_{k-j} and Bessel differences, in units
// of the common prefactor.
inline SumParts dw2_sum(int k, const LaguerrePoint& p, const SubstitutedTime& T, double x, double y) {
  const auto& E = e_table();
  SumParts r;
  for (int j = 0; j <= k; ++j) {
    const double outer = binom_double(k, j) * hermite_heat_factor(k - j, T, x, y) * std::pow(p.c, j);
    double inner = 0.0, inner_abs = 0.0;
    for (int n = 0; 2 * n <= j; ++n) {
      for (int l = 2 * n; l <= j; ++l) {
        const double sign = ((j - l) % 2) ? -1.0 : 1.0;
        const double term = sign * binom_double(j, l) * E[l][n] / std::ldexp(1.0, l - n) *
                            std::pow(p.z, l - 2 * n) * p.rho[l - n];
        inner += term;
        inner_abs += std::abs(term);
      }
    }
    r.sum += outer * inner;
    r.abs_sum += std::abs(outer) * inner_abs;
  }
  return r;
}

}  // namespace detail

inline double heat_kernel_laguerre(const SubstitutedTime& T, double x, double y, double alpha) {
  detail::check_positive_xy(x, y);
  const auto p = detail::laguerre_point(T, x, y, alpha, 0);
  return std::exp(p.log_pre) * p.rho[0];
}

/// W_t^alpha(x, y), the Mehler kernel of e^{-t L_alpha}.
inline double heat_kernel_laguerre(double t, double x, double y, double alpha) {
  (void)AlphaParam(alpha);
  if (!(t > 0.0)) throw std::domain_error("heat_kernel_laguerre: t must be > 0");
  return heat_kernel_laguerre(SubstitutedTime::from_t(t), x, y, alpha);
}

/// W_t^alpha from its t-form with an unscaled Bessel function; overflows for
/// large 2xy e^{-t}/(1-e^{-2t}).
inline double heat_kernel_laguerre_direct(double t, double x, double y, double alpha) {
  (void)AlphaParam(alpha);
  detail::check_positive_xy(x, y);
  if (!(t > 0.0)) throw std::domain_error("heat_kernel_laguerre: t must be > 0");
  const double om = -std::expm1(-2.0 * t);
  const double z = 2.0 * x * y * std::exp(-t) / om;
  return std::sqrt(2.0 * std::exp(-t) / om) * std::sqrt(z) * bessel_i(alpha, z) *
         std::exp(-0.5 * (x * x + y * y) * (1.0 + std::exp(-2.0 * t)) / om);
}

/// d^j/dx^j [z^{-alpha} I_alpha(z)] with z = 2xy e^{-t}/(1-e^{-2t}),
/// multiplied by e^{-z}.
inline double dj_bessel_scaled(int j, double t, double x, double y, double alpha) {
  (void)AlphaParam(alpha);
  detail::check_positive_xy(x, y);
  if (j < 0 || j > detail::kMaxE) throw std::out_of_range("dj_bessel: unsupported order");
  const auto T = SubstitutedTime::from_t(t);
  const double qq = T.qq();
  const double z = 2.0 * x * y * qq, c = 2.0 * y * qq;
  const auto& E = detail::e_table();
  double acc = 0.0;
  for (int n = 0; 2 * n <= j; ++n)
    acc += E[j][n] * std::pow(x, j - 2 * n) / std::ldexp(1.0, j - n) * std::pow(c, 2 * (j - n)) *
           bessel_i_reduced(alpha + j - n, z);
  return acc;
}

inline double dj_bessel(int j, double t, double x, double y, double alpha) {
  const double qq = SubstitutedTime::from_t(t).qq();
  const double v = dj_bessel_scaled(j, t, x, y, alpha) * std::exp(2.0 * x * y * qq);
  if (!std::isfinite(v)) throw std::overflow_error("dj_bessel overflows; use dj_bessel_scaled");
  return v;
}

struct CheckedValue {
  double value = 0.0;   // first formula
  double other = 0.0;   // second formula
  bool flagged = false;  // disagreement beyond tolerance
};

inline constexpr int kMaxDerivativeOrder = 6;

/// D_alpha^k W_t^alpha(x, y) by both expansions, with agreement monitoring:
/// the point is flagged when |a - b| > 1e-8 max(|a|, |b|) plus a roundoff
/// allowance proportional to the size of the summed terms.
inline CheckedValue d_alpha_pow_k_heat_checked(int k, const SubstitutedTime& T, double x, double y, double alpha) {
  if (k < 0 || k > kMaxDerivativeOrder) throw std::out_of_range("d_alpha_pow_k_heat: unsupported k");
  detail::check_positive_xy(x, y);
  const auto p = detail::laguerre_point(T, x, y, alpha, k);
  const auto a = detail::dw1_sum(k, p, x);
  const auto b = detail::dw2_sum(k, p, T, x, y);
  const double pre = std::exp(p.log_pre);
  CheckedValue r{pre * a.sum, pre * b.sum, false};
  const double eps = std::numeric_limits<double>::epsilon();
  const double tol = 1e-8 * std::max(std::abs(r.value), std::abs(r.other)) +
                     64.0 * eps * pre * std::max(a.abs_sum, b.abs_sum);
  r.flagged = !(std::abs(r.value - r.other) <= tol);
  return r;
}

inline CheckedValue d_alpha_pow_k_heat_checked(int k, double t, double x, double y, double alpha) {
  (void)AlphaParam(alpha);
  if (!(t > 0.0)) throw std::domain_error("d_alpha_pow_k_heat: t must be > 0");
  return d_alpha_pow_k_heat_checked(k, SubstitutedTime::from_t(t), x, y, alpha);
}

/// D_alpha^k W_t^alpha(x, y) by the triple (j, n, m) expansion.
inline double d_alpha_pow_k_heat(int k, double t, double x, double y, double alpha) {
  return d_alpha_pow_k_heat_checked(k, t, x, y, alpha).value;
}

/// D_alpha^k W_t^alpha(x, y) through the Hermite factors.
inline double d_alpha_pow_k_heat_dw2(int k, double t, double x, double y, double alpha) {
  return d_alpha_pow_k_heat_checked(k, t, x, y, alpha).other;
}

// ------------------------------------------------------------ t-integrals

struct KernelValue {
  double value = 0.0;
  double est_err = 0.0;
  bool converged = true;
  bool flagged = false;  // some integrand evaluation failed the dual check
};

struct TimeIntegralOptions {
  double power = 0.0;      // integrand t^power g(t)
  double decay = 0.5;      // g(t) ~ e^{-decay t} as t -> inf
  double distance = 0.0;   // |x - y|; sets where the s -> 0 end can stop
  double diag_exponent = 0.0;  // u-power near u = 0 when distance == 0 (s = u^2)
  int points = 20;
  bool estimate_error = false;
};

namespace detail {

struct PanelSums {
  double fine = 0.0, coarse = 0.0, abs_fine = 0.0;
};

template <class F>
void accumulate_panel(F&& f, double a, double b, int points, bool coarse, PanelSums& acc) {
  auto [x, w] = gauss_legendre(points);
  const double h = 0.5 * (b - a), m = 0.5 * (a + b);
  double s = 0.0, sa = 0.0;
  for (int i = 0; i < points; ++i) {
    const double v = w[i] * f(m + h * x[i]);
    s += v;
    sa += std::abs(v);
  }
  acc.fine += h * s;
  acc.abs_fine += h * sa;
  if (coarse) {
    auto [xc, wc] = gauss_legendre(12);
    double c = 0.0;
    for (int i = 0; i < 12; ++i) c += wc[i] * f(m + h * xc[i]);
    acc.coarse += h * c;
  }
}

}  // namespace detail

/// integral_0^inf t^power g(t) dt, g called with a SubstitutedTime.
/// s in (0, 1/2] is integrated in u = sqrt(s) on panels halving toward 0;
/// t in [log 3, inf) on panels of growing width up to log 3 + 40/decay.
template <class G>
KernelValue time_integral(G&& g, const TimeIntegralOptions& opt) {
  if (!(opt.decay > 0.0)) throw std::invalid_argument("time_integral: decay must be > 0");
  detail::PanelSums acc;

  auto in_u = [&](double u) {
    const double s = u * u;
    const auto T = SubstitutedTime::from_s(s);
    const double v = g(T);
    if (v == 0.0) return 0.0;
    return std::pow(T.t(), opt.power) * v * T.dt_ds() * 2.0 * u;
  };
  const double u0 = std::sqrt(0.5);
  double hi = u0;
  if (opt.distance > 0.0) {
    const double u_stop = opt.distance / std::sqrt(4.0 * 740.0);
    for (int p = 0; p < 400 && hi > u_stop; ++p) {
      detail::accumulate_panel(in_u, 0.5 * hi, hi, opt.points, opt.estimate_error, acc);
      hi *= 0.5;
    }
  } else {
    for (int p = 0; p < 8; ++p) {
      detail::accumulate_panel(in_u, 0.5 * hi, hi, opt.points, opt.estimate_error, acc);
      hi *= 0.5;
    }
    if (!(opt.diag_exponent > -1.0)) throw std::domain_error("time_integral: integrand not integrable at t = 0");
    const auto r = make_rule({0.0, hi}, RuleKind::endpoint_power_weighted,
                             {.panels = 12, .points = opt.points, .exponent = opt.diag_exponent});
    double s = 0.0, sa = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double v = r.weights[i] * in_u(r.nodes[i]);
      s += v;
      sa += std::abs(v);
    }
    acc.fine += s;
    acc.abs_fine += sa;
    if (opt.estimate_error) {
      const auto rc = make_rule({0.0, hi}, RuleKind::endpoint_power_weighted,
                                {.panels = 12, .points = 12, .exponent = opt.diag_exponent});
      acc.coarse += rc.integrate(in_u);
    }
  }

  auto in_t = [&](double t) {
    const auto T = SubstitutedTime::from_t(t);
    return std::pow(t, opt.power) * g(T);
  };
  const double t0 = std::log(3.0);
  const double t_end = t0 + 40.0 / opt.decay;
  const double cap = 8.0 / opt.decay;
  double a = t0, width = std::min(0.5, cap);
  while (a < t_end) {
    const double b = std::min(a + width, t_end);
    detail::accumulate_panel(in_t, a, b, opt.points, opt.estimate_error, acc);
    a = b;
    width = std::min(2.0 * width, cap);
  }

  KernelValue r;
  r.value = acc.fine;
  if (opt.estimate_error) {
    r.est_err = std::abs(acc.fine - acc.coarse);
    r.converged = std::isfinite(r.value) && r.est_err <= 1e-8 * acc.abs_fine + 1e-300;
  } else {
    r.converged = std::isfinite(r.value);
  }
  return r;
}

// ---------------------------------------------------- kernel descriptions

enum class KernelFamily { hermite_heat, laguerre_heat, hermite_frac, hermite_riesz, laguerre_riesz };

inline const char* to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::hermite_heat: return "hermite-heat";
    case KernelFamily::laguerre_heat: return "laguerre-heat";
    case KernelFamily::hermite_frac: return "hermite-frac";
    case KernelFamily::hermite_riesz: return "hermite-riesz";
    case KernelFamily::laguerre_riesz: return "laguerre-riesz";
  }
  return "?";
}

inline std::optional<KernelFamily> parse_kernel_family(const std::string& s) {
  for (auto f : {KernelFamily::hermite_heat, KernelFamily::laguerre_heat, KernelFamily::hermite_frac,
                 KernelFamily::hermite_riesz, KernelFamily::laguerre_riesz})
    if (s == to_string(f)) return f;
  return std::nullopt;
}

struct KernelSpec {
  KernelFamily family = KernelFamily::hermite_heat;
  int k = 1;
  int l = 0;              // hermite_riesz only, l <= k
  double gamma = 1.0;     // hermite_frac only
  double t = 1.0;         // heat families only
  std::optional<AlphaParam> alpha;  // laguerre families only
  bool estimate_error = false;

  /// Throws std::invalid_argument when the parameters the family reads are
  /// out of range.
  void validate() const {
    switch (family) {
      case KernelFamily::hermite_heat:
        if (!(t > 0.0)) throw std::invalid_argument("heat kernel needs t > 0");
        break;
      case KernelFamily::laguerre_heat:
        if (!(t > 0.0)) throw std::invalid_argument("heat kernel needs t > 0");
        if (!alpha) throw std::invalid_argument("Laguerre kernel needs alpha");
        break;
      case KernelFamily::hermite_frac:
        if (!(gamma > 0.0)) throw std::invalid_argument("fractional kernel needs gamma > 0");
        break;
      case KernelFamily::hermite_riesz:
        if (k < 1 || k > kMaxDerivativeOrder) throw std::invalid_argument("Riesz kernel needs 1 <= k <= 6");
        if (l < 0 || l > k) throw std::invalid_argument("Riesz kernel needs 0 <= l <= k");
        break;
      case KernelFamily::laguerre_riesz:
        if (k < 1 || k > kMaxDerivativeOrder) throw std::invalid_argument("Riesz kernel needs 1 <= k <= 6");
        if (!alpha) throw std::invalid_argument("Laguerre kernel needs alpha");
        break;
    }
  }

  /// Throws std::invalid_argument when (x, y) is outside the kernel's domain.
  void validate_point(double x, double y) const {
    if (!std::isfinite(x) || !std::isfinite(y)) throw std::invalid_argument("kernel point must be finite");
    const bool laguerre = family == KernelFamily::laguerre_heat || family == KernelFamily::laguerre_riesz;
    if (laguerre && !(x > 0.0 && y > 0.0)) throw std::invalid_argument("Laguerre kernels need x, y > 0");
    if (x == y) {
      if (family == KernelFamily::laguerre_riesz) throw std::invalid_argument("Laguerre Riesz kernel is singular at x = y");
      if (family == KernelFamily::hermite_riesz && l >= k - 1)
        throw std::invalid_argument("Riesz kernel with l >= k - 1 is singular at x = y");
      if (family == KernelFamily::hermite_frac && gamma <= 1.0)
        throw std::invalid_argument("fractional kernel with gamma <= 1 is singular at x = y");
    }
  }
};

/// K_gamma(x, y) = (1/Gamma(gamma/2)) integral t^{gamma/2-1} W_t(x, y) dt.
inline KernelValue frac_kernel(double gamma, double x, double y, bool estimate_error = false) {
  if (!(gamma > 0.0)) throw std::invalid_argument("frac_kernel: gamma must be > 0");
  if (x == y && gamma <= 1.0) throw std::invalid_argument("frac_kernel: singular at x = y for gamma <= 1");
  auto g = [&](const SubstitutedTime& T) { return heat_kernel_hermite(T, x, y); };
  auto r = time_integral(g, {.power = 0.5 * gamma - 1.0,
                             .decay = 0.5,
                             .distance = std::abs(x - y),
                             .diag_exponent = gamma - 2.0,
                             .estimate_error = estimate_error});
  const double norm = 1.0 / gamma_fn(0.5 * gamma);
  r.value *= norm;
  r.est_err *= norm;
  return r;
}

/// R^{(k,l)}(x, y) = (1/Gamma(k/2)) integral t^{k/2-1} (d/dx + x)^l W_t dt.
inline KernelValue riesz_kernel_hermite(int k, int l, double x, double y, bool estimate_error = false) {
  if (k < 1) throw std::invalid_argument("riesz_kernel_hermite: k must be >= 1");
  if (l < 0 || l > k) throw std::invalid_argument("riesz_kernel_hermite: need 0 <= l <= k");
  if (x == y && l >= k - 1) throw std::invalid_argument("riesz_kernel_hermite: singular at x = y for l >= k - 1");
  auto g = [&](const SubstitutedTime& T) { return d_plus_x_pow_l_heat(l, T, x, y); };
  auto r = time_integral(g, {.power = 0.5 * k - 1.0,
                             .decay = l + 0.5,
                             .distance = std::abs(x - y),
                             .diag_exponent = k - 2.0 - 2.0 * (l / 2),
                             .estimate_error = estimate_error});
  const double norm = 1.0 / gamma_fn(0.5 * k);
  r.value *= norm;
  r.est_err *= norm;
  return r;
}

/// R_alpha^{(k)}(x, y) = (1/Gamma(k/2)) integral t^{k/2-1} D_alpha^k W_t^alpha dt.
inline KernelValue riesz_kernel_laguerre(int k, double alpha, double x, double y, bool estimate_error = false) {
  (void)AlphaParam(alpha);
  if (k < 1 || k > kMaxDerivativeOrder) throw std::invalid_argument("riesz_kernel_laguerre: need 1 <= k <= 6");
  detail::check_positive_xy(x, y);
  if (x == y) throw std::invalid_argument("riesz_kernel_laguerre: singular at x = y");
  bool flagged = false;
  auto g = [&](const SubstitutedTime& T) {
    const auto c = d_alpha_pow_k_heat_checked(k, T, x, y, alpha);
    flagged = flagged || c.flagged;
    return c.value;
  };
  auto r = time_integral(g, {.power = 0.5 * k - 1.0,
                             .decay = alpha + 3.0,
                             .distance = std::abs(x - y),
                             .estimate_error = estimate_error});
  const double norm = 1.0 / gamma_fn(0.5 * k);
  r.value *= norm;
  r.est_err *= norm;
  r.flagged = flagged;
  return r;
}

/// Evaluates the kernel a spec describes at (x, y).
inline KernelValue evaluate_kernel(const KernelSpec& spec, double x, double y) {
  spec.validate();
  spec.validate_point(x, y);
  switch (spec.family) {
    case KernelFamily::hermite_heat: return {heat_kernel_hermite(spec.t, x, y), 0.0, true, false};
    case KernelFamily::laguerre_heat: return {heat_kernel_laguerre(spec.t, x, y, spec.alpha->value()), 0.0, true, false};
    case KernelFamily::hermite_frac: return frac_kernel(spec.gamma, x, y, spec.estimate_error);
    case KernelFamily::hermite_riesz: return riesz_kernel_hermite(spec.k, spec.l, x, y, spec.estimate_error);
    case KernelFamily::laguerre_riesz:
      return riesz_kernel_laguerre(spec.k, spec.alpha->value(), x, y, spec.estimate_error);
  }
  return {};
}

}  // namespace rieszlag
