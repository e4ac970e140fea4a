#pragma once

// Operators acting on functions: heat semigroups and negative powers on
// coefficients, spectral and principal-value Riesz transforms, the function
// Phi, Hardy operators and weighted norms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "combinat.hpp"
#include "kernels.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace rieszlag {

/// exp(1 - 1/(1 - u^2)) with u = (x - center)/radius, zero for |u| >= 1.
struct Bump {
  double center = 0.0;
  double radius = 1.0;
  double height = 1.0;

  Interval support() const { return {center - radius, center + radius}; }

  double operator()(double x) const {
    const double u = (x - center) / radius;
    if (!(std::abs(u) < 1.0)) return 0.0;
    return height * std::exp(1.0 - 1.0 / (1.0 - u * u));
  }
};

// ------------------------------------------------------ spectral operators

inline SpectralCoeffs heat_apply(double t, const SpectralCoeffs& f) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_apply: t must be > 0");
  SpectralCoeffs out = f;
  for (int n = 0; n <= f.truncation(); ++n) out.coeffs[n] *= std::exp(-t * f.basis.eigenvalue(n));
  return out;
}

/// c_n -> c_n / lambda_n^beta.
inline SpectralCoeffs negative_power(double beta, const SpectralCoeffs& f) {
  if (!(beta > 0.0)) throw std::invalid_argument("negative_power: beta must be > 0");
  SpectralCoeffs out = f;
  for (int n = 0; n <= f.truncation(); ++n) out.coeffs[n] *= std::pow(f.basis.eigenvalue(n), -beta);
  return out;
}

/// Hermite multiplier of R^{(k)} taking c_n h_n to a multiple of h_{n-k}.
inline double hermite_riesz_multiplier(int k, int n) {
  if (n < k) return 0.0;
  double ff = 1.0;
  for (int i = 0; i < k; ++i) ff *= n - i;
  return std::pow(2.0, 0.5 * k) * std::sqrt(ff) / std::pow(n + 0.5, 0.5 * k);
}

/// Coefficients of R^{(k)} f: entry m is the h_m coefficient.
inline SpectralCoeffs riesz_spectral_hermite(int k, const SpectralCoeffs& f) {
  if (f.basis.is_laguerre()) throw std::invalid_argument("riesz_spectral_hermite: needs Hermite coefficients");
  if (k < 1) throw std::invalid_argument("riesz_spectral_hermite: k must be >= 1");
  const int N = f.truncation();
  if (N < k) throw std::invalid_argument("riesz_spectral_hermite: truncation must be >= k");
  SpectralCoeffs out{f.basis, std::vector<double>(N - k + 1)};
  for (int n = k; n <= N; ++n) out.coeffs[n - k] = hermite_riesz_multiplier(k, n) * f.coeffs[n];
  return out;
}

struct SpectralValue {
  double value = 0.0;
  double tail = 0.0;
  bool tail_flag = false;
};

inline constexpr double kSpectralTailLimit = 1e-9;

/// D_alpha^k L_alpha^{-k/2} f at x: the synthesized expansion of
/// L^{-k/2} f is differentiated as a jet, then D_alpha is applied k times.
inline SpectralValue riesz_apply_laguerre_spectral(int k, const SpectralCoeffs& f, double x) {
  if (!f.basis.is_laguerre()) throw std::invalid_argument("riesz_apply_laguerre_spectral: needs Laguerre coefficients");
  if (k < 1 || k >= Jet::kMaxOrder) throw std::invalid_argument("riesz_apply_laguerre_spectral: need 1 <= k < 8");
  if (!(x > 0.0)) throw std::domain_error("riesz_apply_laguerre_spectral: x must be > 0");
  const double a = f.basis.alpha_value();
  const SpectralCoeffs g = negative_power(0.5 * k, f);
  Jet j = synthesize_jet(g, x, k);
  for (int i = 0; i < k; ++i) j = D_alpha_jet(j, a, x);
  const double tail = f.tail_bound();
  return {j.value(), tail, tail > kSpectralTailLimit};
}

/// R^{(k)} f at x from the Hermite multipliers.
inline SpectralValue riesz_apply_hermite_spectral(int k, const SpectralCoeffs& f, double x) {
  const double tail = f.tail_bound();
  return {synthesize(riesz_spectral_hermite(k, f), x), tail, tail > kSpectralTailLimit};
}

// ---------------------------------------------------------- extrapolation

struct EpsSchedule {
  double start = 0.1;
  double ratio = 0.5;
  int stages = 8;

  void validate() const {
    if (!(start > 0.0)) throw std::invalid_argument("eps schedule: start must be > 0");
    if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("eps schedule: ratio must be in (0, 1)");
    if (stages < 3) throw std::invalid_argument("eps schedule: at least 3 stages");
  }

  std::vector<double> epsilons() const {
    validate();
    std::vector<double> e(stages);
    for (int i = 0; i < stages; ++i) e[i] = start * std::pow(ratio, i);
    return e;
  }
};

struct Extrapolation {
  double value = 0.0;
  double err_estimate = 0.0;
};

/// Two successive first-order Richardson passes on a geometric schedule,
/// removing error terms c1 eps and c2 eps log eps.
inline Extrapolation richardson(const std::vector<double>& values, double ratio) {
  if (values.size() < 3) throw std::invalid_argument("richardson: need at least 3 values");
  auto pass = [&](const std::vector<double>& v) {
    std::vector<double> w(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) w[i] = (v[i + 1] - ratio * v[i]) / (1.0 - ratio);
    return w;
  };
  const auto w1 = pass(values);
  const auto w2 = pass(w1);
  const std::size_t n = w2.size();
  const double err = n >= 2 ? std::abs(w2[n - 1] - w2[n - 2]) : std::abs(w2[0] - w1.back());
  return {w2.back(), err};
}

// --------------------------------------------------------- principal value

struct PVResult {
  std::vector<double> epsilons;
  std::vector<double> values;
  double extrapolated = 0.0;
  double err_estimate = 0.0;
  double wk_correction = 0.0;
  bool flagged = false;

  double total() const { return wk_correction + extrapolated; }
  /// sup over the schedule of the truncated integrals (maximal-operator diagnostic).
  double max_truncated() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

/// w_k: 0 for odd k, (-2)^{k/2} for even k (so -2 at k = 2, +4 at k = 4).
inline double riesz_wk(int k) {
  if (k % 2) return 0.0;
  return ((k / 2) % 2 ? -1.0 : 1.0) * std::pow(2.0, 0.5 * k);
}

inline constexpr double kPvFlagTolerance = 1e-3;

namespace detail {

/// Panel breaks on [a, b] graded toward `toward_left ? a : b` with ratio 1/2,
/// then split so no panel is longer than max_width.
inline std::vector<double> pv_breaks(double a, double b, bool toward_left, double min_width, double max_width) {
  const auto g = graded_breaks(a, b, toward_left, 0.5, min_width);
  std::vector<double> out{g.front()};
  for (std::size_t i = 1; i < g.size(); ++i) {
    const int m = std::max(1, static_cast<int>(std::ceil((g[i] - g[i - 1]) / max_width)));
    for (int j = 1; j <= m; ++j) out.push_back(j == m ? g[i] : g[i - 1] + (g[i] - g[i - 1]) * j / m);
  }
  return out;
}

}  // namespace detail

/// w_k f(x) + lim_{eps -> 0} integral_{|x-y| > eps} R(x, y) f(y) dy for a
/// Riesz-family kernel and f vanishing outside `support`.
inline PVResult pv_apply(const KernelSpec& kernel, const std::function<double(double)>& f, Interval support, double x,
                         const EpsSchedule& schedule = {}) {
  kernel.validate();
  if (kernel.family != KernelFamily::hermite_riesz && kernel.family != KernelFamily::laguerre_riesz)
    throw std::invalid_argument("pv_apply: needs a Riesz kernel family");
  if (kernel.family == KernelFamily::hermite_riesz && kernel.l != kernel.k)
    throw std::invalid_argument("pv_apply: Hermite Riesz kernel must have l = k");
  if (!(support.hi > support.lo)) throw std::invalid_argument("pv_apply: empty support");
  const bool laguerre = kernel.family == KernelFamily::laguerre_riesz;
  if (laguerre && !(x > 0.0 && support.lo >= 0.0)) throw std::invalid_argument("pv_apply: Laguerre needs x > 0, support in (0, inf)");
  const auto eps = schedule.epsilons();
  const int S = static_cast<int>(eps.size());
  constexpr int kPoints = 20;
  const auto& rule = gauss_legendre(kPoints);

  auto K = [&](double y) { return evaluate_kernel(kernel, x, y).value; };
  auto panel = [&](double a, double b) {
    if (!(b > a)) return 0.0;
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    double acc = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      const double y = m + h * rule.first[i];
      const double fy = f(y);
      if (fy != 0.0) acc += rule.second[i] * K(y) * fy;
    }
    return h * acc;
  };
  auto clip = [&](double a, double b) { return std::pair{std::max(a, support.lo), std::min(b, support.hi)}; };
  const double max_width = (support.hi - support.lo) / 24.0;

  // |x - y| > eps_0
  double outer = 0.0;
  {
    auto [a, b] = clip(support.lo, x - eps[0]);
    if (b > a) {
      const auto br = detail::pv_breaks(a, b, false, 0.5 * eps[0], max_width);
      for (std::size_t i = 0; i + 1 < br.size(); ++i) outer += panel(br[i], br[i + 1]);
    }
    auto [c, d] = clip(x + eps[0], support.hi);
    if (d > c) {
      const auto br = detail::pv_breaks(c, d, true, 0.5 * eps[0], max_width);
      for (std::size_t i = 0; i + 1 < br.size(); ++i) outer += panel(br[i], br[i + 1]);
    }
  }
  PVResult res;
  res.epsilons = eps;
  res.values.resize(S);
  double acc = outer;
  res.values[0] = acc;
  for (int i = 1; i < S; ++i) {
    // eps_i < |x - y| < eps_{i-1}
    {
      auto [a, b] = clip(x - eps[i - 1], x - eps[i]);
      acc += panel(a, b);
    }
    {
      auto [a, b] = clip(x + eps[i], x + eps[i - 1]);
      acc += panel(a, b);
    }
    res.values[i] = acc;
  }
  const auto ex = richardson(res.values, schedule.ratio);
  res.extrapolated = ex.value;
  res.err_estimate = ex.err_estimate;
  res.wk_correction = riesz_wk(kernel.k) * f(x);
  res.flagged = res.err_estimate > kPvFlagTolerance * (1.0 + std::abs(res.total()));
  return res;
}

// ------------------------------------------------------------------- Phi

/// Phi(eps) = (1/Gamma(k/2)) integral_0^{1/2} (2s)^{k/2-1} (pi s)^{-1/2}
///            d^{k-1}/dx^{k-1} e^{-x^2/(4s)} |_{x = eps} ds.
inline double phi_function(int k, double eps) {
  if (k < 1) throw std::invalid_argument("phi_function: k must be >= 1");
  if (eps == 0.0) throw std::invalid_argument("phi_function: eps must be nonzero");
  if (k - 1 > detail::kMaxE) throw std::invalid_argument("phi_function: k too large");
  const int N = k - 1;
  const auto& E = detail::e_table();
  const double e2 = eps * eps;
  auto integrand = [&](double s) {
    const double a = 1.0 / (4.0 * s);
    double poly = 0.0;
    for (int l = 0; 2 * l <= N; ++l) {
      const double term = E[N][l] * std::pow(a, N - l) * std::pow(eps, N - 2 * l);
      poly += ((N - l) % 2 ? -term : term);
    }
    return std::pow(2.0 * s, 0.5 * k - 1.0) / std::sqrt(std::numbers::pi * s) * poly * std::exp(-e2 * a);
  };
  // v = log s; the integrand is negligible for s < eps^2 / 400
  const double vlo = std::log(e2 / 400.0), vhi = std::log(0.5);
  const int panels = std::max(8, static_cast<int>(std::ceil((vhi - vlo) / 0.5)));
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = vlo + (vhi - vlo) * p / panels, b = vlo + (vhi - vlo) * (p + 1) / panels;
    acc += gl_panel([&](double v) { const double s = std::exp(v); return integrand(s) * s; }, a, b, 20);
  }
  return acc / gamma_fn(0.5 * k);
}

struct PhiLimitResult {
  std::vector<double> epsilons;
  std::vector<double> values;
  double extrapolated = 0.0;
  double err_estimate = 0.0;
};

inline PhiLimitResult phi_limit_table(int k, const EpsSchedule& schedule = {}) {
  if (k < 2 || k % 2) throw std::invalid_argument("phi_limit: k must be even and >= 2");
  PhiLimitResult r;
  r.epsilons = schedule.epsilons();
  for (double e : r.epsilons) r.values.push_back(phi_function(k, e));
  const auto ex = richardson(r.values, schedule.ratio);
  r.extrapolated = ex.value;
  r.err_estimate = ex.err_estimate;
  return r;
}

/// Extrapolated Phi(0+) for even k; evaluates to (-1)^{k/2} 2^{k/2-1}.
inline double phi_limit(int k, const EpsSchedule& schedule = {}) { return phi_limit_table(k, schedule).extrapolated; }

// -------------------------------------------------------- Hardy operators

namespace detail {

/// integral_a^b g over panels no longer than `width` and with endpoint ratio
/// at most 2 when a > 0, clipped to `support`.
template <class G>
double segment_integral(G&& g, double a, double b, Interval support) {
  a = std::max(a, support.lo);
  b = std::min(b, support.hi);
  if (!(b > a)) return 0.0;
  std::vector<double> br{a};
  double cur = a;
  while (cur < b) {
    double next = cur + 0.25;
    if (cur > 0.0) next = std::min(next, 2.0 * cur);
    next = std::min(next, b);
    br.push_back(next);
    cur = next;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) acc += gl_panel(g, br[i], br[i + 1], 20);
  return acc;
}

inline void check_grid(const std::vector<double>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw std::invalid_argument("hardy: grid points must be > 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw std::invalid_argument("hardy: grid must increase");
  }
}

}  // namespace detail

inline Interval whole_half_line() { return {0.0, std::numeric_limits<double>::infinity()}; }

/// H_0^eta f(x) = x^{-eta-1} integral_0^x y^eta f(y) dy on an increasing grid.
inline std::vector<double> hardy0(double eta, const std::function<double(double)>& f, const std::vector<double>& grid,
                                  Interval support = whole_half_line()) {
  if (!(eta > -1.0)) throw std::invalid_argument("hardy0: eta must be > -1");
  detail::check_grid(grid);
  std::vector<double> out(grid.size());
  if (grid.empty()) return out;
  auto g = [&](double y) { return std::pow(y, eta) * f(y); };
  // first segment (0, x_0]: the y^eta factor is absorbed by the rule
  double acc = 0.0;
  const double a0 = std::max(0.0, support.lo), b0 = std::min(grid[0], support.hi);
  if (b0 > a0) {
    if (a0 == 0.0) {
      const auto r = make_rule({0.0, b0}, RuleKind::endpoint_power_weighted, {.panels = 40, .points = 20, .exponent = eta});
      for (std::size_t i = 0; i < r.size(); ++i) acc += r.weights[i] * g(r.nodes[i]);
    } else {
      acc = detail::segment_integral(g, a0, b0, support);
    }
  }
  out[0] = acc * std::pow(grid[0], -eta - 1.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    acc += detail::segment_integral(g, grid[i - 1], grid[i], support);
    out[i] = acc * std::pow(grid[i], -eta - 1.0);
  }
  return out;
}

/// H_inf^eta f(x) = x^eta integral_x^inf y^{-eta-1} f(y) dy on an increasing grid.
inline std::vector<double> hardy_inf(double eta, const std::function<double(double)>& f,
                                     const std::vector<double>& grid, Interval support = whole_half_line()) {
  if (!(eta > -1.0)) throw std::invalid_argument("hardy_inf: eta must be > -1");
  detail::check_grid(grid);
  std::vector<double> out(grid.size());
  if (grid.empty()) return out;
  auto g = [&](double y) { return std::pow(y, -eta - 1.0) * f(y); };
  // tail beyond the last grid point
  double acc = 0.0;
  const double X = std::max(grid.back(), support.lo);
  if (std::isfinite(support.hi)) {
    acc = detail::segment_integral(g, X, support.hi, support);
  } else {
    // y = X / u maps (0, 1] onto [X, inf)
    const auto br = graded_breaks(0.0, 1.0, true, 0.5, 1e-30);
    const auto r = composite_rule(br, 20);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double u = r.nodes[i];
      acc += r.weights[i] * g(X / u) * X / (u * u);
    }
  }
  out.back() = acc * std::pow(grid.back(), eta);
  for (std::size_t i = grid.size() - 1; i-- > 0;) {
    acc += detail::segment_integral(g, grid[i], grid[i + 1], support);
    out[i] = acc * std::pow(grid[i], eta);
  }
  return out;
}

// ---------------------------------------------------------- weighted norms

struct WeightedNorm {
  double p = 2.0;
  double delta = 0.0;
  double value = 0.0;
  bool finite = true;
};

/// The default working interval for weighted norms.
inline constexpr Interval kNormInterval{1e-3, 14.0};

/// Composite rule on [lo, hi] with lo > 0: geometric panels (ratio 2) up to 1,
/// uniform panels of width `width` beyond.
inline QuadratureRule norm_rule(Interval dom = kNormInterval, double width = 0.05, int points = 20) {
  if (!(dom.lo > 0.0) || !(dom.hi > dom.lo)) throw std::invalid_argument("norm_rule: need 0 < lo < hi");
  std::vector<double> br{dom.lo};
  double cur = dom.lo;
  while (cur < dom.hi) {
    double next = cur < 1.0 ? std::min(2.0 * cur, cur + width) : cur + width;
    if (next > dom.hi - 1e-12) next = dom.hi;
    br.push_back(next);
    cur = next;
  }
  return composite_rule(br, points);
}

/// (sum_i w_i |f_i|^p x_i^delta)^{1/p} for values sampled at the rule nodes.
inline WeightedNorm weighted_norm(const std::vector<double>& values, const QuadratureRule& rule, double p, double delta) {
  if (!(p >= 1.0)) throw std::invalid_argument("weighted_norm: p must be >= 1");
  if (values.size() != rule.size()) throw std::invalid_argument("weighted_norm: values do not match the rule");
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    acc += rule.weights[i] * std::pow(std::abs(values[i]), p) * std::pow(rule.nodes[i], delta);
  WeightedNorm w{p, delta, std::pow(acc, 1.0 / p), true};
  w.finite = std::isfinite(w.value);
  return w;
}

template <class F>
WeightedNorm weighted_norm(F&& f, double p, double delta, const QuadratureRule& rule = norm_rule()) {
  std::vector<double> v(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) v[i] = f(rule.nodes[i]);
  return weighted_norm(v, rule, p, delta);
}

}  // namespace rieszlag
