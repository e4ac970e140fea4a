#pragma once

// Orthonormal Laguerre functions phi_n^alpha on (0, inf) and Hermite
// functions h_n on R, the first-order operators D_alpha, D_alpha^*,
// (d/dx + x), the second-order operators L_alpha and H, and expansion /
// synthesis between point values and coefficients.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "rieszlag/jet.hpp"
#include "rieszlag/quadrature.hpp"
#include "rieszlag/specfun.hpp"

namespace rieszlag {

enum class BasisKind { hermite, laguerre_phi };

struct BasisTag {
  BasisKind kind = BasisKind::hermite;
  std::optional<AlphaParam> alpha;  // present iff laguerre_phi

  static BasisTag hermite() { return {BasisKind::hermite, std::nullopt}; }
  static BasisTag laguerre(double a) { return {BasisKind::laguerre_phi, AlphaParam(a)}; }

  bool is_laguerre() const { return kind == BasisKind::laguerre_phi; }
  double alpha_value() const {
    if (!alpha) throw std::logic_error("hermite basis has no alpha");
    return alpha->value();
  }

  /// Eigenvalue of the n-th basis function: 2n + alpha + 1 or n + 1/2.
  double eigenvalue(int n) const { return is_laguerre() ? 2.0 * n + alpha_value() + 1.0 : n + 0.5; }
};

struct SpectralCoeffs {
  BasisTag basis;
  std::vector<double> coeffs;

  int truncation() const { return static_cast<int>(coeffs.size()) - 1; }

  /// |c_N| + |c_{N-1}|.
  double tail_bound() const {
    const int n = truncation();
    if (n < 0) return 0.0;
    return std::abs(coeffs[n]) + (n >= 1 ? std::abs(coeffs[n - 1]) : 0.0);
  }

  double l2_norm() const {
    double acc = 0.0;
    for (double c : coeffs) acc += c * c;
    return std::sqrt(acc);
  }

  void write_csv(std::ostream& os) const {
    os << "n,c_n\n";
    char buf[64];
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, coeffs[i]);
      os << buf;
    }
  }
};

/// Writes (x, f(x)) rows with a header.
inline void write_sampled_csv(std::ostream& os, const std::vector<double>& xs, const std::vector<double>& fs) {
  os << "x,f(x)\n";
  char buf[64];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", xs[i], fs[i]);
    os << buf;
  }
}

namespace detail {

inline double as_double(double v) { return v; }
inline double as_double(const Jet& v) { return v.value(); }

}  // namespace detail

/// phi_0^alpha, ..., phi_N^alpha at x > 0 by the normalized three-term
/// recurrence. T is double or Jet (Taylor expansion in x).
template <class T>
std::vector<T> phi_all(int N, double alpha, const T& x) {
  (void)AlphaParam(alpha);
  if (N < 0) throw std::invalid_argument("phi_all: N must be >= 0");
  if (!(detail::as_double(x) > 0.0)) throw std::domain_error("Laguerre functions need x > 0");
  using std::exp;
  using std::log;
  const T x2 = x * x;
  const double c0 = 0.5 * std::numbers::ln2 - 0.5 * log_gamma(alpha + 1.0);
  std::vector<T> out;
  out.reserve(N + 1);
  out.push_back(exp(x2 * -0.5 + log(x) * (alpha + 0.5) + c0));
  if (N == 0) return out;
  out.push_back(out[0] * ((alpha + 1.0) - x2) * (1.0 / std::sqrt(alpha + 1.0)));
  for (int n = 1; n < N; ++n) {
    const double a = 1.0 / std::sqrt((n + 1.0) * (n + alpha + 1.0));
    const double b = std::sqrt(n * (n + alpha)) * a;
    out.push_back(out[n] * ((2.0 * n + alpha + 1.0) - x2) * a - out[n - 1] * b);
  }
  return out;
}

/// h_0, ..., h_N at x.
template <class T>
std::vector<T> hermite_all(int N, const T& x) {
  if (N < 0) throw std::invalid_argument("hermite_all: N must be >= 0");
  using std::exp;
  std::vector<T> out;
  out.reserve(N + 1);
  out.push_back(exp(x * x * -0.5 + (-0.25 * std::log(std::numbers::pi))));
  if (N == 0) return out;
  out.push_back(x * out[0] * std::numbers::sqrt2);
  for (int n = 1; n < N; ++n)
    out.push_back(x * out[n] * std::sqrt(2.0 / (n + 1.0)) - out[n - 1] * std::sqrt(n / (n + 1.0)));
  return out;
}

inline double phi_fn(int n, double alpha, double x) {
  if (n < 0) throw std::invalid_argument("phi_fn: n must be >= 0");
  return phi_all(n, alpha, x)[n];
}

inline double hermite_fn(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_fn: n must be >= 0");
  return hermite_all(n, x)[n];
}

inline double phi_fn_deriv(int n, double alpha, double x) {
  if (n < 0) throw std::invalid_argument("phi_fn_deriv: n must be >= 0");
  return phi_all(n, alpha, Jet::variable(1, x))[n][1];
}

inline double hermite_fn_deriv(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_fn_deriv: n must be >= 0");
  return hermite_all(n, Jet::variable(1, x))[n][1];
}

/// Taylor jet of the n-th basis function at x, to the given order.
inline Jet basis_jet(const BasisTag& b, int n, double x, int order) {
  const Jet v = Jet::variable(order, x);
  return b.is_laguerre() ? phi_all(n, b.alpha_value(), v)[n] : hermite_all(n, v)[n];
}

// Operators acting on a function through its Taylor jet at x. Each
// first-order operator lowers the jet order by one.

/// D_alpha f = -(alpha + 1/2) f / x + x f + f'.
inline Jet D_alpha_jet(const Jet& f, double alpha, double x) {
  const Jet df = f.differentiate();
  Jet g(df.order(), 0.0);
  for (int i = 0; i <= g.order(); ++i) g[i] = f[i];
  const Jet xv = Jet::variable(g.order(), x);
  return (xv - (alpha + 0.5) * reciprocal(xv)) * g + df;
}

/// D_alpha^* f = -(alpha + 1/2) f / x + x f - f'.
inline Jet D_alpha_adjoint_jet(const Jet& f, double alpha, double x) {
  const Jet df = f.differentiate();
  Jet g(df.order(), 0.0);
  for (int i = 0; i <= g.order(); ++i) g[i] = f[i];
  const Jet xv = Jet::variable(g.order(), x);
  return (xv - (alpha + 0.5) * reciprocal(xv)) * g - df;
}

/// (d/dx + x) f.
inline Jet d_plus_x_jet(const Jet& f, double x) {
  const Jet df = f.differentiate();
  Jet g(df.order(), 0.0);
  for (int i = 0; i <= g.order(); ++i) g[i] = f[i];
  return Jet::variable(g.order(), x) * g + df;
}

/// -(alpha + 1/2) f(x) / x + x f(x) + f'(x) from a value and derivative.
inline double apply_D_alpha(double alpha, double x, double f, double df) {
  return -(alpha + 0.5) * f / x + x * f + df;
}

/// D_alpha applied to a function given as a callable on jets.
template <class F>
double apply_D_alpha(F&& f, double alpha, double x) {
  return D_alpha_jet(f(Jet::variable(1, x)), alpha, x).value();
}

template <class F>
double apply_D_alpha_adjoint(F&& f, double alpha, double x) {
  return D_alpha_adjoint_jet(f(Jet::variable(1, x)), alpha, x).value();
}

/// L_alpha f = (-f'' + x^2 f + (alpha^2 - 1/4) f / x^2) / 2.
template <class F>
double apply_L_alpha(F&& f, double alpha, double x) {
  const Jet j = f(Jet::variable(2, x));
  return 0.5 * (-j.derivative(2) + x * x * j[0] + (alpha * alpha - 0.25) * j[0] / (x * x));
}

/// H f = (-f'' + x^2 f) / 2.
template <class F>
double apply_H(F&& f, double x) {
  const Jet j = f(Jet::variable(2, x));
  return 0.5 * (-j.derivative(2) + x * x * j[0]);
}

/// Default quadrature for projections onto the basis: a power-weighted rule
/// at 0 for Laguerre (integrand ~ x^exponent) or a symmetric real-line rule.
inline QuadratureRule projection_rule(const BasisTag& b, int N, double exponent) {
  if (b.is_laguerre()) {
    const double xmax = std::sqrt(4.0 * N + 2.0 * b.alpha_value() + 2.0) + 8.0;
    return half_line_rule(exponent, xmax, 4, 20);
  }
  const double xmax = std::sqrt(2.0 * N + 1.0) + 8.0;
  return real_line_rule(xmax, 4, 20);
}

/// Composite rule on a compact support [lo, hi].
inline QuadratureRule support_rule(Interval support, int panels = 64, int points = 20) {
  return make_rule(support, RuleKind::composite_gauss_legendre, {.panels = panels, .points = points});
}

/// All basis values b_0..b_N at x.
inline std::vector<double> basis_values(const BasisTag& b, int N, double x) {
  return b.is_laguerre() ? phi_all(N, b.alpha_value(), x) : hermite_all(N, x);
}

/// c_n = integral of b_n f over the given rule.
template <class F>
SpectralCoeffs analyze(F&& f, const BasisTag& b, int N, const QuadratureRule& rule) {
  if (N < 0) throw std::invalid_argument("analyze: N must be >= 0");
  SpectralCoeffs c{b, std::vector<double>(N + 1, 0.0)};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    const double fx = f(x);
    if (fx == 0.0) continue;
    const auto v = basis_values(b, N, x);
    const double wf = rule.weights[i] * fx;
    for (int n = 0; n <= N; ++n) c.coeffs[n] += wf * v[n];
  }
  return c;
}

/// analyze with the default rule, or a composite rule on `support` when f
/// vanishes outside it.
template <class F>
SpectralCoeffs analyze(F&& f, const BasisTag& b, int N, std::optional<Interval> support = std::nullopt) {
  if (N < 0) throw std::invalid_argument("analyze: N must be >= 0");
  const QuadratureRule rule =
      support ? support_rule(*support) : projection_rule(b, N, b.is_laguerre() ? b.alpha_value() + 0.5 : 0.0);
  return analyze(f, b, N, rule);
}

/// sum_n c_n b_n(x).
inline double synthesize(const SpectralCoeffs& c, double x) {
  const int N = c.truncation();
  if (N < 0) return 0.0;
  const auto v = basis_values(c.basis, N, x);
  double acc = 0.0;
  for (int n = 0; n <= N; ++n) acc += c.coeffs[n] * v[n];
  return acc;
}

/// Taylor jet of the synthesized function at x.
inline Jet synthesize_jet(const SpectralCoeffs& c, double x, int order) {
  const int N = c.truncation();
  Jet acc(order, 0.0);
  if (N < 0) return acc;
  const Jet v = Jet::variable(order, x);
  const auto vals = c.basis.is_laguerre() ? phi_all(N, c.basis.alpha_value(), v) : hermite_all(N, v);
  for (int n = 0; n <= N; ++n) acc += c.coeffs[n] * vals[n];
  return acc;
}

}  // namespace rieszlag
