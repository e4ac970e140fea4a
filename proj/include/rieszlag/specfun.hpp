#pragma once

// Special functions: Gamma via a Lanczos approximation, modified Bessel
// functions of the first kind (power series / large-argument expansion) and
// the Laguerre and Hermite polynomials.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rieszlag {

/// Laguerre type parameter, alpha > -1.
class AlphaParam {
 public:
  explicit AlphaParam(double value) : value_(value) {
    if (!(value > -1.0) || !std::isfinite(value))
      throw std::invalid_argument("alpha must be a finite number > -1, got " + std::to_string(value));
  }
  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_;
};

namespace detail {

// Lanczos coefficients for g = 7, n = 9.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(x) for x >= 0.5.
inline double lanczos_log_gamma(double x) {
  const double z = x - 1.0;
  double a = kLanczos[0];
  const double t = z + kLanczosG + 0.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace detail

/// log Gamma(x), x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma requires x > 0");
  if (x < 0.5) return detail::lanczos_log_gamma(x + 1.0) - std::log(x);
  return detail::lanczos_log_gamma(x);
}

/// Gamma(x), x > 0.
inline double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn requires x > 0");
  if (x < 0.5) return std::exp(detail::lanczos_log_gamma(x + 1.0)) / x;
  if (x > 171.6) return std::numeric_limits<double>::infinity();
  return std::exp(detail::lanczos_log_gamma(x));
}

namespace detail {

inline void check_bessel_args(double nu, double z) {
  if (!(nu > -1.0)) throw std::domain_error("Bessel order must be > -1");
  if (!(z >= 0.0) || !std::isfinite(z)) throw std::domain_error("Bessel argument must be finite and >= 0");
}

// Argument above which the large-z expansion is used. Below it the power
// series (all terms positive) is used.
inline double bessel_switch(double nu) { return std::max(25.0, nu * nu); }

// e^{-z} z^{-nu} I_nu(z) by the power series.
inline double bessel_reduced_series(double nu, double z) {
  const double q = 0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 10000; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum * std::exp(-z - nu * std::numbers::ln2 - log_gamma(nu + 1.0));
}

// sum_r (-1)^r [nu, r] (2z)^{-r}, truncated before the smallest term.
inline double bessel_asymptotic_sum(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double last = 1.0;
  for (int r = 1; r < 200; ++r) {
    const double odd = 2.0 * r - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * r * z);
    if (std::abs(next) >= last && r > 1) break;
    term = next;
    sum += term;
    last = std::abs(term);
    if (last < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace detail

/// e^{-z} z^{-nu} I_nu(z). Finite and well scaled for every z >= 0; equals
/// 1 / (2^nu Gamma(nu + 1)) at z = 0.
inline double bessel_i_reduced(double nu, double z) {
  detail::check_bessel_args(nu, z);
  if (z <= detail::bessel_switch(nu)) return detail::bessel_reduced_series(nu, z);
  return detail::bessel_asymptotic_sum(nu, z) * std::exp(-(nu + 0.5) * std::log(z)) /
         std::sqrt(2.0 * std::numbers::pi);
}

/// e^{-z} I_nu(z).
inline double bessel_i_scaled(double nu, double z) {
  detail::check_bessel_args(nu, z);
  if (z == 0.0) return nu == 0.0 ? 1.0 : (nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  if (z <= detail::bessel_switch(nu)) return detail::bessel_reduced_series(nu, z) * std::pow(z, nu);
  return detail::bessel_asymptotic_sum(nu, z) / std::sqrt(2.0 * std::numbers::pi * z);
}

/// I_nu(z). Throws std::overflow_error once the result leaves the double
/// range; use bessel_i_scaled there.
inline double bessel_i(double nu, double z) {
  detail::check_bessel_args(nu, z);
  if (z == 0.0) return bessel_i_scaled(nu, z);
  const double v = bessel_i_scaled(nu, z) * std::exp(z);
  if (!std::isfinite(v)) throw std::overflow_error("bessel_i overflows; use bessel_i_scaled");
  return v;
}

/// Laguerre polynomial L_n^alpha(x) by the three-term recurrence.
inline double laguerre_poly(int n, double alpha, double x) {
  if (n < 0) throw std::invalid_argument("laguerre_poly: n must be >= 0");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int m = 1; m < n; ++m) {
    const double next = ((2.0 * m + 1.0 + alpha - x) * cur - (m + alpha) * prev) / (m + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Physicists' Hermite polynomial H_n(x).
inline double hermite_poly(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_poly: n must be >= 0");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int m = 1; m < n; ++m) {
    const double next = 2.0 * x * cur - 2.0 * m * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace rieszlag
