#pragma once

// Exact rational checks of the finite identities behind the kernel
// formulas: E_{N,l}, the Bessel asymptotic coefficients [alpha, r], the
// alternating power sums A_{j,s}, the vanishing bracket sums and the
// chain-rule expansion of d^N/dx^N g(x^2).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rieszlag {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Rational alpha > -1.
class AlphaRational {
 public:
  explicit AlphaRational(Rational v) : value_(std::move(v)) {
    if (!(value_ > -1)) throw std::invalid_argument("alpha must be > -1, got " + value_.str());
  }
  AlphaRational(long num, long den) : AlphaRational(Rational(num, den)) {}
  const Rational& value() const { return value_; }

 private:
  Rational value_;
};

inline BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigInt pow2(int e) { return BigInt(1) << e; }

/// E_{N,l} = 2^{N-2l} N! / (l! (N-2l)!), 0 <= l <= N/2.
inline Rational e_coeff(int N, int l) {
  if (N < 0 || l < 0 || 2 * l > N) throw std::out_of_range("e_coeff: need 0 <= l <= N/2");
  return Rational(pow2(N - 2 * l) * factorial(N) / (factorial(l) * factorial(N - 2 * l)));
}

/// Same as e_coeff, in floating point.
inline double e_coeff_double(int N, int l) { return static_cast<double>(e_coeff(N, l)); }

/// [alpha, r] = prod_{i=1..r} (4 alpha^2 - (2i-1)^2) / (2^{2r} r!).
inline Rational bracket_coeff(const Rational& alpha, int r) {
  if (r < 0) throw std::out_of_range("bracket_coeff: r must be >= 0");
  Rational acc = 1;
  for (int i = 1; i <= r; ++i) acc *= 4 * alpha * alpha - Rational((2 * i - 1) * (2 * i - 1));
  return acc / Rational(pow2(2 * r) * factorial(r));
}

inline Rational bracket_coeff(const AlphaRational& alpha, int r) { return bracket_coeff(alpha.value(), r); }

/// A_{j,s} = sum_l (-1)^l C(j,l) l^s with 0^0 = 1.
inline BigInt a_sum(int j, int s) {
  if (j < 0 || s < 0) throw std::out_of_range("a_sum: j, s must be >= 0");
  BigInt acc = 0;
  for (int l = 0; l <= j; ++l) {
    BigInt term = binomial(j, l) * boost::multiprecision::pow(BigInt(l), static_cast<unsigned>(s));
    if (l % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

/// sum_{n<=m} sum_{l=2n}^{j} (-1)^{l+n} C(j,l)
/// E_{l,n} / 2^{l-2n} [alpha + l - n, m - n]. Vanishes for admissible m.
inline Rational lemma_n1_check(int j, int m, const AlphaRational& alpha) {
  if (j < 1) throw std::out_of_range("lemma_n1_check: j must be >= 1");
  if (m < 0 || 2 * m > j) throw std::out_of_range("lemma_n1_check: need 0 <= m <= j/2");
  Rational acc = 0;
  for (int n = 0; n <= m; ++n) {
    for (int l = 2 * n; l <= j; ++l) {
      Rational term = Rational(binomial(j, l)) * e_coeff(l, n) / Rational(pow2(l - 2 * n)) *
                      bracket_coeff(alpha.value() + (l - n), m - n);
      if ((l + n) % 2) acc -= term;
      else acc += term;
    }
  }
  return acc;
}

/// Dense polynomial with rational coefficients, index = degree.
using RationalPoly = std::vector<Rational>;

inline RationalPoly poly_derivative(const RationalPoly& p) {
  if (p.size() <= 1) return {};
  RationalPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  return d;
}

/// Largest |coefficient| of d^N/dx^N[(x^2)^q] minus
/// sum_l E_{N,l} x^{N-2l} g^{(N-l)}(x^2) for g(u) = u^q. Zero when the
/// expansion holds exactly.
inline Rational identity_2_3_check(int N, int q) {
  if (N < 0 || q < 0) throw std::out_of_range("identity_2_3_check: N, q must be >= 0");
  RationalPoly lhs(2 * q + 1);
  lhs[2 * q] = 1;
  for (int i = 0; i < N; ++i) lhs = poly_derivative(lhs);

  RationalPoly rhs(std::max<std::size_t>(lhs.size(), 2 * q + N + 1));
  for (int l = 0; 2 * l <= N; ++l) {
    const int order = N - l;
    if (order > q) continue;
    // g^{(order)}(u) = q!/(q-order)! u^{q-order}, evaluated at u = x^2.
    const Rational c = e_coeff(N, l) * Rational(factorial(q) / factorial(q - order));
    const int deg = N - 2 * l + 2 * (q - order);
    rhs[deg] += c;
  }
  lhs.resize(std::max(lhs.size(), rhs.size()));
  rhs.resize(lhs.size());
  Rational worst = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, Rational(abs(lhs[i] - rhs[i])));
  return worst;
}

struct IdentityResult {
  std::string identity;
  std::vector<std::pair<std::string, std::string>> parameters;
  bool pass = false;
  std::string witness;  // exact value of the residual
};

/// The alpha values used for the bracket-sum sweep.
inline std::vector<AlphaRational> default_n1_alphas() {
  return {AlphaRational(-1, 2), AlphaRational(0, 1), AlphaRational(1, 3), AlphaRational(2, 1),
          AlphaRational(9, 4)};
}

/// Full exact sweep: A_{j,s} for j <= amax, the bracket sums for j <= jmax over
/// default_n1_alphas(), d^N g(x^2) expansion for N, q <= nmax.
inline std::vector<IdentityResult> run_identity_suite(int jmax = 12, int amax = 15, int nmax = 8) {
  std::vector<IdentityResult> out;
  for (int j = 1; j <= amax; ++j) {
    for (int s = 0; s < j; ++s) {
      const BigInt v = a_sum(j, s);
      out.push_back({"A_js_vanishes", {{"j", std::to_string(j)}, {"s", std::to_string(s)}}, v == 0, v.str()});
    }
    const BigInt jj = a_sum(j, j);
    const BigInt expect = (j % 2 ? -1 : 1) * factorial(j);
    out.push_back({"A_jj_factorial", {{"j", std::to_string(j)}}, jj == expect, BigInt(jj - expect).str()});
    const BigInt rec = jj + j * a_sum(j - 1, j - 1);
    out.push_back({"A_jj_recurrence", {{"j", std::to_string(j)}}, rec == 0, rec.str()});
  }
  for (const auto& a : default_n1_alphas()) {
    for (int j = 1; j <= jmax; ++j) {
      for (int m = 0; 2 * m <= j; ++m) {
        const Rational v = lemma_n1_check(j, m, a);
        out.push_back({"bracket_alternating_sum",
                       {{"j", std::to_string(j)}, {"m", std::to_string(m)}, {"alpha", a.value().str()}},
                       v == 0,
                       v.str()});
      }
    }
  }
  for (int N = 0; N <= nmax; ++N) {
    for (int q = 0; q <= nmax; ++q) {
      const Rational v = identity_2_3_check(N, q);
      out.push_back({"chain_rule_x2", {{"N", std::to_string(N)}, {"q", std::to_string(q)}}, v == 0, v.str()});
    }
  }
  return out;
}

}  // namespace rieszlag
