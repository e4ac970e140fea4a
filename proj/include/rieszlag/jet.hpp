#pragma once

// Truncated Taylor series ("jets") for forward-mode differentiation of the
// basis recurrences. Coefficient i holds f^{(i)}(x0) / i!.

#include <array>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace rieszlag {

class Jet {
 public:
  static constexpr int kMaxOrder = 8;

  Jet() = default;

  /// Constant jet of the given order.
  Jet(int order, double value) : order_(order) {
    check_order(order);
    c_[0] = value;
  }

  /// The independent variable x0 + h.
  static Jet variable(int order, double x0) {
    Jet j(order, x0);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return order_; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }
  double value() const { return c_[0]; }

  /// i-th derivative at the expansion point.
  double derivative(int i) const {
    double f = 1.0;
    for (int m = 2; m <= i; ++m) f *= m;
    return c_[i] * f;
  }

  /// Jet of f', one order lower.
  Jet differentiate() const {
    if (order_ == 0) throw std::logic_error("cannot differentiate an order-0 jet");
    Jet d(order_ - 1, 0.0);
    for (int i = 0; i < order_; ++i) d.c_[i] = (i + 1) * c_[i + 1];
    return d;
  }

  Jet& operator+=(const Jet& o) {
    assert(o.order_ == order_);
    for (int i = 0; i <= order_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    assert(o.order_ == order_);
    for (int i = 0; i <= order_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (int i = 0; i <= order_; ++i) c_[i] *= s;
    return *this;
  }
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a += -s; }
  friend Jet operator-(double s, const Jet& a) { return (-1.0 * a) + s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    assert(a.order_ == b.order_);
    Jet r(a.order_, 0.0);
    for (int i = 0; i <= a.order_; ++i) {
      double acc = 0.0;
      for (int j = 0; j <= i; ++j) acc += a.c_[j] * b.c_[i - j];
      r.c_[i] = acc;
    }
    return r;
  }

  friend Jet reciprocal(const Jet& a) {
    Jet r(a.order_, 1.0 / a.c_[0]);
    for (int i = 1; i <= a.order_; ++i) {
      double acc = 0.0;
      for (int j = 1; j <= i; ++j) acc += a.c_[j] * r.c_[i - j];
      r.c_[i] = -acc / a.c_[0];
    }
    return r;
  }

  friend Jet exp(const Jet& a) {
    Jet r(a.order_, std::exp(a.c_[0]));
    for (int i = 1; i <= a.order_; ++i) {
      double acc = 0.0;
      for (int j = 1; j <= i; ++j) acc += j * a.c_[j] * r.c_[i - j];
      r.c_[i] = acc / i;
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    Jet r(a.order_, std::log(a.c_[0]));
    for (int i = 1; i <= a.order_; ++i) {
      double acc = 0.0;
      for (int j = 1; j < i; ++j) acc += j * r.c_[j] * a.c_[i - j];
      r.c_[i] = (a.c_[i] - acc / i) / a.c_[0];
    }
    return r;
  }

 private:
  static void check_order(int order) {
    if (order < 0 || order > kMaxOrder) throw std::out_of_range("jet order out of range");
  }

  int order_ = 0;
  std::array<double, kMaxOrder + 1> c_{};
};

}  // namespace rieszlag
