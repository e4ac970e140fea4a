#pragma once

// Quadrature rules: Gauss-Legendre on panels, an exponential tail map for
// [a, inf), and a power-weighted rule that absorbs (x - a)^p at the left end.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rieszlag {

enum class RuleKind { composite_gauss_legendre, exp_tail, endpoint_power_weighted };

inline const char* to_string(RuleKind k) {
  switch (k) {
    case RuleKind::composite_gauss_legendre: return "composite-gauss-legendre";
    case RuleKind::exp_tail: return "exp-tail";
    case RuleKind::endpoint_power_weighted: return "endpoint-power-weighted";
  }
  return "?";
}

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  RuleKind kind = RuleKind::composite_gauss_legendre;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }

  /// Nodes strictly increasing, weights positive, equal lengths.
  bool valid() const {
    if (nodes.size() != weights.size() || nodes.empty()) return false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!(weights[i] > 0.0) || !std::isfinite(nodes[i])) return false;
      if (i > 0 && !(nodes[i] > nodes[i - 1])) return false;
    }
    return true;
  }

  void append(const QuadratureRule& other) {
    nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
    weights.insert(weights.end(), other.weights.begin(), other.weights.end());
  }

  void write_csv(std::ostream& os) const {
    os << "node,weight\n";
    char buf[64];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", nodes[i], weights[i]);
      os << buf;
    }
  }
};

namespace detail {

struct GaussLegendreTable {
  static constexpr int kMaxPoints = 128;
  std::vector<std::vector<double>> x, w;  // on [-1, 1], ascending

  GaussLegendreTable() : x(kMaxPoints + 1), w(kMaxPoints + 1) {
    for (int n = 1; n <= kMaxPoints; ++n) build(n);
  }

  void build(int n) {
    std::vector<double> xs(n), ws(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int m = 2; m <= n; ++m) {
          const double p2 = ((2.0 * m - 1.0) * z * p1 - (m - 1.0) * p0) / m;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      {
        double p0 = 1.0, p1 = z;
        for (int m = 2; m <= n; ++m) {
          const double p2 = ((2.0 * m - 1.0) * z * p1 - (m - 1.0) * p0) / m;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
      }
      xs[i] = -z;
      xs[n - 1 - i] = z;
      ws[i] = ws[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    if (n % 2 == 1) xs[n / 2] = 0.0;
    x[n] = std::move(xs);
    w[n] = std::move(ws);
  }
};

inline const GaussLegendreTable& gl_table() {
  static const GaussLegendreTable table;
  return table;
}

}  // namespace detail

/// n-point Gauss-Legendre nodes and weights on [-1, 1].
inline std::pair<const std::vector<double>&, const std::vector<double>&> gauss_legendre(int n) {
  if (n < 1 || n > detail::GaussLegendreTable::kMaxPoints)
    throw std::invalid_argument("gauss_legendre: unsupported point count");
  const auto& t = detail::gl_table();
  return {t.x[n], t.w[n]};
}

/// Integrate f over [a, b] with one n-point Gauss-Legendre panel.
template <class F>
double gl_panel(F&& f, double a, double b, int n) {
  auto [x, w] = gauss_legendre(n);
  const double h = 0.5 * (b - a), m = 0.5 * (a + b);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += w[i] * f(m + h * x[i]);
  return h * acc;
}

struct Interval {
  double lo = 0.0;
  double hi = 1.0;  // may be +infinity for exp_tail
};

struct RuleOptions {
  int panels = 10;
  int points = 16;
  double exponent = 0.0;  // endpoint_power_weighted: integrand ~ (x - lo)^exponent
  double scale = 1.0;     // exp_tail: x = lo - scale * log(1 - u)
};

/// Composite Gauss-Legendre over the given panel breakpoints.
inline QuadratureRule composite_rule(const std::vector<double>& breaks, int points) {
  QuadratureRule r;
  auto [x, w] = gauss_legendre(points);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    if (!(b > a)) throw std::invalid_argument("composite_rule: panel breaks must increase");
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    for (int i = 0; i < points; ++i) {
      r.nodes.push_back(m + h * x[i]);
      r.weights.push_back(h * w[i]);
    }
  }
  return r;
}

/// Breakpoints a, ..., b refined geometrically toward a (or b):
/// successive panel widths shrink by `ratio` until they reach `min_width`.
inline std::vector<double> graded_breaks(double a, double b, bool toward_left, double ratio,
                                         double min_width) {
  std::vector<double> pts;
  double len = b - a;
  std::vector<double> offsets{len};
  while (len * ratio > min_width) {
    len *= ratio;
    offsets.push_back(len);
  }
  offsets.push_back(0.0);
  if (toward_left) {
    for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) pts.push_back(a + *it);
  } else {
    for (double o : offsets) pts.push_back(b - o);
  }
  return pts;
}

inline QuadratureRule make_rule(Interval dom, RuleKind kind, RuleOptions opt = {}) {
  if (opt.panels < 1 || opt.points < 1) throw std::invalid_argument("make_rule: panels and points must be positive");
  if (!(dom.hi > dom.lo)) throw std::invalid_argument("make_rule: degenerate interval (lo >= hi)");
  QuadratureRule r;
  switch (kind) {
    case RuleKind::composite_gauss_legendre: {
      if (!std::isfinite(dom.hi)) throw std::invalid_argument("make_rule: composite rule needs a finite interval");
      std::vector<double> br(opt.panels + 1);
      for (int p = 0; p <= opt.panels; ++p) br[p] = dom.lo + (dom.hi - dom.lo) * p / opt.panels;
      br.back() = dom.hi;
      r = composite_rule(br, opt.points);
      break;
    }
    case RuleKind::exp_tail: {
      // x = lo - L log(1 - u) maps [0, 1) onto [lo, inf); for a finite hi the
      // map is truncated at the matching u.
      const double L = opt.scale;
      const double umax = std::isfinite(dom.hi) ? -std::expm1(-(dom.hi - dom.lo) / L) : 1.0;
      std::vector<double> br(opt.panels + 1);
      for (int p = 0; p <= opt.panels; ++p) br[p] = umax * p / opt.panels;
      if (umax == 1.0) br = graded_breaks(0.0, 1.0, false, 0.5, std::ldexp(1.0, -2 * opt.panels));
      auto u = composite_rule(br, opt.points);
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double om = 1.0 - u.nodes[i];
        r.nodes.push_back(dom.lo - L * std::log(om));
        r.weights.push_back(u.weights[i] * L / om);
      }
      break;
    }
    case RuleKind::endpoint_power_weighted: {
      if (!(opt.exponent > -1.0)) throw std::invalid_argument("make_rule: endpoint exponent must be > -1");
      if (!std::isfinite(dom.hi)) throw std::invalid_argument("make_rule: power-weighted rule needs a finite interval");
      // x = lo + (hi - lo) u^{1/(p+1)} turns (x - lo)^p dx into a constant
      // multiple of du; panels are graded toward u = 0 for the remainder.
      const double e = 1.0 / (opt.exponent + 1.0);
      const double len = dom.hi - dom.lo;
      auto br = graded_breaks(0.0, 1.0, true, 0.5, std::ldexp(1.0, -opt.panels));
      auto u = composite_rule(br, opt.points);
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double ui = u.nodes[i];
        r.nodes.push_back(dom.lo + len * std::pow(ui, e));
        r.weights.push_back(u.weights[i] * len * e * std::pow(ui, e - 1.0));
      }
      break;
    }
  }
  r.kind = kind;
  return r;
}

/// Rule for integrals over (0, inf) of functions behaving like x^exponent at
/// 0 and decaying like a Gaussian: power-weighted on (0, 1), composite on
/// [1, xmax], exponential tail beyond.
inline QuadratureRule half_line_rule(double exponent, double xmax = 20.0, int panels_per_unit = 2,
                                     int points = 20) {
  QuadratureRule r = make_rule({0.0, 1.0}, RuleKind::endpoint_power_weighted,
                               {.panels = 30, .points = points, .exponent = exponent});
  const int np = std::max(1, static_cast<int>(std::ceil((xmax - 1.0) * panels_per_unit)));
  r.append(make_rule({1.0, xmax}, RuleKind::composite_gauss_legendre, {.panels = np, .points = points}));
  r.append(make_rule({xmax, std::numeric_limits<double>::infinity()}, RuleKind::exp_tail,
                     {.panels = 8, .points = points, .scale = 1.0}));
  r.kind = RuleKind::endpoint_power_weighted;
  return r;
}

/// Symmetric rule on the real line: composite on [-xmax, xmax] plus
/// exponential tails.
inline QuadratureRule real_line_rule(double xmax = 14.0, int panels_per_unit = 2, int points = 20) {
  const double inf = std::numeric_limits<double>::infinity();
  auto left = make_rule({xmax, inf}, RuleKind::exp_tail, {.panels = 8, .points = points, .scale = 1.0});
  QuadratureRule r;
  for (std::size_t i = left.size(); i-- > 0;) {
    r.nodes.push_back(-left.nodes[i]);
    r.weights.push_back(left.weights[i]);
  }
  const int np = std::max(1, static_cast<int>(std::ceil(2.0 * xmax * panels_per_unit)));
  r.append(make_rule({-xmax, xmax}, RuleKind::composite_gauss_legendre, {.panels = np, .points = points}));
  r.append(left);
  return r;
}

}  // namespace rieszlag
