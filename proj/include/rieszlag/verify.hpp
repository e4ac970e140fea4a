#pragma once

// Empirical checks of the kernel size estimates, of the pointwise domination
// of the truncated Riesz integrals, and weighted norm ratio scans. Everything
// here is a finite-sample sup; reports say so.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "kernels.hpp"
#include "operators.hpp"
#include "parallel.hpp"

namespace rieszlag {

enum class BoundStatement { prop33_i, prop33_ii_even, prop33_ii_odd, prop33_iii, prop31_l_table };

inline const char* to_string(BoundStatement s) {
  switch (s) {
    case BoundStatement::prop33_i: return "prop33-i";
    case BoundStatement::prop33_ii_even: return "prop33-ii-even";
    case BoundStatement::prop33_ii_odd: return "prop33-ii-odd";
    case BoundStatement::prop33_iii: return "prop33-iii";
    case BoundStatement::prop31_l_table: return "prop31-l-table";
  }
  return "?";
}

inline std::optional<BoundStatement> parse_bound_statement(const std::string& s) {
  for (auto b : {BoundStatement::prop33_i, BoundStatement::prop33_ii_even, BoundStatement::prop33_ii_odd,
                 BoundStatement::prop33_iii, BoundStatement::prop31_l_table})
    if (s == to_string(b)) return b;
  return std::nullopt;
}

/// x log-spaced in [x_lo, x_hi] (linear for the l-table, where x ranges over
/// the real line); y = x * rho with rho log-spaced in [rho_lo, rho_hi]. For
/// the near-diagonal statements the distance |x - y| (relative for
/// prop33-iii, absolute for the l-table) is log-spaced in [d_lo, d_hi] on both
/// sides instead.
struct SampleSpec {
  double x_lo = 0.05;
  double x_hi = 20.0;
  int nx = 10;
  double rho_lo = 1e-3;
  double rho_hi = 0.5;
  double d_lo = 1e-3;
  double d_hi = 0.5;
  int ny = 8;
};

inline SampleSpec default_sample(BoundStatement s) {
  SampleSpec r;
  switch (s) {
    case BoundStatement::prop33_i: r.rho_lo = 1e-3; r.rho_hi = 0.5; break;
    case BoundStatement::prop33_ii_even:
    case BoundStatement::prop33_ii_odd: r.rho_lo = 2.0; r.rho_hi = 200.0; break;
    case BoundStatement::prop33_iii: r.rho_lo = 0.5; r.rho_hi = 2.0; r.d_lo = 1e-3; r.d_hi = 0.5; break;
    case BoundStatement::prop31_l_table: r.x_lo = -2.0; r.x_hi = 2.0; r.d_lo = 1e-3; r.d_hi = 1.0; break;
  }
  return r;
}

struct SamplePoint {
  double x = 0.0;
  double y = 0.0;
};

struct BoundCheckReport {
  BoundStatement statement = BoundStatement::prop33_i;
  int k = 1;
  double alpha = 0.0;
  SampleSpec region;
  double sup_ratio = 0.0;
  SamplePoint argmax;
  int argmax_l = -1;  // l-table only
  std::vector<double> refinement_history;
  bool stable = false;
  bool empirical_only = true;
};

namespace detail {

inline std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return v;
}

inline std::vector<double> lin_spaced(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

inline void validate_region(BoundStatement s, const SampleSpec& r) {
  if (r.nx < 1 || r.ny < 1) throw std::invalid_argument("sample spec: nx, ny must be >= 1");
  if (s == BoundStatement::prop31_l_table) {
    if (!(r.x_hi >= r.x_lo)) throw std::invalid_argument("sample spec: empty x range");
    if (!(r.d_lo > 0.0 && r.d_hi >= r.d_lo)) throw std::invalid_argument("sample spec: empty distance range");
    return;
  }
  if (!(r.x_lo > 0.0 && r.x_hi >= r.x_lo)) throw std::invalid_argument("sample spec: need 0 < x_lo <= x_hi");
  if (!(r.rho_lo > 0.0 && r.rho_hi > r.rho_lo)) throw std::invalid_argument("sample spec: empty y region");
  switch (s) {
    case BoundStatement::prop33_i:
      if (r.rho_hi > 0.5) throw std::invalid_argument("sample spec: region (i) needs y <= x/2");
      break;
    case BoundStatement::prop33_ii_even:
    case BoundStatement::prop33_ii_odd:
      if (r.rho_lo < 2.0) throw std::invalid_argument("sample spec: region (ii) needs y >= 2x");
      break;
    case BoundStatement::prop33_iii:
      if (r.rho_lo < 0.5 || r.rho_hi > 2.0 || !(r.rho_lo < 1.0 && r.rho_hi > 1.0))
        throw std::invalid_argument("sample spec: region (iii) needs x/2 <= y <= 2x around the diagonal");
      if (!(r.d_lo > 0.0 && r.d_hi >= r.d_lo)) throw std::invalid_argument("sample spec: empty distance range");
      break;
    case BoundStatement::prop31_l_table: break;
  }
}

inline std::vector<SamplePoint> sample_points(BoundStatement s, const SampleSpec& r) {
  std::vector<SamplePoint> pts;
  if (s == BoundStatement::prop31_l_table) {
    for (double x : lin_spaced(r.x_lo, r.x_hi, r.nx))
      for (double d : log_spaced(r.d_lo, r.d_hi, r.ny)) {
        pts.push_back({x, x - d});
        pts.push_back({x, x + d});
      }
    return pts;
  }
  const auto xs = log_spaced(r.x_lo, r.x_hi, r.nx);
  if (s == BoundStatement::prop33_iii) {
    for (double x : xs)
      for (double d : log_spaced(r.d_lo, r.d_hi, r.ny)) {
        if (1.0 - d >= r.rho_lo && d < 1.0) pts.push_back({x, x * (1.0 - d)});
        if (1.0 + d <= r.rho_hi) pts.push_back({x, x * (1.0 + d)});
      }
    return pts;
  }
  for (double x : xs)
    for (double rho : log_spaced(r.rho_lo, r.rho_hi, r.ny)) pts.push_back({x, x * rho});
  return pts;
}

struct PointRatio {
  double ratio = 0.0;
  int l = -1;
};

inline PointRatio point_ratio(BoundStatement s, int k, double a, SamplePoint p) {
  const double x = p.x, y = p.y;
  switch (s) {
    case BoundStatement::prop33_i:
      return {std::abs(riesz_kernel_laguerre(k, a, x, y).value) / (std::pow(y, a + 0.5) / std::pow(x, a + 1.5))};
    case BoundStatement::prop33_ii_even:
      return {std::abs(riesz_kernel_laguerre(k, a, x, y).value) / (std::pow(x, a + 0.5) / std::pow(y, a + 1.5))};
    case BoundStatement::prop33_ii_odd:
      return {std::abs(riesz_kernel_laguerre(k, a, x, y).value) / (std::pow(x, a + 1.5) / std::pow(y, a + 2.5))};
    case BoundStatement::prop33_iii: {
      const double diff = riesz_kernel_laguerre(k, a, x, y).value - riesz_kernel_hermite(k, k, x, y).value;
      return {std::abs(diff) * x / (1.0 + std::sqrt(x / std::abs(x - y)))};
    }
    case BoundStatement::prop31_l_table: {
      const double d = std::abs(x - y);
      PointRatio best;
      for (int l = 0; l <= k; ++l) {
        const double bound = l <= k - 2 ? 1.0 : (l == k - 1 ? 1.0 / std::sqrt(d) : 1.0 / d);
        const double r = std::abs(riesz_kernel_hermite(k, l, x, y).value) / bound;
        if (r > best.ratio) best = {r, l};
      }
      return best;
    }
  }
  return {};
}

}  // namespace detail

/// Sup of |kernel| / bound over the sampled region, then again at twice the
/// density in each direction. Stable when the refined sup is < 2x the first.
inline BoundCheckReport check_prop33(BoundStatement statement, int k, double alpha,
                                     std::optional<SampleSpec> sample = std::nullopt, int threads = 1) {
  if (k < 1 || k > kMaxDerivativeOrder) throw std::invalid_argument("check_prop33: need 1 <= k <= 6");
  (void)AlphaParam(alpha);
  BoundCheckReport rep;
  rep.statement = statement;
  rep.k = k;
  rep.alpha = alpha;
  rep.region = sample.value_or(default_sample(statement));
  detail::validate_region(statement, rep.region);
  for (int level = 0; level < 2; ++level) {
    SampleSpec s = rep.region;
    if (level == 1) {
      s.nx = 2 * s.nx - 1;
      s.ny = 2 * s.ny - 1;
    }
    const auto pts = detail::sample_points(statement, s);
    const auto ratios = parallel_map<detail::PointRatio>(pts.size(), threads, [&](std::size_t i) {
      try {
        return detail::point_ratio(statement, k, alpha, pts[i]);
      } catch (const std::exception& e) {
        throw std::runtime_error(std::string(e.what()) + " at x=" + std::to_string(pts[i].x) +
                                 " y=" + std::to_string(pts[i].y));
      }
    });
    double sup = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!std::isfinite(ratios[i].ratio)) {
        sup = std::numeric_limits<double>::infinity();
        rep.argmax = pts[i];
        rep.argmax_l = ratios[i].l;
        break;
      }
      if (ratios[i].ratio > sup) {
        sup = ratios[i].ratio;
        rep.argmax = pts[i];
        rep.argmax_l = ratios[i].l;
      }
    }
    rep.refinement_history.push_back(sup);
  }
  rep.sup_ratio = rep.refinement_history.back();
  const double first = rep.refinement_history.front();
  rep.stable = std::isfinite(rep.sup_ratio) && first > 0.0 && rep.sup_ratio / first < 2.0;
  return rep;
}

// --------------------------------------------------- maximal domination

struct DominationPoint {
  double x = 0.0;
  double lhs = 0.0;     // sup over the schedule of |truncated integral|
  double hardy0 = 0.0;  // H_0^{alpha+1/2} |f|
  double hardy_inf = 0.0;  // H_inf^{alpha+1/2+delta_k} |f|
  double local = 0.0;   // sup over the schedule of the truncated Hermite integral over (x/2, 2x)
  double nf = 0.0;      // N f(x)
  double ratio = 0.0;   // lhs / (sum of the four terms)
  std::string dominant;
};

struct DominationReport {
  int k = 1;
  double alpha = 0.0;
  std::vector<DominationPoint> points;
  double fitted_c = 0.0;
  std::vector<double> refinement_history;
  bool stable = false;
  bool empirical_only = true;
};

/// N f(x) = integral_{x/2}^{2x} f(y)/y (1 + sqrt(x/|x-y|)) dy, computed with
/// |x - y| = w^2 on each side so the square-root singularity disappears.
inline double n_operator(const std::function<double(double)>& f, Interval support, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("n_operator: x must be > 0");
  double acc = 0.0;
  auto side = [&](double dmax, double sign) {
    // y = x + sign * w^2 for w in [0, sqrt(dmax)], clipped to the support
    double w_lo = 0.0, w_hi = std::sqrt(dmax);
    auto w_of = [&](double y) { return std::sqrt(std::max(0.0, sign * (y - x))); };
    if (sign > 0.0) {
      if (support.hi <= x) return;
      if (support.lo > x) w_lo = w_of(support.lo);
      w_hi = std::min(w_hi, w_of(support.hi));
    } else {
      if (support.lo >= x) return;
      if (support.hi < x) w_lo = w_of(support.hi);
      w_hi = std::min(w_hi, w_of(support.lo));
    }
    if (!(w_hi > w_lo)) return;
    auto g = [&](double w) {
      const double y = x + sign * w * w;
      return f(y) / y * (2.0 * w + 2.0 * std::sqrt(x));
    };
    const int panels = 32;
    for (int i = 0; i < panels; ++i)
      acc += gl_panel(g, w_lo + (w_hi - w_lo) * i / panels, w_lo + (w_hi - w_lo) * (i + 1) / panels, 20);
  };
  side(0.5 * x, -1.0);
  side(x, 1.0);
  return acc;
}

namespace detail {

inline DominationPoint domination_point(int k, double alpha, const Bump& f, double x, const EpsSchedule& sched) {
  DominationPoint p;
  p.x = x;
  const Interval sup = f.support();
  const std::vector<double> one{x};
  auto absf = [&](double y) { return std::abs(f(y)); };
  p.hardy0 = hardy0(alpha + 0.5, absf, one, sup)[0];
  p.hardy_inf = hardy_inf(alpha + 0.5 + (k % 2 ? 1.0 : 0.0), absf, one, sup)[0];
  p.nf = n_operator(absf, sup, x);
  KernelSpec lag;
  lag.family = KernelFamily::laguerre_riesz;
  lag.k = k;
  lag.alpha = AlphaParam(alpha);
  p.lhs = pv_apply(lag, f, sup, x, sched).max_truncated();
  const Interval loc{std::max(sup.lo, 0.5 * x), std::min(sup.hi, 2.0 * x)};
  if (loc.hi > loc.lo) {
    KernelSpec her;
    her.family = KernelFamily::hermite_riesz;
    her.k = k;
    her.l = k;
    p.local = pv_apply(her, f, loc, x, sched).max_truncated();
  }
  const double rhs = p.hardy0 + p.hardy_inf + p.local + p.nf;
  p.ratio = rhs > 0.0 ? p.lhs / rhs : 0.0;
  const double terms[4] = {p.hardy0, p.hardy_inf, p.local, p.nf};
  const char* names[4] = {"hardy0", "hardy_inf", "local", "n"};
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (terms[i] > terms[best]) best = i;
  p.dominant = rhs > 0.0 ? names[best] : "none";
  return p;
}

}  // namespace detail

/// Pointwise check of sup_eps |truncated R f| <= C (H_0 + H_inf + local + N)
/// on `grid`, reporting the fitted C; repeated on a grid with the midpoints
/// added.
inline DominationReport check_maximal_domination(int k, double alpha, const Bump& f, const std::vector<double>& grid,
                                                 const EpsSchedule& sched = {}, int threads = 1) {
  if (k < 1 || k > kMaxDerivativeOrder) throw std::invalid_argument("check_maximal_domination: need 1 <= k <= 6");
  (void)AlphaParam(alpha);
  if (!(f.support().lo > 0.0)) throw std::invalid_argument("check_maximal_domination: bump must lie in (0, inf)");
  if (f.height < 0.0) throw std::invalid_argument("check_maximal_domination: bump must be nonnegative");
  detail::check_grid(grid);
  DominationReport rep;
  rep.k = k;
  rep.alpha = alpha;
  std::vector<double> fine;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) fine.push_back(std::sqrt(grid[i - 1] * grid[i]));
    fine.push_back(grid[i]);
  }
  for (const std::vector<double>* g : {&grid, static_cast<const std::vector<double>*>(&fine)}) {
    const auto pts = parallel_map<DominationPoint>(g->size(), threads, [&](std::size_t i) {
      return detail::domination_point(k, alpha, f, (*g)[i], sched);
    });
    double c = 0.0;
    for (const auto& p : pts) c = std::max(c, p.ratio);
    rep.refinement_history.push_back(c);
    if (g == &grid) rep.points = pts;
  }
  rep.fitted_c = rep.refinement_history.back();
  const double first = rep.refinement_history.front();
  rep.stable = first == 0.0 ? rep.fitted_c == 0.0 : rep.fitted_c / first < 2.0;
  return rep;
}

// ----------------------------------------------------------------- lp scan

struct LpScanReport {
  int k = 1;
  double alpha = 0.0;
  double p = 2.0;
  double delta = 0.0;
  int family_size = 0;
  std::uint64_t seed = 0;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  bool in_range = false;
  bool empirical_only = true;
  std::string note;
};

/// Whether (p, delta) satisfies the boundedness range for the given parity.
inline bool lp_in_range(int k, double alpha, double p, double delta) {
  const double upper = (alpha + 1.5) * p - 1.0;
  const double lower = k % 2 ? -(alpha + 1.5) * p - 1.0 : -(alpha + 0.5) * p - 1.0;
  return p > 1.0 && lower < delta && delta < upper;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// M bumps with radius in [0.4, 1.2] and support inside [0.1, 10].
inline std::vector<Bump> lp_scan_family(int M, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Bump> out;
  for (int i = 0; i < M; ++i) {
    const double r = 0.4 + 0.8 * unit_uniform(rng);
    const double c = 0.1 + r + (9.9 - 2.0 * r) * unit_uniform(rng);
    out.push_back({c, r, 1.0});
  }
  return out;
}

struct LpScanOptions {
  int truncation = 800;
  int projection_panels = 128;
  Interval domain = kNormInterval;
  double norm_panel_width = 0.1;
  double height = 1.0;  // common bump height
};

/// ||R f_i|| / ||f_i|| in L^p(x^delta dx) for M seeded bumps, with R f from
/// the spectral path.
inline LpScanReport lp_scan(int k, double alpha, double p, double delta, int M, std::uint64_t seed = 1,
                            const LpScanOptions& opt = {}, int threads = 1) {
  if (k < 1 || k > 3) throw std::invalid_argument("lp_scan: need 1 <= k <= 3");
  (void)AlphaParam(alpha);
  if (alpha == -0.5) throw std::invalid_argument("lp_scan: alpha = -1/2 is excluded from scans");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_scan: p must be >= 1");
  if (M < 10) throw std::invalid_argument("lp_scan: family size must be >= 10");
  LpScanReport rep;
  rep.k = k;
  rep.alpha = alpha;
  rep.p = p;
  rep.delta = delta;
  rep.family_size = M;
  rep.seed = seed;
  rep.in_range = lp_in_range(k, alpha, p, delta);
  rep.note = rep.in_range ? "inside the stated range; finite-sample ratios only"
                          : "outside the stated range; no claim is made there";
  auto family = lp_scan_family(M, seed);
  for (auto& f : family) f.height = opt.height;
  const auto rule = norm_rule(opt.domain, opt.norm_panel_width);
  const BasisTag b = BasisTag::laguerre(alpha);
  rep.ratios = parallel_map<double>(family.size(), threads, [&](std::size_t i) {
    const Bump& f = family[i];
    const auto c = analyze(f, b, opt.truncation, support_rule(f.support(), opt.projection_panels, 20));
    std::vector<double> rf(rule.size()), fv(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j) {
      rf[j] = riesz_apply_laguerre_spectral(k, c, rule.nodes[j]).value;
      fv[j] = f(rule.nodes[j]);
    }
    return weighted_norm(rf, rule, p, delta).value / weighted_norm(fv, rule, p, delta).value;
  });
  for (double r : rep.ratios) rep.max_ratio = std::max(rep.max_ratio, r);
  return rep;
}

}  // namespace rieszlag
