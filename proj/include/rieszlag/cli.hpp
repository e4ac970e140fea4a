#pragma once

// Command-line front end. run() does all the work against caller-supplied
// streams so the executable and the tests share one code path.
//
// Exit codes: 0 success, 1 a built-in check failed (JSON witness on the error
// stream), 2 invalid input (nothing computed).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/interpolators/barycentric_rational.hpp>
#include <json.hpp>

#include "basis.hpp"
#include "combinat.hpp"
#include "kernels.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "verify.hpp"

namespace rieszlag {

enum class Subcommand { basis, kernel_table, riesz, identities, scan_bounds, lp_scan, phi_limit };
enum class OutputFormat { csv, json };

inline const char* to_string(Subcommand s) {
  switch (s) {
    case Subcommand::basis: return "basis";
    case Subcommand::kernel_table: return "kernel-table";
    case Subcommand::riesz: return "riesz";
    case Subcommand::identities: return "identities";
    case Subcommand::scan_bounds: return "scan-bounds";
    case Subcommand::lp_scan: return "lp-scan";
    case Subcommand::phi_limit: return "phi-limit";
  }
  return "?";
}

/// Thrown for anything that should end in exit code 2.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::identities;
  std::string out;  // empty or "-": the output stream passed to run()
  std::optional<OutputFormat> format;
  std::uint64_t seed = 1;
  int threads = default_threads();

  // basis, riesz, kernel-table
  std::string family;
  std::string alpha = "0";  // parsed only where the family reads it
  int k = 1;
  int l = -1;  // kernel-table, hermite-riesz; -1 means l = k
  double t = 1.0;
  double gamma = 1.0;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> points;
  std::string input_csv;
  std::optional<double> center;
  std::optional<double> radius;
  int truncation = -1;  // -1: subcommand default
  std::string what = "coeffs";
  EpsSchedule eps;

  // identities
  int jmax = 12;
  int amax = 15;
  int nmax = 8;

  // scan-bounds
  std::vector<std::string> statements{"prop33-i", "prop33-ii-even", "prop33-ii-odd", "prop33-iii"};
  std::vector<int> ks{1, 2};
  std::vector<double> alphas{-0.5, 0.0, 2.0};
  std::optional<int> nx;
  std::optional<int> ny;

  // lp-scan
  double p = 2.0;
  double delta = 0.0;
  int family_size = 20;

  // phi-limit
  std::vector<int> phi_ks{2, 4};
};

namespace cli_detail {

using json = nlohmann::ordered_json;

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_alpha(const std::string& s) {
  double v = 0.0;
  try {
    std::size_t pos = 0;
    v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw InvalidInput("--alpha: not a number: " + s);
  }
  if (!(v > -1.0)) throw InvalidInput("--alpha must be > -1");
  return v;
}

inline OutputFormat pick_format(const RunConfig& c, OutputFormat def, bool csv_ok, bool json_ok) {
  const OutputFormat f = c.format.value_or(def);
  if ((f == OutputFormat::csv && !csv_ok) || (f == OutputFormat::json && !json_ok))
    throw InvalidInput(std::string(to_string(c.subcommand)) + ": output format not available");
  return f;
}

inline void need(bool ok, const std::string& msg) {
  if (!ok) throw InvalidInput(msg);
}

/// Sampled input function: barycentric rational interpolant of the CSV rows,
/// zero outside [first x, last x].
struct SampledInput {
  std::vector<double> x, f;
  std::shared_ptr<boost::math::barycentric_rational<double>> interp;

  Interval support() const { return {x.front(), x.back()}; }
  double operator()(double y) const {
    if (y < x.front() || y > x.back()) return 0.0;
    return (*interp)(y);
  }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    out.push_back(cell);
  }
  return out;
}

inline SampledInput read_input_csv(const std::string& path) {
  std::ifstream in(path);
  need(static_cast<bool>(in), "--input-csv: cannot open " + path);
  std::string line;
  need(static_cast<bool>(std::getline(in, line)), "--input-csv: empty file");
  const auto head = split_csv_line(line);
  const auto ix = std::find(head.begin(), head.end(), "x") - head.begin();
  const auto iff = std::find(head.begin(), head.end(), "f") - head.begin();
  need(ix < static_cast<long>(head.size()) && iff < static_cast<long>(head.size()),
       "--input-csv: header must name columns x and f");
  SampledInput s;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    need(cells.size() == head.size(), "--input-csv: wrong column count on line " + std::to_string(row));
    try {
      s.x.push_back(std::stod(cells[ix]));
      s.f.push_back(std::stod(cells[iff]));
    } catch (const std::exception&) {
      throw InvalidInput("--input-csv: bad number on line " + std::to_string(row));
    }
    need(std::isfinite(s.x.back()) && std::isfinite(s.f.back()),
         "--input-csv: non-finite value on line " + std::to_string(row));
  }
  need(s.x.size() >= 4, "--input-csv: need at least 4 rows");
  for (std::size_t i = 1; i < s.x.size(); ++i) need(s.x[i] > s.x[i - 1], "--input-csv: x must be strictly increasing");
  s.interp = std::make_shared<boost::math::barycentric_rational<double>>(s.x.data(), s.f.data(),
                                                                         s.x.size(), 3);
  return s;
}

// ------------------------------------------------------------------ basis

inline int cmd_basis(const RunConfig& c, std::ostream& out) {
  const OutputFormat fmt_ = pick_format(c, OutputFormat::csv, true, true);
  need(c.family == "hermite" || c.family == "laguerre", "basis: --family must be hermite or laguerre");
  const bool lag = c.family == "laguerre";
  const BasisTag b = lag ? BasisTag::laguerre(parse_alpha(c.alpha)) : BasisTag::hermite();
  const int N = c.truncation < 0 ? 60 : c.truncation;
  need(N <= 5000, "basis: --n must be <= 5000");
  need(c.what == "coeffs" || c.what == "samples", "basis: --what must be coeffs or samples");
  std::optional<SampledInput> input;
  if (!c.input_csv.empty()) input = read_input_csv(c.input_csv);
  const Bump bump{c.center.value_or(lag ? 1.5 : 0.0), c.radius.value_or(1.0)};
  need(bump.radius > 0.0, "basis: --radius must be > 0");
  const Interval sup = input ? input->support() : bump.support();
  if (lag) need(sup.lo >= 0.0, "basis: Laguerre input must live on [0, inf)");
  for (double x : c.points) need(std::isfinite(x) && (!lag || x > 0.0), "basis: bad sample point");

  const auto rule = support_rule(sup, 256, 20);
  const SpectralCoeffs coef = input ? analyze(*input, b, N, rule) : analyze(bump, b, N, rule);
  if (c.what == "coeffs") {
    if (fmt_ == OutputFormat::csv) {
      coef.write_csv(out);
    } else {
      json j;
      j["basis"] = c.family;
      if (lag) j["alpha"] = b.alpha_value();
      j["truncation"] = N;
      j["tail_bound"] = coef.tail_bound();
      j["coeffs"] = coef.coeffs;
      out << j.dump(2) << "\n";
    }
    return 0;
  }
  std::vector<double> xs = c.points;
  if (xs.empty())
    for (int i = 0; i <= 100; ++i) xs.push_back(sup.lo + (sup.hi - sup.lo) * i / 100.0);
  const auto fs = parallel_map<double>(xs.size(), c.threads, [&](std::size_t i) { return synthesize(coef, xs[i]); });
  if (fmt_ == OutputFormat::csv) {
    write_sampled_csv(out, xs, fs);
  } else {
    json j = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) j.push_back({{"x", xs[i]}, {"f", fs[i]}});
    out << j.dump(2) << "\n";
  }
  return 0;
}

// ----------------------------------------------------------- kernel-table

inline int cmd_kernel_table(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const OutputFormat fmt_ = pick_format(c, OutputFormat::csv, true, true);
  auto fam = parse_kernel_family(c.family);
  need(fam.has_value(), "kernel-table: unknown --family " + c.family);
  KernelSpec s;
  s.family = *fam;
  s.k = c.k;
  s.l = c.l < 0 ? c.k : c.l;
  s.t = c.t;
  s.gamma = c.gamma;
  s.estimate_error = true;
  const bool lag = s.family == KernelFamily::laguerre_heat || s.family == KernelFamily::laguerre_riesz;
  if (lag) s.alpha = AlphaParam(parse_alpha(c.alpha));
  need(!c.xs.empty() && !c.ys.empty(), "kernel-table: --x and --y are required");
  try {
    s.validate();
    for (double x : c.xs)
      for (double y : c.ys) s.validate_point(x, y);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(std::string("kernel-table: ") + e.what());
  }
  struct Row {
    double x, y;
  };
  std::vector<Row> rows;
  for (double x : c.xs)
    for (double y : c.ys) rows.push_back({x, y});
  const auto vals =
      parallel_map<KernelValue>(rows.size(), c.threads, [&](std::size_t i) { return evaluate_kernel(s, rows[i].x, rows[i].y); });

  const bool heat = s.family == KernelFamily::hermite_heat || s.family == KernelFamily::laguerre_heat;
  const bool riesz = s.family == KernelFamily::hermite_riesz || s.family == KernelFamily::laguerre_riesz;
  const std::string kcol = riesz ? std::to_string(s.k) : "";
  const std::string lcol = s.family == KernelFamily::hermite_riesz ? std::to_string(s.l) : "";
  const std::string acol = lag ? fmt(s.alpha->value()) : "";
  const std::string tcol = heat ? fmt(s.t) : (s.family == KernelFamily::hermite_frac ? fmt(s.gamma) : "");
  if (fmt_ == OutputFormat::csv) {
    out << "family,k,l,alpha,t-or-gamma,x,y,value,est_err\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      out << to_string(s.family) << ',' << kcol << ',' << lcol << ',' << acol << ',' << tcol << ','
          << fmt(rows[i].x) << ',' << fmt(rows[i].y) << ',' << fmt(vals[i].value) << ',' << fmt(vals[i].est_err)
          << '\n';
  } else {
    json j = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      json r;
      r["family"] = to_string(s.family);
      if (riesz) r["k"] = s.k;
      if (s.family == KernelFamily::hermite_riesz) r["l"] = s.l;
      if (lag) r["alpha"] = s.alpha->value();
      if (heat) r["t"] = s.t;
      if (s.family == KernelFamily::hermite_frac) r["gamma"] = s.gamma;
      r["x"] = rows[i].x;
      r["y"] = rows[i].y;
      r["value"] = vals[i].value;
      r["est_err"] = vals[i].est_err;
      j.push_back(r);
    }
    out << j.dump(2) << "\n";
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!std::isfinite(vals[i].value) || vals[i].flagged || !vals[i].converged) {
      json w{{"check", "kernel_value"},
             {"family", to_string(s.family)},
             {"x", rows[i].x},
             {"y", rows[i].y},
             {"value", vals[i].value},
             {"flagged", vals[i].flagged},
             {"converged", vals[i].converged}};
      err << w.dump() << "\n";
      return 1;
    }
  }
  return 0;
}

// ------------------------------------------------------------------ riesz

inline constexpr double kRieszTolerance = 1e-3;

inline int cmd_riesz(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const OutputFormat fmt_ = pick_format(c, OutputFormat::csv, true, true);
  need(c.family == "hermite" || c.family == "laguerre", "riesz: --family must be hermite or laguerre");
  const bool lag = c.family == "laguerre";
  need(c.k >= 1 && c.k <= kMaxDerivativeOrder, "riesz: --k must be in 1..6");
  const double alpha = lag ? parse_alpha(c.alpha) : 0.0;
  try {
    c.eps.validate();
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(std::string("riesz: ") + e.what());
  }
  const int N = c.truncation < 0 ? 3200 : c.truncation;
  need(N >= 1 && N <= 5000, "riesz: --n must be in 1..5000");

  std::optional<SampledInput> input;
  if (!c.input_csv.empty()) input = read_input_csv(c.input_csv);
  const Bump bump{c.center.value_or(lag ? 1.25 : 0.0), c.radius.value_or(lag ? 0.75 : 1.0)};
  need(bump.radius > 0.0, "riesz: --radius must be > 0");
  const Interval sup = input ? input->support() : bump.support();
  if (lag) need(sup.lo >= 0.0, "riesz: Laguerre input must live on [0, inf)");
  std::vector<double> xs = c.points;
  if (xs.empty())
    for (int i = 1; i <= 5; ++i) xs.push_back(sup.lo + (sup.hi - sup.lo) * i / 6.0);
  for (double x : xs) need(std::isfinite(x) && (!lag || x > 0.0), "riesz: evaluation points must be finite (and > 0 for laguerre)");

  std::function<double(double)> f;
  if (input)
    f = *input;
  else
    f = bump;
  KernelSpec spec;
  spec.family = lag ? KernelFamily::laguerre_riesz : KernelFamily::hermite_riesz;
  spec.k = c.k;
  spec.l = c.k;
  if (lag) spec.alpha = AlphaParam(alpha);
  const BasisTag b = lag ? BasisTag::laguerre(alpha) : BasisTag::hermite();
  const SpectralCoeffs coef = analyze(f, b, N, support_rule(sup, 256, 20));

  struct Row {
    double spectral, pv, wk, diff, err_est;
    bool flagged;
  };
  const auto rows = parallel_map<Row>(xs.size(), c.threads, [&](std::size_t i) {
    const double x = xs[i];
    const double sp = lag ? riesz_apply_laguerre_spectral(c.k, coef, x).value
                          : riesz_apply_hermite_spectral(c.k, coef, x).value;
    const PVResult pv = pv_apply(spec, f, sup, x, c.eps);
    return Row{sp, pv.extrapolated, pv.wk_correction, std::abs(sp - pv.total()), pv.err_estimate, pv.flagged};
  });

  if (fmt_ == OutputFormat::csv) {
    out << "x,spectral,pv,wk_term,abs_diff,err_est\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      out << fmt(xs[i]) << ',' << fmt(rows[i].spectral) << ',' << fmt(rows[i].pv) << ',' << fmt(rows[i].wk) << ','
          << fmt(rows[i].diff) << ',' << fmt(rows[i].err_est) << '\n';
  } else {
    json j = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i)
      j.push_back({{"x", xs[i]},
                   {"spectral", rows[i].spectral},
                   {"pv", rows[i].pv},
                   {"wk_term", rows[i].wk},
                   {"abs_diff", rows[i].diff},
                   {"err_est", rows[i].err_est}});
    out << j.dump(2) << "\n";
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double tol = kRieszTolerance * (1.0 + std::abs(rows[i].spectral));
    if (!(rows[i].diff < tol) || rows[i].flagged) {
      json w{{"check", "pv_matches_spectral"},
             {"family", c.family},
             {"k", c.k},
             {"x", xs[i]},
             {"spectral", rows[i].spectral},
             {"pv", rows[i].pv},
             {"wk_term", rows[i].wk},
             {"abs_diff", rows[i].diff},
             {"tolerance", tol},
             {"err_est", rows[i].err_est},
             {"flagged", rows[i].flagged}};
      if (lag) w["alpha"] = alpha;
      err << w.dump() << "\n";
      return 1;
    }
  }
  return 0;
}

// ------------------------------------------------------------- identities

inline int cmd_identities(const RunConfig& c, std::ostream& out, std::ostream& err) {
  pick_format(c, OutputFormat::json, false, true);
  need(c.jmax >= 1 && c.jmax <= 40, "identities: --jmax must be in 1..40");
  need(c.amax >= 1 && c.amax <= 40, "identities: --amax must be in 1..40");
  need(c.nmax >= 0 && c.nmax <= 20, "identities: --nmax must be in 0..20");
  const auto res = run_identity_suite(c.jmax, c.amax, c.nmax);
  json j = json::array();
  for (const auto& r : res) {
    json params = json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    j.push_back({{"identity", r.identity},
                 {"parameters", params},
                 {"status", r.pass ? "exact-pass" : "fail"},
                 {"witness", r.witness}});
  }
  out << j.dump(2) << "\n";
  for (std::size_t i = 0; i < res.size(); ++i)
    if (!res[i].pass) {
      err << j[i].dump() << "\n";
      return 1;
    }
  return 0;
}

// ------------------------------------------------------------ scan-bounds

inline json to_json(const SampleSpec& s) {
  return {{"x_lo", s.x_lo}, {"x_hi", s.x_hi}, {"nx", s.nx},       {"rho_lo", s.rho_lo},
          {"rho_hi", s.rho_hi}, {"d_lo", s.d_lo}, {"d_hi", s.d_hi}, {"ny", s.ny}};
}

inline json to_json(const BoundCheckReport& r) {
  json j;
  j["statement"] = to_string(r.statement);
  j["k"] = r.k;
  j["alpha"] = r.alpha;
  j["region"] = to_json(r.region);
  j["sup_ratio"] = r.sup_ratio;
  j["argmax"] = {{"x", r.argmax.x}, {"y", r.argmax.y}};
  if (r.statement == BoundStatement::prop31_l_table) j["argmax_l"] = r.argmax_l;
  j["refinement_history"] = r.refinement_history;
  j["stable"] = r.stable;
  j["empirical_only"] = r.empirical_only;
  return j;
}

inline int cmd_scan_bounds(const RunConfig& c, std::ostream& out, std::ostream& err) {
  pick_format(c, OutputFormat::json, false, true);
  std::vector<BoundStatement> sts;
  for (const auto& s : c.statements) {
    auto b = parse_bound_statement(s);
    need(b.has_value(), "scan-bounds: unknown statement " + s);
    sts.push_back(*b);
  }
  need(!sts.empty() && !c.ks.empty() && !c.alphas.empty(), "scan-bounds: empty parameter list");
  for (int k : c.ks) need(k >= 1 && k <= kMaxDerivativeOrder, "scan-bounds: --k must be in 1..6");
  for (double a : c.alphas) need(a > -1.0, "scan-bounds: --alpha must be > -1");
  struct Job {
    BoundStatement s;
    int k;
    double a;
    SampleSpec spec;
  };
  std::vector<Job> jobs;
  for (auto s : sts)
    for (int k : c.ks)
      for (double a : c.alphas) {
        if (s == BoundStatement::prop31_l_table && a != c.alphas.front()) continue;  // alpha-free
        SampleSpec sp = default_sample(s);
        if (c.nx) sp.nx = *c.nx;
        if (c.ny) sp.ny = *c.ny;
        try {
          detail::validate_region(s, sp);
        } catch (const std::invalid_argument& e) {
          throw InvalidInput(std::string("scan-bounds: ") + e.what());
        }
        jobs.push_back({s, k, a, sp});
      }
  std::vector<BoundCheckReport> reps;
  for (const auto& jb : jobs) reps.push_back(check_prop33(jb.s, jb.k, jb.a, jb.spec, c.threads));
  json j = json::array();
  for (const auto& r : reps) j.push_back(to_json(r));
  out << j.dump(2) << "\n";
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (!std::isfinite(reps[i].sup_ratio) || !reps[i].stable) {
      json w{{"check", "bound_scan_stable"}, {"report", j[i]}};
      err << w.dump() << "\n";
      return 1;
    }
  return 0;
}

// ---------------------------------------------------------------- lp-scan

inline json to_json(const LpScanReport& r) {
  json j;
  j["k"] = r.k;
  j["alpha"] = r.alpha;
  j["p"] = r.p;
  j["delta"] = r.delta;
  j["family_size"] = r.family_size;
  j["seed"] = r.seed;
  j["ratios"] = r.ratios;
  j["max_ratio"] = r.max_ratio;
  j["in_range"] = r.in_range;
  j["empirical_only"] = r.empirical_only;
  j["note"] = r.note;
  return j;
}

inline int cmd_lp_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  pick_format(c, OutputFormat::json, false, true);
  need(c.k >= 1 && c.k <= 3, "lp-scan: --k must be in 1..3");
  const double alpha = parse_alpha(c.alpha);
  need(alpha != -0.5, "lp-scan: alpha = -1/2 is excluded");
  need(c.p > 1.0, "lp-scan: --p must be > 1");
  need(std::isfinite(c.delta), "lp-scan: --delta must be finite");
  need(c.family_size >= 10 && c.family_size <= 10000, "lp-scan: --m must be in 10..10000");
  LpScanOptions opt;
  if (c.truncation > 0) opt.truncation = c.truncation;
  const auto rep = lp_scan(c.k, alpha, c.p, c.delta, c.family_size, c.seed, opt, c.threads);
  const json j = to_json(rep);
  out << j.dump(2) << "\n";
  if (rep.in_range)
    for (std::size_t i = 0; i < rep.ratios.size(); ++i)
      if (!(std::isfinite(rep.ratios[i]) && rep.ratios[i] > 0.0)) {
        json w{{"check", "lp_ratio_finite"}, {"index", i}, {"ratio", rep.ratios[i]}, {"seed", rep.seed}};
        err << w.dump() << "\n";
        return 1;
      }
  return 0;
}

// -------------------------------------------------------------- phi-limit

inline int cmd_phi_limit(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const OutputFormat fmt_ = pick_format(c, OutputFormat::json, true, true);
  need(!c.phi_ks.empty(), "phi-limit: --k is required");
  for (int k : c.phi_ks) need(k >= 2 && k % 2 == 0 && k <= 12, "phi-limit: --k must be even, 2..12");
  try {
    c.eps.validate();
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(std::string("phi-limit: ") + e.what());
  }
  const auto res = parallel_map<PhiLimitResult>(c.phi_ks.size(), c.threads,
                                                [&](std::size_t i) { return phi_limit_table(c.phi_ks[i], c.eps); });
  if (fmt_ == OutputFormat::csv) {
    out << "k,eps,phi\n";
    for (std::size_t i = 0; i < res.size(); ++i) {
      for (std::size_t e = 0; e < res[i].epsilons.size(); ++e)
        out << c.phi_ks[i] << ',' << fmt(res[i].epsilons[e]) << ',' << fmt(res[i].values[e]) << '\n';
      out << c.phi_ks[i] << ",0," << fmt(res[i].extrapolated) << '\n';
    }
  } else {
    json j = json::array();
    for (std::size_t i = 0; i < res.size(); ++i)
      j.push_back({{"k", c.phi_ks[i]},
                   {"epsilons", res[i].epsilons},
                   {"values", res[i].values},
                   {"extrapolated", res[i].extrapolated},
                   {"err_estimate", res[i].err_estimate}});
    out << j.dump(2) << "\n";
  }
  for (std::size_t i = 0; i < res.size(); ++i)
    if (!std::isfinite(res[i].extrapolated)) {
      err << json{{"check", "phi_limit_finite"}, {"k", c.phi_ks[i]}}.dump() << "\n";
      return 1;
    }
  return 0;
}

inline int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  switch (c.subcommand) {
    case Subcommand::basis: return cmd_basis(c, out);
    case Subcommand::kernel_table: return cmd_kernel_table(c, out, err);
    case Subcommand::riesz: return cmd_riesz(c, out, err);
    case Subcommand::identities: return cmd_identities(c, out, err);
    case Subcommand::scan_bounds: return cmd_scan_bounds(c, out, err);
    case Subcommand::lp_scan: return cmd_lp_scan(c, out, err);
    case Subcommand::phi_limit: return cmd_phi_limit(c, out, err);
  }
  return 2;
}

}  // namespace cli_detail

/// Runs one configured subcommand. Data goes to the file named by c.out, or
/// to `out` when that is empty or "-"; diagnostics go to `err`. The data is
/// produced in full before anything is written.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.threads < 1) {
    err << "error: --threads must be >= 1\n";
    return 2;
  }
  std::ostringstream buf;
  int code = 0;
  try {
    code = cli_detail::dispatch(c, buf, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << cli_detail::json{{"check", "computation"}, {"error", e.what()}}.dump() << "\n";
    return 1;
  }
  if (c.out.empty() || c.out == "-") {
    out << buf.str();
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << c.out << "\n";
      return 2;
    }
    f << buf.str();
  }
  return code;
}

/// Parses argv into `c`. Returns an exit code when the program should stop
/// here (help: 0, bad arguments: 2).
inline std::optional<int> parse_command_line(int argc, const char* const* argv, RunConfig& c, std::ostream& out,
                                             std::ostream& err) {
  CLI::App app{"Riesz transforms for Hermite and Laguerre expansions: kernels, principal values, checks"};
  app.name("rieszlag");
  app.require_subcommand(1);
  std::string format;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--out", c.out, "output path (default: standard output)");
    s->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  };
  auto eps_flags = [&](CLI::App* s) {
    s->add_option("--eps-start", c.eps.start, "first excision radius");
    s->add_option("--eps-ratio", c.eps.ratio, "geometric ratio of the excision radii");
    s->add_option("--eps-stages", c.eps.stages, "number of excision radii");
  };
  auto input_flags = [&](CLI::App* s) {
    s->add_option("--input-csv", c.input_csv, "input samples, columns x,f");
    s->add_option("--center", c.center, "center of the default bump input");
    s->add_option("--radius", c.radius, "radius of the default bump input");
    s->add_option("--n", c.truncation, "spectral truncation");
  };

  auto* basis = app.add_subcommand("basis", "spectral coefficients of an input function");
  add_common(basis);
  input_flags(basis);
  c.family = "hermite";
  basis->add_option("--family", c.family, "hermite or laguerre");
  basis->add_option("--alpha", c.alpha, "Laguerre parameter");
  basis->add_option("--what", c.what, "coeffs (n,c_n) or samples (x,f(x))");
  basis->add_option("--points", c.points, "sample points")->delimiter(',');

  auto* ktab = app.add_subcommand("kernel-table", "tabulate a kernel on a grid");
  add_common(ktab);
  std::string kfam = "hermite-heat";
  ktab->add_option("--family", kfam, "hermite-heat, laguerre-heat, hermite-frac, hermite-riesz, laguerre-riesz");
  ktab->add_option("--k", c.k, "Riesz order");
  ktab->add_option("--l", c.l, "derivative count for hermite-riesz (default k)");
  ktab->add_option("--alpha", c.alpha, "Laguerre parameter");
  ktab->add_option("--t", c.t, "heat time");
  ktab->add_option("--gamma", c.gamma, "fractional order");
  ktab->add_option("--x", c.xs, "x values")->delimiter(',');
  ktab->add_option("--y", c.ys, "y values")->delimiter(',');

  auto* riesz = app.add_subcommand("riesz", "principal value against the spectral path");
  add_common(riesz);
  input_flags(riesz);
  eps_flags(riesz);
  std::string rfam = "hermite";
  riesz->add_option("--family", rfam, "hermite or laguerre");
  riesz->add_option("--k", c.k, "Riesz order");
  riesz->add_option("--alpha", c.alpha, "Laguerre parameter (ignored for hermite)");
  riesz->add_option("--points", c.points, "evaluation points")->delimiter(',');

  auto* ids = app.add_subcommand("identities", "exact combinatorial identity sweep");
  add_common(ids);
  ids->add_option("--jmax", c.jmax, "largest j for the bracket sums");
  ids->add_option("--amax", c.amax, "largest j for A_{j,s}");
  ids->add_option("--nmax", c.nmax, "largest N and q for the chain-rule expansion");

  auto* scan = app.add_subcommand("scan-bounds", "kernel size estimate scans");
  add_common(scan);
  scan->add_option("--statement", c.statements, "prop33-i, prop33-ii-even, prop33-ii-odd, prop33-iii, prop31-l-table")
      ->delimiter(',');
  scan->add_option("--k", c.ks, "orders")->delimiter(',');
  scan->add_option("--alpha", c.alphas, "Laguerre parameters")->delimiter(',');
  scan->add_option("--nx", c.nx, "x samples");
  scan->add_option("--ny", c.ny, "y samples per x");

  auto* lp = app.add_subcommand("lp-scan", "weighted norm ratios over seeded bumps");
  add_common(lp);
  lp->add_option("--k", c.k, "Riesz order");
  lp->add_option("--alpha", c.alpha, "Laguerre parameter");
  lp->add_option("--p", c.p, "exponent");
  lp->add_option("--delta", c.delta, "weight exponent");
  lp->add_option("--m", c.family_size, "family size");
  lp->add_option("--n", c.truncation, "spectral truncation");

  auto* phi = app.add_subcommand("phi-limit", "small-eps limit of the even-order correction integral");
  add_common(phi);
  eps_flags(phi);
  phi->add_option("--k", c.phi_ks, "even orders")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const std::pair<CLI::App*, Subcommand> subs[] = {
      {basis, Subcommand::basis},         {ktab, Subcommand::kernel_table}, {riesz, Subcommand::riesz},
      {ids, Subcommand::identities},      {scan, Subcommand::scan_bounds},  {lp, Subcommand::lp_scan},
      {phi, Subcommand::phi_limit}};
  for (const auto& [app_, sub] : subs)
    if (app_->parsed()) c.subcommand = sub;
  if (c.subcommand == Subcommand::kernel_table) c.family = kfam;
  if (c.subcommand == Subcommand::riesz) c.family = rfam;
  if (!format.empty()) c.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  return std::nullopt;
}

/// parse_command_line followed by run.
inline int main_entry(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig c;
  if (auto stop = parse_command_line(argc, argv, c, out, err)) return *stop;
  return run(c, out, err);
}

}  // namespace rieszlag
