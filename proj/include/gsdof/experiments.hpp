// Copyright 2026 The gsdof Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GSDOF_EXPERIMENTS_HPP_
#define GSDOF_EXPERIMENTS_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gsdof/common.hpp"
#include "gsdof/gaussian_mi.hpp"
#include "gsdof/lattice.hpp"
#include "gsdof/regions.hpp"
#include "gsdof/schemes.hpp"
#include "gsdof/topology.hpp"

namespace gsdof {

// ---- parallel map -------------------------------------------------------

// GSDOF_THREADS caps the worker count; unset or invalid means all cores.
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GSDOF_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<int>(v);
  }
  return std::max(1, n);
}

// Runs fn(i) for i in [0, count). Results are written by index, so the
// caller's reduction order never depends on scheduling. The lowest-index
// exception wins.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::min(worker_count(), std::max(1, count));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(std::max(0, count)));
  std::atomic<int> next{0};
  auto loop = [&]() {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---- scheme registry ----------------------------------------------------

struct SchemeSetup {
  std::string name;
  std::vector<TopologyState> states;
  ChannelMode mode = ChannelMode::Complex;
  SchemeFactory build;
  bool secure = true;
  double d1_claim = 0.0;
  double d2_claim = 0.0;
};

inline const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names{"wiretap-gaussian", "wiretap-mirror", "yang",  "bc-fixed",
                                              "sym-alt",          "wiretap-lattice", "int-sym-alt", "gdof",
                                              "canary"};
  return names;
}

// t1 <= 0 lets bc-fixed pick the smallest admissible T1.
inline SchemeSetup scheme_setup(const std::string& name, double alpha, int t1 = 0) {
  check_alpha(alpha);
  const double a = alpha;
  const std::vector<TopologyState> s3(3, kState1a), s4(4, kState1a);
  if (name == "wiretap-gaussian") return {name, s3, ChannelMode::Complex, build_wiretap_gaussian, true, 2.0 / 3.0, 0.0};
  if (name == "wiretap-mirror")
    return {name, std::vector<TopologyState>(3, kStatea1), ChannelMode::Complex, build_wiretap_mirror, true,
            2.0 * a / 3.0, 0.0};
  if (name == "yang") return {name, s4, ChannelMode::Complex, build_yang_baseline, true, 0.5, a / 2.0};
  if (name == "bc-fixed") {
    BcFixedOptions opt;
    opt.t1 = t1 > 0 ? t1 : bc_fixed_pick_t1(a);
    const int n = bc_fixed_slots(a, opt.t1);
    return {name,
            std::vector<TopologyState>(n, kState1a),
            ChannelMode::Complex,
            [opt](const ChannelRealization& c) { return build_bc_fixed(c, opt); },
            true,
            2.0 / (3.0 + a),
            a * (1.0 + a) / (3.0 + a)};
  }
  if (name == "sym-alt") return {name, sym_alt_states(), ChannelMode::Complex, build_sym_alt, true, (1.0 + a) / 4.0, 0.5};
  if (name == "wiretap-lattice")
    return {name, s3, ChannelMode::Integer, build_wiretap_lattice, true, 1.0 - a / 3.0, 0.0};
  if (name == "int-sym-alt") return {name, sym_alt_states(), ChannelMode::Integer, build_int_sym_alt, true, 0.5, 0.5};
  if (name == "gdof")
    return {name, s3, ChannelMode::Integer, build_gdof_no_secrecy, false, 1.0 - a / 3.0, 2.0 * a / 3.0};
  if (name == "canary") return {name, {kState11}, ChannelMode::Complex, build_canary, false, 1.0, 0.0};
  throw Error("unknown scheme '" + name + "'");
}

// Topology each scheme is built for; a sweep's profile must agree with it.
inline std::string scheme_profile(const std::string& name) {
  if (name == "wiretap-mirror") return "a1";
  if (name == "sym-alt" || name == "int-sym-alt") return "sym";
  if (name == "canary") return "11";
  scheme_setup(name, 0.5);  // throws on unknown names
  return "1a";
}

inline constexpr int kGenericRedraws = 1000;

// Integer draws are conditioned on every coefficient being nonzero: a zero
// entry deletes a link that the schemes need, which is a measure-zero event
// for the generic channels the rate claims refer to.
inline ChannelRealization draw_realization(const SchemeSetup& s, double alpha, std::uint64_t seed) {
  const int n = static_cast<int>(s.states.size());
  if (s.mode == ChannelMode::Complex) return draw_channels(n, s.states, 2.0, alpha, seed, s.mode);
  for (int attempt = 0; attempt < kGenericRedraws; ++attempt) {
    auto ch = draw_channels(n, s.states, 2.0, alpha, mix_seed(seed, static_cast<std::uint64_t>(attempt)), s.mode);
    bool generic = true;
    for (int t = 0; t < n && generic; ++t)
      for (int k = 0; k < 2; ++k)
        if (ch.h[t](k) == cplx(0.0) || ch.g[t](k) == cplx(0.0)) generic = false;
    if (generic) return ch;
  }
  throw Error("no generic integer realization within the redraw budget");
}

// ---- sweeps -------------------------------------------------------------

struct SweepConfig {
  std::string scheme = "wiretap-gaussian";
  double alpha = 0.5;
  std::string profile;  // empty means the scheme's own
  std::vector<double> rho_db = parse_range("60:120:10");
  int trials = 100;
  std::uint64_t seed = 1;
  int t1 = 0;
  std::string out;

  void validate() const {
    check_alpha(alpha);
    if (rho_db.size() < 4) throw Error("rho grid needs at least 4 points");
    for (size_t i = 1; i < rho_db.size(); ++i)
      if (!(rho_db[i] > rho_db[i - 1])) throw Error("rho grid must be strictly increasing");
    if (!(db_to_linear(rho_db.front()) > 1.0)) throw Error("rho grid must start above 0 dB");
    if (trials < 10) throw Error("trials must be at least 10");
    if (!profile.empty() && profile != scheme_profile(scheme))
      throw Error("scheme '" + scheme + "' runs on profile '" + scheme_profile(scheme) + "', not '" + profile + "'");
  }
};

struct Series {
  std::string group;
  int rx = 1;  // decoding receiver, or eavesdropper for leak series
  bool leak = false;
  GroupUse use = GroupUse::Payload;
  double ledger = 0.0;
  std::vector<double> mean_bits;  // per slot, per rho point
  SlopeFit fit;

  std::string label() const { return group + "@rx" + std::to_string(rx); }
};

struct RateReport {
  std::string scheme;
  double alpha = 0.0;
  int slots = 0;
  std::vector<double> rho_db;
  std::vector<Series> series;
  // trial-major raw values: bits[trial][series][rho]
  std::vector<std::vector<std::vector<double>>> bits;

  double dof(int rx) const {
    double d = 0.0;
    for (const auto& s : series)
      if (!s.leak && s.rx == rx && s.use == GroupUse::Payload) d += s.fit.slope;
    return d;
  }

  double max_leak_slope() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& s : series)
      if (s.leak) m = std::max(m, s.fit.slope);
    return m;
  }

  const Series& find(const std::string& group, int rx, bool leak) const {
    for (const auto& s : series)
      if (s.group == group && s.rx == rx && s.leak == leak) return s;
    throw Error("report has no series '" + group + "'");
  }

  // scheme,alpha,rho_db,trial,symbol_group,mi_bits,leak_bits (bits per slot)
  std::string csv() const {
    std::ostringstream os;
    os << "scheme,alpha,rho_db,trial,symbol_group,mi_bits,leak_bits\n";
    for (size_t t = 0; t < bits.size(); ++t)
      for (size_t r = 0; r < rho_db.size(); ++r)
        for (size_t s = 0; s < series.size(); ++s) {
          const std::string v = fmt_num(bits[t][s][r]);
          os << scheme << ',' << fmt_num(alpha) << ',' << fmt_num(rho_db[r]) << ',' << t << ','
             << (series[s].leak ? "leak:" : "") << series[s].label() << ',' << (series[s].leak ? "" : v) << ','
             << (series[s].leak ? v : "") << '\n';
        }
    return os.str();
  }

  // One line per series with the fitted slope and its subrange.
  std::string summary_csv() const {
    std::ostringstream os;
    os << "scheme,alpha,symbol_group,kind,ledger,slope,stderr,log2rho_lo,log2rho_hi\n";
    for (const auto& s : series)
      os << scheme << ',' << fmt_num(alpha) << ',' << s.label() << ','
         << (s.leak ? "leak" : (s.use == GroupUse::Payload ? "payload" : "certify")) << ','
         << fmt_num(s.leak ? 0.0 : s.ledger) << ',' << fmt_num(s.fit.slope) << ',' << fmt_num(s.fit.stderr_) << ','
         << fmt_num(s.fit.x_lo) << ',' << fmt_num(s.fit.x_hi) << '\n';
    return os.str();
  }
};

inline RateReport run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const SchemeSetup setup = scheme_setup(cfg.scheme, cfg.alpha, cfg.t1);
  std::vector<double> rho;
  for (double db : cfg.rho_db) rho.push_back(db_to_linear(db));

  RateReport rep;
  rep.scheme = cfg.scheme;
  rep.alpha = cfg.alpha;
  rep.rho_db = cfg.rho_db;
  rep.bits.resize(static_cast<size_t>(cfg.trials));
  std::vector<Series> layout(1);
  parallel_for(cfg.trials, [&](int trial) {
    try {
      const auto ch = draw_realization(setup, cfg.alpha, mix_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
      auto& out = rep.bits[static_cast<size_t>(trial)];
      for (size_t r = 0; r < rho.size(); ++r) {
        const LinearScheme s = setup.build(ch.at_rho(rho[r]));
        const size_t count = s.groups.size() + s.leaks.size();
        if (out.empty()) out.assign(count, std::vector<double>(rho.size(), 0.0));
        size_t i = 0;
        for (const auto& g : s.groups) out[i++][r] = s.group_bits(g) / s.n;
        for (const auto& l : s.leaks) out[i++][r] = s.leak_bits(l) / s.n;
      }
    } catch (const std::exception& e) {
      throw Error("trial " + std::to_string(trial) + ": " + e.what());
    }
  });

  // Series layout is a property of the scheme, not the channels.
  const auto probe = draw_realization(setup, cfg.alpha, mix_seed(cfg.seed, 0));
  const LinearScheme s = setup.build(probe.at_rho(rho.back()));
  rep.slots = s.n;
  for (const auto& g : s.groups) rep.series.push_back({g.name, g.rx, false, g.use, g.ledger_dof, {}, {}});
  for (const auto& l : s.leaks) rep.series.push_back({l.name, l.eaves, true, GroupUse::Payload, 0.0, {}, {}});
  for (size_t i = 0; i < rep.series.size(); ++i) {
    auto& ser = rep.series[i];
    ser.mean_bits.assign(rho.size(), 0.0);
    for (const auto& t : rep.bits)
      for (size_t r = 0; r < rho.size(); ++r) ser.mean_bits[r] += t[i][r];
    for (double& b : ser.mean_bits) b /= cfg.trials;
    ser.fit = fit_top_half(rho, ser.mean_bits);
  }
  return rep;
}

// Largest fitted leakage slope over the scheme's secret groups.
inline double leakage_slope(const std::string& scheme, double alpha, const std::vector<double>& rho_db, int trials,
                            std::uint64_t seed) {
  SweepConfig cfg;
  cfg.scheme = scheme;
  cfg.alpha = alpha;
  cfg.rho_db = rho_db;
  cfg.trials = trials;
  cfg.seed = seed;
  const auto rep = run_sweep(cfg);
  if (std::none_of(rep.series.begin(), rep.series.end(), [](const Series& s) { return s.leak; }))
    throw Error("scheme '" + scheme + "' declares no secrets");
  return rep.max_leak_slope();
}

// ---- verification suite -------------------------------------------------

inline constexpr double kRateTol = 0.03;
inline constexpr double kLeakTol = 0.02;

struct Check {
  std::string name;
  double alpha = 0.0;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  double margin = 0.0;  // >= 0 iff pass, in the check's own units
};

struct VerifySummary {
  std::vector<Check> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  int failures() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
  }
  std::string csv() const {
    std::ostringstream os;
    os << "check,alpha,pass,measured,expected,margin\n";
    for (const auto& c : checks)
      os << c.name << ',' << fmt_num(c.alpha) << ',' << (c.pass ? 1 : 0) << ',' << fmt_num(c.measured) << ','
         << fmt_num(c.expected) << ',' << fmt_num(c.margin) << '\n';
    return os.str();
  }
};

struct VerifyOptions {
  int trials = 100;
  std::uint64_t seed = 1;
  std::vector<double> rho_db = parse_range("60:120:10");
  // Slope sweeps run here rather than on the geometry grid: below about
  // alpha = 0.25 the lattice codebook scaling keeps rho^alpha under the
  // asymptotic regime anywhere on a 120 dB grid.
  std::vector<double> slope_alphas{0.25, 0.5, 0.75};
  bool schemes = true;  // false skips the slope sweeps (fast geometry-only run)
};

namespace detail {

inline double polygon_area(const std::vector<Point>& v) {
  double a = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    a += p.d1 * q.d2 - q.d1 * p.d2;
  }
  return std::abs(a) / 2.0;
}

inline bool on_boundary(const DofRegion& r, const Point& p) {
  if (!contains(r, p)) return false;
  for (const auto& h : with_axes(r))
    if (std::abs(h.eval(p)) <= kRegionTol * std::max({1.0, std::abs(h.a1), std::abs(h.a2)})) return true;
  return false;
}

// Every expected point is a vertex. A zero-area region may legitimately
// merge expected corners, in which case boundary membership suffices.
inline bool has_vertices(const DofRegion& r, const std::vector<Point>& expected, bool exact_set) {
  const auto v = vertices(r);
  const bool flat = v.size() < 3 || polygon_area(v) < 1e-12;
  for (const auto& p : expected) {
    const bool vert = std::any_of(v.begin(), v.end(), [&](const Point& q) { return near(p, q); });
    if (!vert && !(flat && on_boundary(r, p))) return false;
  }
  if (exact_set && !flat)
    for (const auto& q : v) {
      if (near(q, {0.0, 0.0})) continue;
      if (std::none_of(expected.begin(), expected.end(), [&](const Point& p) { return near(p, q); })) return false;
    }
  return true;
}

inline Check boolean_check(std::string name, double alpha, bool ok) {
  return {std::move(name), alpha, ok, ok ? 1.0 : 0.0, 1.0, ok ? 0.0 : -1.0};
}

inline Check equal_check(std::string name, double alpha, double measured, double expected, double tol) {
  const double margin = tol - std::abs(measured - expected);
  return {std::move(name), alpha, margin >= 0.0, measured, expected, margin};
}

inline Check upper_check(std::string name, double alpha, double measured, double bound) {
  return {std::move(name), alpha, measured <= bound, measured, bound, bound - measured};
}

}  // namespace detail

// Region geometry and bound/achievability consistency at one alpha.
inline std::vector<Check> region_checks(double a) {
  using detail::boolean_check;
  using detail::equal_check;
  std::vector<Check> out;
  const auto p1a = TopologyProfile::named("1a", a);
  const auto psym = TopologyProfile::named("sym", a);
  const auto outer1a = bc_outer(p1a), outer_sym = bc_outer(psym);
  out.push_back(boolean_check("region.outer_vertex", a, detail::has_vertices(outer1a, {{1.0 - a / 2.0, a / 2.0}}, false)));
  out.push_back(boolean_check("region.yang_vertices", a,
                              detail::has_vertices(yang_inner(a), {{2.0 / 3.0, 0.0}, {0.5, a / 2.0}, {0.0, 2.0 * a / 3.0}}, true)));
  out.push_back(boolean_check("region.prop2_vertex", a,
                              detail::has_vertices(prop2_inner(a), {{2.0 / (3.0 + a), a * (1.0 + a) / (3.0 + a)}}, false)));
  out.push_back(boolean_check("region.sym_alt_vertex", a,
                              detail::has_vertices(sym_alt_inner(a), {{(1.0 + a) / 4.0, 0.5}}, false)));
  out.push_back(boolean_check("region.int_sym_alt_vertex", a,
                              detail::has_vertices(integer_sym_alt_inner(a), {{0.5, 0.5}}, false)));
  out.push_back(boolean_check(
      "region.gdof_vertices", a,
      detail::has_vertices(gdof_fixed(a), {{1.0, 0.0}, {1.0 - a / 3.0, 2.0 * a / 3.0}, {1.0 - a, a}, {0.0, a}}, true)));

  out.push_back(boolean_check("inclusion.prop2_in_outer", a, is_subset(prop2_inner(a), outer1a)));
  out.push_back(boolean_check("inclusion.yang_in_outer", a, is_subset(yang_inner(a), outer1a)));
  out.push_back(boolean_check("inclusion.sym_alt_in_outer", a, is_subset(sym_alt_inner(a), outer_sym)));
  out.push_back(boolean_check("inclusion.int_sym_alt_in_outer", a, is_subset(integer_sym_alt_inner(a), outer_sym)));
  out.push_back(boolean_check("inclusion.prop2_in_gdof", a, is_subset(prop2_inner(a), gdof_fixed(a))));

  const double sp = sum_max(prop2_inner(a)), sy = sum_max(yang_inner(a));
  const bool strict = a < 1.0 ? sp > sy + kRegionTol : std::abs(sp - sy) <= kRegionTol;
  out.push_back({"sum.prop2_vs_yang", a, strict, sp, sy, sp - sy});
  out.push_back(equal_check("sum.int_sym_alt", a, sum_max(integer_sym_alt_inner(a)), 1.0, kRegionTol));
  out.push_back(equal_check("sum.outer_sym", a, sum_max(outer_sym), 1.0, kRegionTol));
  const double upper = wiretap_upper(p1a);
  out.push_back(equal_check("equality.wiretap_upper", a, upper, 1.0 - a / 3.0, kRegionTol));
  // Integer wiretap ledger is a property of the construction, not the draw.
  const auto lat = scheme_setup("wiretap-lattice", a);
  const auto ch = draw_realization(lat, a, 1);
  out.push_back(equal_check("equality.wiretap_lattice_ledger", a, lat.build(ch.at_rho(1e6)).ledger_dof(1), upper,
                            kRegionTol));
  if (a == 1.0) {
    out.push_back(equal_check("collapse.prop2_sum", a, sp, 1.0, kRegionTol));
    out.push_back(equal_check("collapse.gdof_sum", a, sum_max(gdof_fixed(a)), 4.0 / 3.0, kRegionTol));
    const auto isa = scheme_setup("int-sym-alt", a);
    const auto s = isa.build(draw_realization(isa, a, 1).at_rho(1e6));
    out.push_back(equal_check("collapse.int_sym_alt_ledger_sum", a, s.ledger_dof(1) + s.ledger_dof(2), 1.0, kRegionTol));
    const auto gd = scheme_setup("gdof", a);
    const auto g = gd.build(draw_realization(gd, a, 1).at_rho(1e6));
    out.push_back(equal_check("collapse.gdof_ledger_sum", a, g.ledger_dof(1) + g.ledger_dof(2), 4.0 / 3.0, kRegionTol));
  }
  return out;
}

inline std::vector<Check> lemma1_checks(double a, const std::vector<double>& rho_db, std::uint64_t seed) {
  std::vector<double> rho;
  for (double db : rho_db) rho.push_back(db_to_linear(db));
  std::vector<Check> out;
  for (const std::string prof : {"11", "1a", "a1", "aa", "sym"})
    for (const std::string id : {"4a", "4b", "4c", "4d"}) {
      const auto r = lemma1_slope_eval(TopologyProfile::named(prof, a), parse_lemma1_id(id), rho, seed);
      out.push_back({"lemma1." + id + "." + prof, a, r.holds, r.lhs_slope, r.rhs_slope, r.margin() + kLemmaTol});
    }
  return out;
}

// Ledger-vs-MI agreement for every group and the leakage bound for every
// secret group of one scheme.
inline std::vector<Check> scheme_checks(const std::string& scheme, double a, const VerifyOptions& opt) {
  SweepConfig cfg;
  cfg.scheme = scheme;
  cfg.alpha = a;
  cfg.rho_db = opt.rho_db;
  cfg.trials = opt.trials;
  cfg.seed = opt.seed;
  const auto rep = run_sweep(cfg);
  std::vector<Check> out;
  for (const auto& s : rep.series) {
    if (s.leak)
      out.push_back(detail::upper_check("leak." + scheme + "." + s.label(), a, s.fit.slope, kLeakTol));
    else
      out.push_back(detail::equal_check("ledger." + scheme + "." + s.label(), a, s.fit.slope, s.ledger, kRateTol));
  }
  return out;
}

inline bool scheme_defined_at(const std::string& scheme, double a) {
  if (scheme == "bc-fixed") {
    try {
      bc_fixed_pick_t1(a);
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

inline VerifySummary verify_all(const std::vector<double>& alpha_grid, const VerifyOptions& opt = {}) {
  if (alpha_grid.empty()) throw Error("alpha grid is empty");
  for (double a : alpha_grid) check_alpha(a);
  for (double a : opt.slope_alphas) check_alpha(a);
  VerifySummary sum;
  for (double a : alpha_grid) {
    for (auto& c : region_checks(a)) sum.checks.push_back(std::move(c));
    for (auto& c : lemma1_checks(a, opt.rho_db, opt.seed)) sum.checks.push_back(std::move(c));
  }
  if (opt.schemes) {
    std::vector<std::pair<std::string, double>> jobs;
    for (double a : opt.slope_alphas)
      for (const auto& name : scheme_names())
        if (name != "canary" && scheme_defined_at(name, a)) jobs.emplace_back(name, a);
    for (const auto& [name, a] : jobs)
      for (auto& c : scheme_checks(name, a, opt)) sum.checks.push_back(std::move(c));
    // Canary: unprotected transmission must be caught by the leakage check.
    const double canary = leakage_slope("canary", 0.5, opt.rho_db, opt.trials, opt.seed);
    sum.checks.push_back({"canary.leak_detected", 0.5, canary > 0.5, canary, 0.5, canary - 0.5});
  }
  return sum;
}

// ---- figure data --------------------------------------------------------

inline std::string vertex_csv(const std::vector<DofRegion>& regions, double alpha) {
  std::ostringstream os;
  os << "bound_name,alpha,vertex_index,d1,d2\n";
  for (const auto& r : regions) {
    const auto v = vertices(r);
    for (size_t i = 0; i < v.size(); ++i)
      os << r.name << ',' << fmt_num(alpha) << ',' << i << ',' << fmt_num(v[i].d1) << ',' << fmt_num(v[i].d2) << '\n';
  }
  return os.str();
}

inline std::string region_summary_csv(const std::vector<DofRegion>& regions, double alpha) {
  std::ostringstream os;
  os << "bound_name,alpha,sum_max,d1_axis_max,d2_axis_max\n";
  for (const auto& r : regions)
    os << r.name << ',' << fmt_num(alpha) << ',' << fmt_num(sum_max(r)) << ',' << fmt_num(d1_axis_max(r)) << ','
       << fmt_num(d2_axis_max(r)) << '\n';
  return os.str();
}

inline const std::vector<int>& figure_ids() {
  static const std::vector<int> ids{3, 4, 6, 7, 8};
  return ids;
}

// Sum curves of the alpha sweep at one alpha. yang_corner is d1+d2 at the
// (1/2, alpha/2) corner, which is what that curve traces.
struct SumCurves {
  double yang_corner, fixed_inner, sym_alt, gdof_fixed;
};

inline SumCurves sum_curves(double a) {
  return {0.5 + a / 2.0, sum_max(prop2_inner(a)), sum_max(sym_alt_inner(a)), sum_max(gdof_fixed(a))};
}

// Ids 3, 4, 6, 7 take one alpha; id 8 sweeps `alpha_sweep`.
inline std::string figure_data(int id, double alpha, const std::vector<double>& alpha_sweep = parse_range("0:1:0.05")) {
  switch (id) {
    case 3: {
      auto outer = bc_outer(TopologyProfile::named("1a", alpha));
      return vertex_csv({outer, yang_inner(alpha), prop2_inner(alpha)}, alpha);
    }
    case 4:
      return vertex_csv({bc_outer(TopologyProfile::named("sym", alpha)), sym_alt_inner(alpha)}, alpha);
    case 6:
      return vertex_csv({bc_outer(TopologyProfile::named("sym", alpha)), integer_sym_alt_inner(alpha)}, alpha);
    case 7:
      return vertex_csv({gdof_fixed(alpha), prop2_inner(alpha)}, alpha);
    case 8: {
      std::ostringstream os;
      os << "alpha,yang_corner,fixed_inner,sym_alt,gdof_fixed\n";
      for (double a : alpha_sweep) {
        const auto c = sum_curves(a);
        os << fmt_num(a) << ',' << fmt_num(c.yang_corner) << ',' << fmt_num(c.fixed_inner) << ','
           << fmt_num(c.sym_alt) << ',' << fmt_num(c.gdof_fixed) << '\n';
      }
      return os.str();
    }
    default:
      throw Error("unknown figure id " + std::to_string(id));
  }
}

}  // namespace gsdof

#endif  // GSDOF_EXPERIMENTS_HPP_
