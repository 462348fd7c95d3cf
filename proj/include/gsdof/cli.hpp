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

#ifndef GSDOF_CLI_HPP_
#define GSDOF_CLI_HPP_

#include <CLI11.hpp>

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gsdof/common.hpp"
#include "gsdof/experiments.hpp"
#include "gsdof/regions.hpp"
#include "gsdof/topology.hpp"

namespace gsdof {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// A named state ("11", "1a", "a1", "aa", "sym") or four comma-separated
// fractions in the order 11,1a,a1,aa.
inline TopologyProfile parse_profile(const std::string& text, double alpha) {
  if (text.find(',') == std::string::npos) return TopologyProfile::named(text, alpha);
  std::vector<double> f;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw Error("profile fraction '" + tok + "' is not a number");
    f.push_back(v);
  }
  if (f.size() != 4) throw Error("profile needs four fractions (11,1a,a1,aa)");
  TopologyProfile p{alpha, f[0], f[1], f[2], f[3]};
  p.validate();
  return p;
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) out.push_back(tok);
  return out;
}

inline std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : split_list(text)) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw Error("'" + tok + "' is not a number");
    out.push_back(v);
  }
  return out;
}

// `key = value` lines, '#' starts a comment. Each entry becomes `--key value`;
// boolean keys become a bare `--key` when true and are dropped when false.
inline std::vector<std::string> read_config(const std::string& path, const std::vector<std::string>& flags) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read config '" + path + "'");
  auto trim = [](std::string x) {
    const auto b = x.find_first_not_of(" \t\r");
    const auto e = x.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  };
  std::vector<std::string> args;
  int lineno = 0;
  for (std::string line; std::getline(f, line);) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") throw Error(path + ":" + std::to_string(lineno) + ": bad key");
    if (std::find(flags.begin(), flags.end(), key) != flags.end()) {
      if (value == "true" || value == "1") args.push_back("--" + key);
      else if (value != "false" && value != "0")
        throw Error(path + ":" + std::to_string(lineno) + ": '" + key + "' takes true or false");
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

// Splices config entries in front of the subcommand's own flags, so the
// command line wins under take-last option semantics.
inline std::vector<std::string> expand_config(int argc, const char* const* argv,
                                              const std::vector<std::string>& subcommands,
                                              const std::vector<std::string>& flags) {
  std::vector<std::string> in(argv + 1, argv + argc), out;
  size_t sub = in.size();
  for (size_t i = 0; i < in.size(); ++i)
    if (std::find(subcommands.begin(), subcommands.end(), in[i]) != subcommands.end()) {
      sub = i;
      break;
    }
  std::vector<std::string> rest, cfg;
  for (size_t i = sub + 1; i < in.size(); ++i) {
    if (in[i] == "--config") {
      if (i + 1 >= in.size()) throw Error("--config needs a file");
      cfg = read_config(in[++i], flags);
    } else if (in[i].rfind("--config=", 0) == 0) {
      cfg = read_config(in[i].substr(9), flags);
    } else {
      rest.push_back(in[i]);
    }
  }
  out.assign(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(std::min(sub + 1, in.size())));
  out.insert(out.end(), cfg.begin(), cfg.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

namespace detail {

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("write to '" + path + "' failed");
}

inline void alpha_option(CLI::App* app, double& alpha) {
  app->add_option("--alpha", alpha, "weak-link exponent in [0,1]")->check(CLI::Range(0.0, 1.0));
}

}  // namespace detail

struct CliState {
  double alpha = 0.5;
  std::string profile = "1a";
  std::string which;
  std::string out;
  std::string summary_out;
  std::string scheme = "wiretap-gaussian";
  std::string sim_profile;
  std::string rho_db = "60:120:10";
  int trials = 100;
  std::uint64_t seed = 1;
  int t1 = 0;
  std::string alpha_grid = "0:1:0.05";
  std::string slope_alphas = "0.25,0.5,0.75";
  bool geometry_only = false;
  int figure = 8;
  std::string alpha_sweep = "0:1:0.05";
};

inline int run_region(const CliState& s, std::ostream& out) {
  const auto prof = parse_profile(s.profile, s.alpha);
  const auto names = s.which.empty() ? bound_names() : split_list(s.which);
  std::vector<DofRegion> regions;
  for (const auto& n : names) regions.push_back(region_by_name(n, prof));
  detail::emit(vertex_csv(regions, s.alpha), s.out, out);
  if (!s.summary_out.empty()) detail::emit(region_summary_csv(regions, s.alpha), s.summary_out, out);
  return kExitOk;
}

inline int run_simulate(const CliState& s, std::ostream& out) {
  SweepConfig cfg;
  cfg.scheme = s.scheme;
  cfg.alpha = s.alpha;
  cfg.profile = s.sim_profile;
  cfg.rho_db = parse_range(s.rho_db);
  cfg.trials = s.trials;
  cfg.seed = s.seed;
  cfg.t1 = s.t1;
  cfg.out = s.out;
  const auto rep = run_sweep(cfg);
  detail::emit(rep.csv(), cfg.out, out);
  if (!s.summary_out.empty()) detail::emit(rep.summary_csv(), s.summary_out, out);
  if (!cfg.out.empty()) {
    for (const auto& ser : rep.series)
      out << (ser.leak ? "leak " : "rate ") << ser.label() << " slope=" << fmt_num(ser.fit.slope)
          << " stderr=" << fmt_num(ser.fit.stderr_) << (ser.leak ? "" : " ledger=" + fmt_num(ser.ledger)) << '\n';
    out << "d1=" << fmt_num(rep.dof(1)) << " d2=" << fmt_num(rep.dof(2)) << '\n';
  }
  return kExitOk;
}

inline int run_verify(const CliState& s, std::ostream& out) {
  VerifyOptions opt;
  opt.trials = s.trials;
  opt.seed = s.seed;
  opt.rho_db = parse_range(s.rho_db);
  opt.schemes = !s.geometry_only;
  opt.slope_alphas = parse_number_list(s.slope_alphas);
  const auto sum = verify_all(parse_range(s.alpha_grid), opt);
  for (const auto& c : sum.checks)
    out << (c.pass ? "PASS " : "FAIL ") << c.name << " alpha=" << fmt_num(c.alpha) << " measured=" << fmt_num(c.measured)
        << " expected=" << fmt_num(c.expected) << " margin=" << fmt_num(c.margin) << '\n';
  out << sum.checks.size() - sum.failures() << '/' << sum.checks.size() << " checks passed\n";
  if (!s.out.empty()) detail::emit(sum.csv(), s.out, out);
  return sum.all_pass() ? kExitOk : kExitCheckFailed;
}

inline int run_figure(const CliState& s, std::ostream& out) {
  detail::emit(figure_data(s.figure, s.alpha, parse_range(s.alpha_sweep)), s.out, out);
  return kExitOk;
}

inline std::string help_footer() {
  return "Schemes: " + detail::join(scheme_names(), ", ") + "\nBounds: " + detail::join(bound_names(), ", ") +
         "\nProfiles: 11, 1a, a1, aa, sym, or four fractions l11,l1a,la1,laa\n"
         "Every subcommand accepts --config FILE with one `key = value` per line and # comments;\n"
         "flags given on the command line take precedence.\n"
         "Exit codes: 0 success, 1 a verification check failed, 2 usage error.";
}

// Returns the process exit code. Output goes to `out`, diagnostics to `err`.
inline int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
                              std::ostream& err = std::cerr) {
  CliState s;
  CLI::App app{"Secure degrees-of-freedom toolkit for the two-user MISO broadcast channel with delayed CSIT",
               "gsdof"};
  app.footer(help_footer());
  app.require_subcommand(1);

  auto* region = app.add_subcommand("region", "emit DoF region vertices as CSV");
  auto* simulate = app.add_subcommand("simulate", "sweep a scheme over rho and fit DoF slopes");
  auto* verify = app.add_subcommand("verify", "run the full consistency suite; exit 0 iff all checks pass");
  auto* figure = app.add_subcommand("figure", "emit figure data (3, 4, 6, 7, 8) as CSV");

  std::string config_path;  // consumed by expand_config; listed for --help
  for (auto* sub : {region, simulate, verify, figure}) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--config", config_path, "read `key = value` defaults from FILE");
    sub->add_option("--out", s.out, "output CSV path (stdout when omitted)");
  }

  detail::alpha_option(region, s.alpha);
  region->add_option("--profile", s.profile, "topology profile");
  region->add_option("--which", s.which, "comma-separated bound names (default: all)");
  region->add_option("--summary-out", s.summary_out, "summary CSV path");

  detail::alpha_option(simulate, s.alpha);
  simulate->add_option("--scheme", s.scheme, "scheme name")->check(CLI::IsMember(scheme_names()));
  simulate->add_option("--profile", s.sim_profile, "expected topology profile (default: the scheme's own)");
  simulate->add_option("--rho-db", s.rho_db, "rho grid start:stop:step in dB");
  simulate->add_option("--trials", s.trials, "channel realizations (>= 10)");
  simulate->add_option("--seed", s.seed, "base seed");
  simulate->add_option("--t1", s.t1, "bc-fixed phase length (0 picks the smallest admissible)");
  simulate->add_option("--summary-out", s.summary_out, "per-group slope CSV path");

  verify->add_option("--alpha-grid", s.alpha_grid, "alpha grid start:stop:step for geometry and entropy-slope checks");
  verify->add_option("--slope-alphas", s.slope_alphas, "comma-separated alphas for scheme sweeps");
  verify->add_option("--rho-db", s.rho_db, "rho grid start:stop:step in dB");
  verify->add_option("--trials", s.trials, "channel realizations per sweep (>= 10)");
  verify->add_option("--seed", s.seed, "base seed");
  verify->add_flag("--geometry-only", s.geometry_only, "skip the scheme sweeps")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  detail::alpha_option(figure, s.alpha);
  figure->add_option("--id", s.figure, "figure id")->check(CLI::IsMember(figure_ids()));
  figure->add_option("--alpha-sweep", s.alpha_sweep, "alpha sweep start:stop:step for id 8");

  try {
    auto args = expand_config(argc, argv, {"region", "simulate", "verify", "figure"}, {"geometry-only"});
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (*region) return run_region(s, out);
    if (*simulate) return run_simulate(s, out);
    if (*verify) return run_verify(s, out);
    return run_figure(s, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace gsdof

#endif  // GSDOF_CLI_HPP_
