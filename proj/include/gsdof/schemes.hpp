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

#ifndef GSDOF_SCHEMES_HPP_
#define GSDOF_SCHEMES_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gsdof/common.hpp"
#include "gsdof/computation_rate.hpp"
#include "gsdof/gaussian_mi.hpp"
#include "gsdof/quantizer.hpp"
#include "gsdof/topology.hpp"

namespace gsdof {

enum class Role { Secret1, Secret2, Noise, Common };

// Variance is rho^exponent; exponent <= 0 keeps slot power within budget.
struct Symbol {
  std::string name;
  std::string group;
  Role role = Role::Noise;
  double exponent = 0.0;
  bool lattice = false;
};

// One scalar output seen by a receiver: row . symbols + noise.
// Physical rows are channel outputs; virtual rows stand for decoded digital
// side information (quantized outputs, lattice keys).
struct Observation {
  int rx = 1;
  std::string label;
  CRow row;
  double noise_var = 1.0;
  bool physical = true;
};

enum class GroupKind { Gaussian, Lattice };

// Rate groups either carry secure payload or only certify that a layer
// (common message, lattice key) is decodable before it is subtracted.
enum class GroupUse { Payload, Certify };

struct LatticeEquation {
  std::string label;
  RateTerm term;
};

struct RateGroup {
  std::string name;
  int rx = 1;
  GroupKind kind = GroupKind::Gaussian;
  GroupUse use = GroupUse::Payload;
  std::vector<int> targets;
  std::vector<int> known;
  double ledger_dof = 0.0;  // claimed slope, per slot
  std::vector<LatticeEquation> equations;
  int streams = 1;  // lattice codewords sharing the bottleneck rate
};

struct LeakGroup {
  std::string name;
  int eaves = 2;
  std::vector<int> secrets;
  std::vector<int> known;
};

enum class StepKind { Given, Combination, Invert };

struct DecodeStep {
  int rx = 1;
  StepKind kind = StepKind::Invert;
  std::vector<int> targets;  // Given / Invert
  CRow combination;          // Combination: exact value of combination . s
};

struct LinearScheme {
  std::string kind;
  int n = 0;
  double rho = 0.0;
  double alpha = 0.0;
  std::vector<TopologyState> states;
  std::vector<Symbol> symbols;
  std::vector<CMat> slots;  // 2 x K input map per slot, normalized
  std::vector<Observation> obs;
  std::vector<RateGroup> groups;
  std::vector<LeakGroup> leaks;
  std::vector<DecodeStep> plan;

  int num_symbols() const { return static_cast<int>(symbols.size()); }

  Eigen::VectorXd variances() const {
    Eigen::VectorXd v(num_symbols());
    for (int k = 0; k < num_symbols(); ++k) v(k) = std::pow(rho, symbols[k].exponent);
    return v;
  }

  GaussianSystem system(int rx) const {
    std::vector<const Observation*> mine;
    for (const auto& o : obs)
      if (o.rx == rx) mine.push_back(&o);
    GaussianSystem sys{CMat(static_cast<Eigen::Index>(mine.size()), num_symbols()), variances(),
                       Eigen::VectorXd(static_cast<Eigen::Index>(mine.size()))};
    for (size_t i = 0; i < mine.size(); ++i) {
      sys.rows.row(static_cast<Eigen::Index>(i)) = mine[i]->row;
      sys.noise_var(static_cast<Eigen::Index>(i)) = mine[i]->noise_var;
    }
    return sys;
  }

  const RateGroup& group(const std::string& name, int rx) const {
    for (const auto& g : groups)
      if (g.name == name && g.rx == rx) return g;
    throw Error("scheme '" + kind + "' has no group '" + name + "' at receiver " + std::to_string(rx));
  }

  std::vector<int> symbols_in(const std::string& group) const {
    std::vector<int> out;
    for (int k = 0; k < num_symbols(); ++k)
      if (symbols[k].group == group) out.push_back(k);
    return out;
  }

  // Total bits of the group over the whole block.
  double group_bits(const RateGroup& g) const {
    if (g.kind == GroupKind::Gaussian) return conditional_mi(system(g.rx), g.targets, g.known);
    if (g.equations.empty()) throw Error("lattice group '" + g.name + "' has no equations");
    double r = std::numeric_limits<double>::infinity();
    for (const auto& e : g.equations)
      r = std::min(r, computation_rate(e.term.h, e.term.a, e.term.rho_eff, e.term.interference_power));
    return static_cast<double>(g.streams) * r;
  }

  double leak_bits(const LeakGroup& l) const { return conditional_mi(system(l.eaves), l.secrets, l.known); }

  // Claimed secure DoF at a receiver: sum of payload ledgers.
  double ledger_dof(int rx) const {
    double d = 0.0;
    for (const auto& g : groups)
      if (g.rx == rx && g.use == GroupUse::Payload) d += g.ledger_dof;
    return d;
  }
};

// ---- builder plumbing ---------------------------------------------------

namespace detail {

class SchemeBuilder {
 public:
  SchemeBuilder(const ChannelRealization& ch, std::string kind) : ch_(ch) {
    s_.kind = std::move(kind);
    s_.n = ch.n;
    s_.rho = ch.rho;
    s_.alpha = ch.alpha;
    s_.states = ch.states;
  }

  int add(const std::string& name, const std::string& group, Role role, double exponent = 0.0,
          bool lattice = false) {
    if (!s_.slots.empty()) throw Error("symbols must be declared before slots");
    s_.symbols.push_back({name, group, role, exponent, lattice});
    return static_cast<int>(s_.symbols.size()) - 1;
  }

  std::vector<int> add_many(const std::string& prefix, int count, const std::string& group, Role role,
                            double exponent = 0.0, bool lattice = false) {
    std::vector<int> ids;
    for (int i = 0; i < count; ++i) ids.push_back(add(prefix + std::to_string(i + 1), group, role, exponent, lattice));
    return ids;
  }

  int k() const { return s_.num_symbols(); }

  CRow unit(int sym) const {
    CRow r = CRow::Zero(k());
    r(sym) = 1.0;
    return r;
  }

  CRow zero() const { return CRow::Zero(k()); }

  static CMat on_antenna1(const CRow& r) {
    CMat x = CMat::Zero(2, r.cols());
    x.row(0) = r;
    return x;
  }

  CMat pair(int a, int b) const {
    CMat x = CMat::Zero(2, k());
    x(0, a) = 1.0;
    x(1, b) = 1.0;
    return x;
  }

  // Scales the map so sum_k ||x[:,k]||^2 <= 1 with unit symbol variances;
  // the factor never depends on rho.
  const CMat& slot(CMat x) {
    if (x.rows() != 2 || x.cols() != k()) throw Error("slot map has wrong shape");
    const double p = x.squaredNorm();
    if (p > 1.0) x /= std::sqrt(p);
    s_.slots.push_back(std::move(x));
    return s_.slots.back();
  }

  int t() const { return static_cast<int>(s_.slots.size()); }

  // Noiseless unscaled outputs of an already-sent slot; the transmitter
  // reconstructs these once the slot's channel is fed back.
  CRow rx1_clean(int slot) const {
    require_past(slot);
    return ch_.h[slot] * s_.slots[slot];
  }
  CRow rx2_clean(int slot) const {
    require_past(slot);
    return ch_.g[slot] * s_.slots[slot];
  }

  // Channel outputs with rho scaling, as seen by each receiver.
  CRow y_row(int slot) const { return std::sqrt(std::pow(ch_.rho, ch_.a1(slot))) * rx1_clean(slot); }
  CRow z_row(int slot) const { return std::sqrt(std::pow(ch_.rho, ch_.a2(slot))) * rx2_clean(slot); }

  double power(const CRow& r) const {
    const auto v = s_.variances();
    double p = 0.0;
    for (int i = 0; i < k(); ++i) p += std::norm(r(i)) * v(i);
    return p;
  }

  void physical_outputs() {
    if (t() != ch_.n) throw Error("scheme '" + s_.kind + "' filled " + std::to_string(t()) + " of " +
                                  std::to_string(ch_.n) + " slots");
    for (int i = 0; i < ch_.n; ++i) {
      s_.obs.push_back({1, "y" + std::to_string(i + 1), y_row(i), 1.0, true});
      s_.obs.push_back({2, "z" + std::to_string(i + 1), z_row(i), 1.0, true});
    }
  }

  // Quantized side information of received exponent `exponent`, multicast to
  // both receivers; its distortion is the smooth quantizer bound.
  void quantized(const std::string& label, const CRow& row, double exponent) {
    const double p = power(row);
    if (p <= 0.0) return;
    const double d = UniformQuantizer::distortion_bound(p, ch_.rho, exponent);
    for (int rx : {1, 2}) s_.obs.push_back({rx, "q:" + label, row, d, false});
  }

  void virtual_obs(int rx, const std::string& label, const CRow& row, double noise_var = 1.0) {
    s_.obs.push_back({rx, label, row, noise_var, false});
  }

  void payload(const std::string& name, int rx, std::vector<int> targets, std::vector<int> known,
               double ledger_total) {
    s_.groups.push_back({name, rx, GroupKind::Gaussian, GroupUse::Payload, std::move(targets), std::move(known),
                         ledger_total / ch_.n, {}});
  }

  void certify(const std::string& name, int rx, std::vector<int> targets, std::vector<int> known,
               double ledger_total) {
    s_.groups.push_back({name, rx, GroupKind::Gaussian, GroupUse::Certify, std::move(targets), std::move(known),
                         ledger_total / ch_.n, {}});
  }

  void lattice_group(const std::string& name, int rx, GroupUse use, std::vector<int> targets,
                     std::vector<LatticeEquation> eqs, int streams, double ledger_total) {
    s_.groups.push_back({name, rx, GroupKind::Lattice, use, std::move(targets), {}, ledger_total / ch_.n,
                         std::move(eqs), streams});
  }

  void leak(const std::string& name, int eaves, std::vector<int> secrets, std::vector<int> known) {
    s_.leaks.push_back({name, eaves, std::move(secrets), std::move(known)});
  }

  void given(int rx, std::vector<int> targets) { s_.plan.push_back({rx, StepKind::Given, std::move(targets), {}}); }
  void invert(int rx, std::vector<int> targets) {
    s_.plan.push_back({rx, StepKind::Invert, std::move(targets), {}});
  }
  void combination(int rx, const CRow& row) { s_.plan.push_back({rx, StepKind::Combination, {}, row}); }

  const ChannelRealization& channels() const { return ch_; }
  LinearScheme& scheme() { return s_; }
  LinearScheme finish() { return std::move(s_); }

 private:
  void require_past(int slot) const {
    if (slot < 0 || slot >= t()) throw Error("slot " + std::to_string(slot) + " not yet transmitted");
  }

  const ChannelRealization& ch_;
  LinearScheme s_;
};

inline std::vector<int> cat(std::initializer_list<std::vector<int>> parts) {
  std::vector<int> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline void require_states(const ChannelRealization& ch, const std::vector<TopologyState>& want,
                           const std::string& who) {
  if (ch.n != static_cast<int>(want.size()))
    throw Error(who + " needs " + std::to_string(want.size()) + " slots, got " + std::to_string(ch.n));
  for (int t = 0; t < ch.n; ++t)
    if (!(ch.states[t] == want[t]))
      throw Error(who + ": slot " + std::to_string(t + 1) + " must be in state " + want[t].label());
}

inline void require_mode(const ChannelRealization& ch, ChannelMode mode, const std::string& who) {
  if (ch.mode != mode)
    throw Error(who + (mode == ChannelMode::Integer ? " needs integer channels" : " needs complex channels"));
}

inline Eigen::Index numeric_rank(const CMat& m, double rel = 1e-10) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * s(0)) ++r;
  return r;
}

}  // namespace detail

// ---- wiretap schemes ----------------------------------------------------

namespace detail {

inline LinearScheme wiretap_three_slot(const ChannelRealization& ch, const std::string& kind, double ledger) {
  SchemeBuilder b(ch, kind);
  const auto u = b.add_many("u", 2, "u", Role::Noise);
  const auto v = b.add_many("v", 2, "v", Role::Secret1);
  b.slot(b.pair(u[0], u[1]));
  b.slot(b.pair(v[0], v[1]) + SchemeBuilder::on_antenna1(b.rx1_clean(0)));
  b.slot(SchemeBuilder::on_antenna1(b.rx2_clean(1)));
  b.physical_outputs();
  b.payload("v", 1, v, {}, ledger);
  b.leak("v", 2, v, {});
  b.invert(1, v);
  return b.finish();
}

}  // namespace detail

// Artificial noise u, then v masked by receiver 1's view of u, then receiver
// 2's view of slot 2 as the second equation for v.
inline LinearScheme build_wiretap_gaussian(const ChannelRealization& ch) {
  detail::require_states(ch, {kState1a, kState1a, kState1a}, "wiretap-gaussian");
  return detail::wiretap_three_slot(ch, "wiretap-gaussian", 2.0);
}

// Same maps in state (a,1): the legitimate receiver is now the weak one and
// every symbol is only resolved at rho^alpha.
inline LinearScheme build_wiretap_mirror(const ChannelRealization& ch) {
  detail::require_states(ch, {kStatea1, kStatea1, kStatea1}, "wiretap-mirror");
  return detail::wiretap_three_slot(ch, "wiretap-mirror", 2.0 * ch.alpha);
}

// Canary: sends v in the clear. Leakage is one full symbol per slot.
inline LinearScheme build_canary(const ChannelRealization& ch) {
  detail::require_states(ch, {kState11}, "canary");
  detail::SchemeBuilder b(ch, "canary");
  const auto v = b.add_many("v", 2, "v", Role::Secret1);
  b.slot(b.pair(v[0], v[1]));
  b.physical_outputs();
  b.payload("v", 1, v, {}, 1.0);
  b.leak("v", 2, v, {});
  b.given(1, v);
  return b.finish();
}

// ---- four-slot baseline ------------------------------------------------

inline LinearScheme build_yang_baseline(const ChannelRealization& ch) {
  detail::require_states(ch, {kState1a, kState1a, kState1a, kState1a}, "yang");
  using detail::SchemeBuilder;
  SchemeBuilder b(ch, "yang");
  const auto u = b.add_many("u", 2, "u", Role::Noise);
  const auto v = b.add_many("v", 2, "v", Role::Secret1);
  const auto w = b.add_many("w", 2, "w", Role::Secret2);
  b.slot(b.pair(u[0], u[1]));
  b.slot(b.pair(v[0], v[1]) + SchemeBuilder::on_antenna1(b.rx1_clean(0)));
  b.slot(b.pair(w[0], w[1]) + SchemeBuilder::on_antenna1(b.rx2_clean(0)));
  // Analog sum of both side-information forms; renormalized by a constant.
  b.slot(SchemeBuilder::on_antenna1(b.rx1_clean(2) + b.rx2_clean(1)));
  b.physical_outputs();
  b.payload("v", 1, v, {}, 2.0);
  b.payload("w", 2, w, {}, 2.0 * ch.alpha);
  b.leak("v", 2, v, w);
  b.leak("w", 1, w, v);
  b.invert(1, v);
  b.invert(2, w);
  return b.finish();
}

// ---- multi-phase fixed-topology broadcast --------------------------------

struct BcFixedOptions {
  int t1 = 2;
  std::optional<CMat> theta1;  // 2 T1 x T1
  std::optional<CMat> theta2;  // 2 T2 x T1
  std::optional<CMat> psi1;    // T1 x T2
};

inline int bc_fixed_t2(double alpha, int t1) {
  if (t1 < 1) throw Error("T1 must be positive");
  const double t2 = alpha * t1;
  const double r = std::round(t2);
  if (std::abs(t2 - r) > 1e-9 || r < 1) throw Error("alpha*T1 must be a positive integer");
  return static_cast<int>(r);
}

inline int bc_fixed_slots(double alpha, int t1) { return 3 * t1 + bc_fixed_t2(alpha, t1); }

// Smallest T1 <= 20 with alpha*T1 a positive integer.
inline int bc_fixed_pick_t1(double alpha) {
  for (int t1 = 1; t1 <= 20; ++t1) {
    const double t2 = alpha * t1;
    if (std::abs(t2 - std::round(t2)) <= 1e-9 && std::round(t2) >= 1) return t1;
  }
  throw Error("no T1 <= 20 makes alpha*T1 a positive integer");
}

// Interleaved identity padding: slot t of phase 2 (3) carries entry t of the
// side information on antenna 1 only.
inline CMat bc_default_theta1(int t1) {
  CMat m = CMat::Zero(2 * t1, t1);
  for (int t = 0; t < t1; ++t) m(2 * t, t) = 1.0;
  return m;
}
inline CMat bc_default_theta2(int t1, int t2) {
  CMat m = CMat::Zero(2 * t2, t1);
  for (int t = 0; t < t2; ++t) m(2 * t, t) = 1.0;
  return m;
}
inline CMat bc_default_psi1(int t1, int t2) {
  CMat m = CMat::Zero(t1, t2);
  for (int t = 0; t < t2; ++t) m(t, t) = 1.0;
  return m;
}

inline LinearScheme build_bc_fixed(const ChannelRealization& ch, const BcFixedOptions& opt = {}) {
  using detail::SchemeBuilder;
  const int t1 = opt.t1, t2 = bc_fixed_t2(ch.alpha, t1);
  detail::require_states(ch, std::vector<TopologyState>(3 * t1 + t2, kState1a), "bc-fixed");
  const CMat th1 = opt.theta1.value_or(bc_default_theta1(t1));
  const CMat th2 = opt.theta2.value_or(bc_default_theta2(t1, t2));
  const CMat psi = opt.psi1.value_or(bc_default_psi1(t1, t2));
  if (th1.rows() != 2 * t1 || th1.cols() != t1) throw Error("Theta1 must be 2T1 x T1");
  if (th2.rows() != 2 * t2 || th2.cols() != t1) throw Error("Theta2 must be 2T2 x T1");
  if (psi.rows() != t1 || psi.cols() != t2) throw Error("Psi1 must be T1 x T2");
  if (detail::numeric_rank(th1) != t1) throw Error("Theta1 must have full column rank");
  if (detail::numeric_rank(th2) != t2) throw Error("Theta2 must have full row rank T2");
  if (detail::numeric_rank(psi) != t2) throw Error("Psi1 must have full column rank");

  SchemeBuilder b(ch, "bc-fixed");
  std::vector<int> u, v, w, v3, c;
  for (int t = 0; t < t1; ++t) {
    const auto p = b.add_many("u" + std::to_string(t + 1) + "_", 2, "u", Role::Noise);
    u.insert(u.end(), p.begin(), p.end());
  }
  for (int t = 0; t < t1; ++t) {
    const auto p = b.add_many("v" + std::to_string(t + 1) + "_", 2, "v", Role::Secret1);
    v.insert(v.end(), p.begin(), p.end());
  }
  for (int t = 0; t < t2; ++t) {
    const auto p = b.add_many("w" + std::to_string(t + 1) + "_", 2, "w", Role::Secret2);
    w.insert(w.end(), p.begin(), p.end());
  }
  for (int t = 0; t < t1; ++t) v3.push_back(b.add("v3_" + std::to_string(t + 1), "v3", Role::Secret1, -ch.alpha));
  for (int t = 0; t < t1; ++t) c.push_back(b.add("c" + std::to_string(t + 1), "c", Role::Common));

  for (int t = 0; t < t1; ++t) b.slot(b.pair(u[2 * t], u[2 * t + 1]));
  CMat y1(t1, b.k()), z1(t1, b.k());
  for (int t = 0; t < t1; ++t) {
    y1.row(t) = b.rx1_clean(t);
    z1.row(t) = b.rx2_clean(t);
  }
  for (int t = 0; t < t1; ++t) b.slot(b.pair(v[2 * t], v[2 * t + 1]) + th1.middleRows(2 * t, 2) * y1);
  for (int t = 0; t < t2; ++t) b.slot(b.pair(w[2 * t], w[2 * t + 1]) + th2.middleRows(2 * t, 2) * z1);
  for (int t = 0; t < t1; ++t) b.slot(SchemeBuilder::on_antenna1(b.unit(c[t]) + b.unit(v3[t])));
  b.physical_outputs();

  // Common message: XOR of quantized z2 (rho^alpha) and quantized Psi1 y3 (rho).
  for (int t = 0; t < t1; ++t) b.quantized("z" + std::to_string(t1 + t + 1), b.z_row(t1 + t), ch.alpha);
  CMat y3(t2, b.k());
  for (int t = 0; t < t2; ++t) y3.row(t) = b.y_row(2 * t1 + t);
  const CMat y3p = psi * y3;
  for (int t = 0; t < t1; ++t)
    if (y3p.row(t).squaredNorm() > 0.0) b.quantized("y3p" + std::to_string(t + 1), y3p.row(t), 1.0);

  const double a = ch.alpha;
  for (int rx : {1, 2}) b.certify("c", rx, c, {}, a * t1);
  b.payload("v3", 1, v3, c, (1.0 - a) * t1);
  b.payload("v", 1, v, detail::cat({c, v3}), (1.0 + a) * t1);
  b.payload("w", 2, w, c, (1.0 + a) * t2);
  b.leak("v", 2, v, detail::cat({w, c}));
  b.leak("v3", 2, v3, detail::cat({w, c}));
  b.leak("secret1", 2, detail::cat({v, v3}), detail::cat({w, c}));
  b.leak("w", 1, w, detail::cat({v, v3, c}));
  b.given(1, c);
  b.invert(1, v3);
  b.invert(1, v);
  b.given(2, c);
  b.invert(2, w);
  return b.finish();
}

// ---- symmetric alternating ----------------------------------------------

inline const std::vector<TopologyState>& sym_alt_states() {
  static const std::vector<TopologyState> s{kState1a, kState1a, kStatea1, kStatea1};
  return s;
}

inline LinearScheme build_sym_alt(const ChannelRealization& ch) {
  using detail::SchemeBuilder;
  detail::require_states(ch, sym_alt_states(), "sym-alt");
  SchemeBuilder b(ch, "sym-alt");
  const double a = ch.alpha;
  const auto u = b.add_many("u", 2, "u", Role::Noise);
  const auto v = b.add_many("v", 2, "v", Role::Secret1);
  const auto w = b.add_many("w", 2, "w", Role::Secret2);
  const int w3 = b.add("w3", "w3", Role::Secret2, -a);
  const int c = b.add("c", "c", Role::Common);
  b.slot(b.pair(u[0], u[1]));
  b.slot(b.pair(v[0], v[1]) + SchemeBuilder::on_antenna1(b.rx1_clean(0)));
  b.slot(b.pair(w[0], w[1]) + SchemeBuilder::on_antenna1(b.rx2_clean(0)));
  b.slot(SchemeBuilder::on_antenna1(b.unit(c) + b.unit(w3)));
  b.physical_outputs();
  // s = y3 + z2, both received at rho^alpha.
  b.quantized("s", b.y_row(2) + b.z_row(1), a);

  for (int rx : {1, 2}) b.certify("c", rx, {c}, {}, a);
  b.payload("v", 1, v, {c}, 1.0 + a);
  b.payload("w3", 2, {w3}, {c}, 1.0 - a);
  b.payload("w", 2, w, {c, w3}, 1.0 + a);
  b.leak("v", 2, v, detail::cat({w, {w3, c}}));
  b.leak("w", 1, w, detail::cat({v, {c}}));
  b.leak("w3", 1, {w3}, detail::cat({v, {c}}));
  b.leak("secret2", 1, detail::cat({w, {w3}}), detail::cat({v, {c}}));
  b.given(1, {c});
  b.invert(1, v);
  b.given(2, {c});
  b.invert(2, {w3});
  b.invert(2, w);
  return b.finish();
}

// ---- checks -------------------------------------------------------------

struct DecodeReport {
  bool ok = true;
  std::string failure;
  double worst_error = 0.0;
};

namespace detail {

// Left null space of m (rows x cols) as rows of the returned matrix.
inline CMat left_null(const CMat& m, double rel) {
  const Eigen::Index rows = m.rows();
  if (m.cols() == 0) return CMat::Identity(rows, rows);
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * std::max(s(0), 1e-300)) ++r;
  return svd.matrixU().rightCols(rows - r).adjoint();
}

}  // namespace detail

inline constexpr double kDecodeRelTol = 1e-6;
inline constexpr double kRankRelTol = 1e-10;

// Runs the declared plan on noiseless outputs with exact side information.
// Symbol values are unit-variance draws: decodability does not depend on
// the power exponents, and unit scale keeps the error check meaningful.
inline DecodeReport noiseless_decode_report(const LinearScheme& s, std::uint64_t seed = 1) {
  const int k = s.num_symbols();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::uniform_int_distribution<int> lat(-15, 15);
  CVec truth(k);
  for (int i = 0; i < k; ++i)
    truth(i) = s.symbols[i].lattice ? cplx(lat(rng), 0.0) : cplx(gauss(rng), gauss(rng));

  DecodeReport rep;
  for (int rx : {1, 2}) {
    std::vector<CRow> rows;
    std::vector<cplx> vals;
    for (const auto& o : s.obs)
      if (o.rx == rx) {
        rows.push_back(o.row);
        vals.push_back((o.row * truth)(0));
      }
    std::vector<bool> known(k, false);
    CVec est = CVec::Zero(k);
    for (const auto& step : s.plan) {
      if (step.rx != rx) continue;
      if (step.kind == StepKind::Given) {
        for (int j : step.targets) {
          known[j] = true;
          est(j) = truth(j);
        }
        continue;
      }
      if (step.kind == StepKind::Combination) {
        rows.push_back(step.combination);
        vals.push_back((step.combination * truth)(0));
        continue;
      }
      // Invert: rows normalized, known columns subtracted, nuisance projected out.
      const auto m = static_cast<Eigen::Index>(rows.size());
      std::vector<bool> is_target(k, false);
      for (int j : step.targets) is_target[j] = true;
      std::vector<int> nuis;
      for (int j = 0; j < k; ++j)
        if (!known[j] && !is_target[j]) nuis.push_back(j);
      CMat a_t(m, static_cast<Eigen::Index>(step.targets.size()));
      CMat a_n(m, static_cast<Eigen::Index>(nuis.size()));
      CVec rhs(m);
      for (Eigen::Index r = 0; r < m; ++r) {
        const double nrm = rows[r].norm();
        const double wgt = nrm > 0.0 ? 1.0 / nrm : 0.0;
        cplx acc = vals[r];
        for (int j = 0; j < k; ++j)
          if (known[j]) acc -= rows[r](j) * est(j);
        rhs(r) = acc * wgt;
        for (size_t j = 0; j < step.targets.size(); ++j)
          a_t(r, static_cast<Eigen::Index>(j)) = rows[r](step.targets[j]) * wgt;
        for (size_t j = 0; j < nuis.size(); ++j) a_n(r, static_cast<Eigen::Index>(j)) = rows[r](nuis[j]) * wgt;
      }
      const CMat p = detail::left_null(a_n, kRankRelTol);
      const CMat reduced = p * a_t;
      if (detail::numeric_rank(reduced, kRankRelTol) < static_cast<Eigen::Index>(step.targets.size())) {
        rep.ok = false;
        rep.failure = "receiver " + std::to_string(rx) + ": rank deficient inversion";
        return rep;
      }
      const CVec sol = reduced.completeOrthogonalDecomposition().solve(CVec(p * rhs));
      double err = 0.0, scale = 0.0;
      for (size_t j = 0; j < step.targets.size(); ++j) {
        const int id = step.targets[j];
        err = std::max(err, std::abs(sol(static_cast<Eigen::Index>(j)) - truth(id)));
        scale = std::max(scale, std::abs(truth(id)));
        est(id) = sol(static_cast<Eigen::Index>(j));
        known[id] = true;
      }
      const double rel = scale > 0.0 ? err / scale : err;
      rep.worst_error = std::max(rep.worst_error, rel);
      if (!(rel <= kDecodeRelTol)) {
        rep.ok = false;
        rep.failure = "receiver " + std::to_string(rx) + ": recovery error " + fmt_num(rel);
        return rep;
      }
    }
  }
  return rep;
}

inline bool noiseless_decode_check(const LinearScheme& s, std::uint64_t seed = 1) {
  return noiseless_decode_report(s, seed).ok;
}

using SchemeFactory = std::function<LinearScheme(const ChannelRealization&)>;

// Replaces channel rows t..n-1 by fresh draws; slots 0..t must not move.
inline bool causality_audit(const SchemeFactory& build, const ChannelRealization& ch, std::uint64_t seed) {
  const LinearScheme ref = build(ch);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::uniform_int_distribution<int> coef(-3, 3);
  auto draw = [&]() -> cplx {
    if (ch.mode == ChannelMode::Integer) return cplx(coef(rng), 0.0);
    const double re = gauss(rng);
    return cplx(re, gauss(rng));
  };
  for (int t = 0; t < ch.n; ++t) {
    ChannelRealization alt = ch;
    for (int r = t; r < ch.n; ++r) {
      alt.h[r] << draw(), draw();
      alt.g[r] << draw(), draw();
    }
    const LinearScheme s = build(alt);
    for (int q = 0; q <= t; ++q) {
      const double scale = std::max(1.0, ref.slots[q].cwiseAbs().maxCoeff());
      if ((s.slots[q] - ref.slots[q]).cwiseAbs().maxCoeff() > 1e-12 * scale) return false;
    }
  }
  return true;
}

// Largest per-slot transmit power with symbol variances at their exponents,
// over rho in {1e6, 1e12}.
inline double power_audit(const SchemeFactory& build, const ChannelRealization& ch) {
  double worst = 0.0;
  for (double rho : {1e6, 1e12}) {
    const LinearScheme s = build(ch.at_rho(rho));
    const auto var = s.variances();
    for (const auto& x : s.slots) {
      double p = 0.0;
      for (int k = 0; k < s.num_symbols(); ++k) p += x.col(k).squaredNorm() * var(k);
      worst = std::max(worst, p);
    }
  }
  return worst;
}

}  // namespace gsdof

#endif  // GSDOF_SCHEMES_HPP_
