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

#ifndef GSDOF_LATTICE_HPP_
#define GSDOF_LATTICE_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gsdof/common.hpp"
#include "gsdof/computation_rate.hpp"
#include "gsdof/schemes.hpp"
#include "gsdof/topology.hpp"

namespace gsdof {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline int mod_p(long long v, int p) {
  const long long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

// One-dimensional integer lattice per antenna. Messages live in Z_p and are
// sent as centered representatives times `scale`.
struct LatticeConfig {
  int p = 31;
  double scale = 0.0;  // 0 selects the largest scale with codeword power <= 1
  Eigen::Vector2i a{1, 1};

  int half() const { return (p - 1) / 2; }
  double effective_scale() const { return scale > 0.0 ? scale : 1.0 / std::sqrt(2.0 * half() * half()); }

  void validate() const {
    if (!is_prime(p)) throw Error("lattice modulus must be prime");
    const double s = effective_scale();
    if (2.0 * s * s * half() * half() > 1.0 + 1e-12) throw Error("lattice scale violates the power budget");
  }
};

inline int centered(int v, int p) {
  const int r = mod_p(v, p);
  return r > (p - 1) / 2 ? r - p : r;
}

inline Eigen::Vector2d cf_encode(const Eigen::Vector2i& symbols, const LatticeConfig& cfg) {
  cfg.validate();
  const double s = cfg.effective_scale();
  return {s * centered(symbols(0), cfg.p), s * centered(symbols(1), cfg.p)};
}

struct CfDecode {
  int value = 0;            // combination mod p
  long long integer = 0;    // nearest lattice point, before reduction
  double residual = 0.0;    // distance to it, in lattice spacings
  bool ok = false;
};

// received = gain * coeffs . cf_encode(u) + noise. Failure is flagged when
// the nearest point is out of reach of any codeword combination or the
// rounding residual is within 1e-9 of the decision boundary.
inline CfDecode cf_decode(double received, const LatticeConfig& cfg, const Eigen::Vector2i& coeffs,
                          double gain = 1.0) {
  cfg.validate();
  if (coeffs.cwiseAbs().maxCoeff() == 0) throw Error("coefficient vector must be nonzero");
  if (!(gain > 0.0)) throw Error("decoder gain must be positive");
  const double q = received / (gain * cfg.effective_scale());
  CfDecode d;
  const double r = std::round(q);
  d.integer = static_cast<long long>(r);
  d.residual = q - r;
  d.value = mod_p(d.integer, cfg.p);
  const long long reach = static_cast<long long>(coeffs.cwiseAbs().sum()) * cfg.half();
  d.ok = std::llabs(d.integer) <= reach && std::abs(d.residual) < 0.5 - 1e-9;
  return d;
}

// Receiver-1 key decode sees the v1 layer as noise. In lattice spacings the
// residual rms is sqrt(h11^2 rho^-alpha + 1 / (rho kappa^2)) / scale.
struct KeyBudget {
  double residual_rms = 0.0;
  double half_spacing = 0.5;
  bool ok = false;
};

inline KeyBudget key_decode_budget(double h11, double kappa, double rho, double alpha, const LatticeConfig& cfg) {
  const double s = cfg.effective_scale();
  KeyBudget b;
  b.residual_rms = std::sqrt(h11 * h11 * std::pow(rho, -alpha) + 1.0 / (rho * kappa * kappa)) / s;
  b.ok = b.residual_rms < b.half_spacing;
  return b;
}

// Empirical key-decode failure rate on y = sqrt(rho) kappa (h.x_lattice + h11 v1) + n.
inline double key_failure_rate(const Eigen::Vector2i& h, double kappa, double rho, double alpha,
                               const LatticeConfig& cfg, int trials, std::uint64_t seed) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> msg(0, cfg.p - 1);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  const double s = cfg.effective_scale(), g = std::sqrt(rho) * kappa;
  int fails = 0;
  for (int i = 0; i < trials; ++i) {
    const Eigen::Vector2i u(msg(rng), msg(rng));
    const Eigen::Vector2d x = cf_encode(u, cfg);
    const double v1 = std::pow(rho, -alpha / 2.0) * gauss(rng) * std::sqrt(2.0);  // real part, variance rho^-alpha
    const double y = g * (h.cast<double>().dot(x) + h(0) * v1 * s) + gauss(rng) * std::sqrt(2.0);
    const auto d = cf_decode(y, cfg, h, g);
    const long long want = static_cast<long long>(h(0)) * centered(u(0), cfg.p) +
                           static_cast<long long>(h(1)) * centered(u(1), cfg.p);
    if (!d.ok || d.integer != want) ++fails;
  }
  return static_cast<double>(fails) / trials;
}

// ---- integer-channel schemes --------------------------------------------

namespace detail {

inline Eigen::VectorXd real_row(const Row2& r, double kappa) {
  return Eigen::Vector2d(r(0).real(), r(1).real()) * kappa;
}

inline Eigen::VectorXi int_row(const Row2& r) {
  return Eigen::Vector2i(static_cast<int>(std::lround(r(0).real())), static_cast<int>(std::lround(r(1).real())));
}

inline double slot_kappa(const CMat& x, int col) {
  // Normalized maps put unit weight times kappa on lattice columns.
  return std::abs(x(0, col)) > 0.0 ? std::abs(x(0, col)) : std::abs(x(1, col));
}

// Restriction of a row to the given columns.
inline CRow restrict(const CRow& r, const std::vector<int>& cols) {
  CRow out = CRow::Zero(r.cols());
  for (int c : cols) out(c) = r(c);
  return out;
}

}  // namespace detail

// Slot 1 carries lattice noise u plus v1 at rho^-alpha; receiver 1 decodes
// the key h1.u treating v1 as noise, then strips it to reach v1. Slots 2-3
// follow the Gaussian wiretap pattern with the exact key.
inline LinearScheme build_wiretap_lattice(const ChannelRealization& ch) {
  using detail::SchemeBuilder;
  detail::require_states(ch, {kState1a, kState1a, kState1a}, "wiretap-lattice");
  detail::require_mode(ch, ChannelMode::Integer, "wiretap-lattice");
  const double a = ch.alpha;
  SchemeBuilder b(ch, "wiretap-lattice");
  const auto u = b.add_many("u", 2, "u", Role::Noise, 0.0, true);
  const int v1 = b.add("v1", "v1", Role::Secret1, -a);
  const auto v = b.add_many("v", 2, "v", Role::Secret1);
  CMat x1 = b.pair(u[0], u[1]);
  x1(0, v1) = 1.0;
  const CMat& s1 = b.slot(x1);
  const double k1 = detail::slot_kappa(s1, u[0]);
  const CRow key = detail::restrict(b.rx1_clean(0), u);
  b.slot(b.pair(v[0], v[1]) + SchemeBuilder::on_antenna1(key));
  b.slot(SchemeBuilder::on_antenna1(b.rx2_clean(1)));
  b.physical_outputs();
  b.virtual_obs(1, "key:h1u", std::sqrt(ch.rho) * key);

  const RateTerm y1{detail::real_row(ch.h[0], k1), detail::int_row(ch.h[0]), ch.rho,
                    std::pow(ch.rho, 1.0 - a) * std::norm(ch.h[0](0)) * k1 * k1};
  b.lattice_group("key", 1, GroupUse::Certify, u, {{"h1u@y1", y1}}, 1, a);
  b.payload("v1", 1, {v1}, {}, 1.0 - a);
  b.payload("v", 1, v, {v1}, 2.0);
  const auto all = detail::cat({{v1}, v});
  b.leak("v1", 2, {v1}, {});
  b.leak("v", 2, v, {});
  b.leak("secret1", 2, all, {});
  b.invert(1, {v1});
  b.invert(1, v);
  return b.finish();
}

// Four slots (1,a),(1,a),(a,1),(a,1). Both receivers decode their own key
// from slot 1, so each confidential pair is masked by a key its receiver
// knows exactly.
inline LinearScheme build_int_sym_alt(const ChannelRealization& ch) {
  using detail::SchemeBuilder;
  detail::require_states(ch, sym_alt_states(), "int-sym-alt");
  detail::require_mode(ch, ChannelMode::Integer, "int-sym-alt");
  const double a = ch.alpha;
  SchemeBuilder b(ch, "int-sym-alt");
  const auto u = b.add_many("u", 2, "u", Role::Noise, 0.0, true);
  const int v1 = b.add("v1", "v1", Role::Secret1, -a);
  const auto v = b.add_many("v", 2, "v", Role::Secret1);
  const auto w = b.add_many("w", 2, "w", Role::Secret2);
  const int w3 = b.add("w3", "w3", Role::Secret2, -a);
  const int c = b.add("c", "c", Role::Common);
  CMat x1 = b.pair(u[0], u[1]);
  x1(0, v1) = 1.0;
  const CMat& s1 = b.slot(x1);
  const double k1 = detail::slot_kappa(s1, u[0]);
  const CRow key1 = detail::restrict(b.rx1_clean(0), u);
  const CRow key2 = detail::restrict(b.rx2_clean(0), u);
  b.slot(b.pair(v[0], v[1]) + SchemeBuilder::on_antenna1(key1));
  b.slot(b.pair(w[0], w[1]) + SchemeBuilder::on_antenna1(key2));
  b.slot(SchemeBuilder::on_antenna1(b.unit(c) + b.unit(w3)));
  b.physical_outputs();
  b.virtual_obs(1, "key:h1u", std::sqrt(ch.rho) * key1);
  b.virtual_obs(2, "key:g1u", std::sqrt(ch.rho) * key2);
  b.quantized("s", b.y_row(2) + b.z_row(1), a);

  const RateTerm y1{detail::real_row(ch.h[0], k1), detail::int_row(ch.h[0]), ch.rho,
                    std::pow(ch.rho, 1.0 - a) * std::norm(ch.h[0](0)) * k1 * k1};
  const RateTerm z1{detail::real_row(ch.g[0], k1), detail::int_row(ch.g[0]), std::pow(ch.rho, a),
                    std::norm(ch.g[0](0)) * k1 * k1};
  b.lattice_group("key", 1, GroupUse::Certify, u, {{"h1u@y1", y1}}, 1, a);
  b.lattice_group("key", 2, GroupUse::Certify, u, {{"g1u@z1", z1}}, 1, a);
  for (int rx : {1, 2}) b.certify("c", rx, {c}, {}, a);
  b.payload("v1", 1, {v1}, {c}, 1.0 - a);
  b.payload("v", 1, v, {c, v1}, 1.0 + a);
  b.payload("w3", 2, {w3}, {c}, 1.0 - a);
  b.payload("w", 2, w, {c, w3}, 1.0 + a);
  const auto s1_all = detail::cat({{v1}, v});
  const auto s2_all = detail::cat({w, {w3}});
  b.leak("v1", 2, {v1}, detail::cat({s2_all, {c}}));
  b.leak("v", 2, v, detail::cat({s2_all, {c}}));
  b.leak("secret1", 2, s1_all, detail::cat({s2_all, {c}}));
  b.leak("w", 1, w, detail::cat({s1_all, {c}}));
  b.leak("w3", 1, {w3}, detail::cat({s1_all, {c}}));
  b.leak("secret2", 1, s2_all, detail::cat({s1_all, {c}}));
  b.given(1, {c});
  b.invert(1, {v1});
  b.invert(1, v);
  b.given(2, {c});
  b.invert(2, {w3});
  b.invert(2, w);
  return b.finish();
}

// No secrecy. Lattice pairs v, w at full codebook size plus Gaussian layers
// v3, v4, v5 at rho^-alpha; slot 3 multicasts c = g1.v + h2.w in lattice units.
inline LinearScheme build_gdof_no_secrecy(const ChannelRealization& ch) {
  using detail::SchemeBuilder;
  detail::require_states(ch, {kState1a, kState1a, kState1a}, "gdof");
  detail::require_mode(ch, ChannelMode::Integer, "gdof");
  const double a = ch.alpha;
  SchemeBuilder b(ch, "gdof");
  const auto v = b.add_many("v", 2, "v", Role::Secret1, 0.0, true);
  const auto w = b.add_many("w", 2, "w", Role::Secret2, 0.0, true);
  const int v3 = b.add("v3", "v3", Role::Secret1, -a);
  const int v4 = b.add("v4", "v4", Role::Secret1, -a);
  const int v5 = b.add("v5", "v5", Role::Secret1, -a);
  CMat x1 = b.pair(v[0], v[1]);
  x1(0, v3) = 1.0;
  const double k1 = detail::slot_kappa(b.slot(x1), v[0]);
  CMat x2 = b.pair(w[0], w[1]);
  x2(0, v4) = 1.0;
  const double k2 = detail::slot_kappa(b.slot(x2), w[0]);
  CRow cform = b.zero();
  cform(v[0]) = ch.g[0](0);
  cform(v[1]) = ch.g[0](1);
  cform(w[0]) = ch.h[1](0);
  cform(w[1]) = ch.h[1](1);
  CRow x3 = cform;
  x3(v5) = 1.0;
  const CMat& s3 = b.slot(SchemeBuilder::on_antenna1(x3));
  const double k3 = std::abs(s3(0, v5));
  b.physical_outputs();

  const double ra = std::pow(ch.rho, a), r1a = std::pow(ch.rho, 1.0 - a);
  auto scalar = [](cplx h, double k) { return Eigen::VectorXd::Constant(1, h.real() * k); };
  const Eigen::VectorXi one = Eigen::VectorXi::Constant(1, 1);
  std::vector<LatticeEquation> rx1{
      {"h1v@y1", {detail::real_row(ch.h[0], k1), detail::int_row(ch.h[0]), ch.rho, r1a * std::norm(ch.h[0](0)) * k1 * k1}},
      {"h2w@y2", {detail::real_row(ch.h[1], k2), detail::int_row(ch.h[1]), ch.rho, r1a * std::norm(ch.h[1](0)) * k2 * k2}},
      {"c@y3", {scalar(ch.h[2](0), k3), one, ch.rho, r1a * std::norm(ch.h[2](0)) * k3 * k3}}};
  std::vector<LatticeEquation> rx2{
      {"g1v@z1", {detail::real_row(ch.g[0], k1), detail::int_row(ch.g[0]), ra, std::norm(ch.g[0](0)) * k1 * k1}},
      {"g2w@z2", {detail::real_row(ch.g[1], k2), detail::int_row(ch.g[1]), ra, std::norm(ch.g[1](0)) * k2 * k2}},
      {"c@z3", {scalar(ch.g[2](0), k3), one, ra, std::norm(ch.g[2](0)) * k3 * k3}}};
  b.lattice_group("v", 1, GroupUse::Payload, v, rx1, 2, 2.0 * a);
  b.lattice_group("w", 2, GroupUse::Payload, w, rx2, 2, 2.0 * a);
  const auto lat = detail::cat({v, w});
  b.payload("v3", 1, {v3}, lat, 1.0 - a);
  b.payload("v4", 1, {v4}, lat, 1.0 - a);
  b.payload("v5", 1, {v5}, lat, 1.0 - a);

  auto comb = [&](const Row2& r, const std::vector<int>& cols) {
    CRow out = b.zero();
    out(cols[0]) = r(0);
    out(cols[1]) = r(1);
    return out;
  };
  b.combination(1, comb(ch.h[0], v));
  b.combination(1, comb(ch.h[1], w));
  b.combination(1, cform);
  b.invert(1, {v3, v4, v5, v[0], v[1]});
  b.combination(2, comb(ch.g[0], v));
  b.combination(2, comb(ch.g[1], w));
  b.combination(2, cform);
  b.invert(2, w);
  return b.finish();
}

}  // namespace gsdof

#endif  // GSDOF_LATTICE_HPP_
