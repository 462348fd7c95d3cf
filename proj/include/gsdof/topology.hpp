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

#ifndef GSDOF_TOPOLOGY_HPP_
#define GSDOF_TOPOLOGY_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gsdof/common.hpp"

namespace gsdof {

enum class Level { Strong, Weak };

inline double exponent(Level l, double alpha) { return l == Level::Strong ? 1.0 : alpha; }

struct TopologyState {
  Level a1 = Level::Strong;
  Level a2 = Level::Strong;

  bool operator==(const TopologyState&) const = default;
  std::string label() const {
    return std::string(a1 == Level::Strong ? "1" : "a") + (a2 == Level::Strong ? "1" : "a");
  }
};

inline constexpr TopologyState kState11{Level::Strong, Level::Strong};
inline constexpr TopologyState kState1a{Level::Strong, Level::Weak};
inline constexpr TopologyState kStatea1{Level::Weak, Level::Strong};
inline constexpr TopologyState kStateaa{Level::Weak, Level::Weak};

struct TopologyProfile {
  double alpha = 0.5;
  double lambda_11 = 0.0;
  double lambda_1a = 0.0;
  double lambda_a1 = 0.0;
  double lambda_aa = 0.0;

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must lie in [0,1]");
    for (double l : {lambda_11, lambda_1a, lambda_a1, lambda_aa})
      if (!(l >= 0.0)) throw Error("topology fractions must be nonnegative");
    const double s = lambda_11 + lambda_1a + lambda_a1 + lambda_aa;
    if (std::abs(s - 1.0) > 1e-12) throw Error("topology fractions must sum to 1");
  }

  // Named shortcuts: "11", "1a", "a1", "aa", "sym" (half 1a, half a1).
  static TopologyProfile named(const std::string& name, double alpha) {
    TopologyProfile p;
    p.alpha = alpha;
    if (name == "11") p.lambda_11 = 1.0;
    else if (name == "1a") p.lambda_1a = 1.0;
    else if (name == "a1") p.lambda_a1 = 1.0;
    else if (name == "aa") p.lambda_aa = 1.0;
    else if (name == "sym") p.lambda_1a = p.lambda_a1 = 0.5;
    else throw Error("unknown profile '" + name + "'");
    p.validate();
    return p;
  }
};

inline std::vector<TopologyState> state_sequence(const TopologyProfile& profile, int n) {
  profile.validate();
  if (n < 1) throw Error("state_sequence needs n >= 1");
  const std::array<double, 4> lam{profile.lambda_11, profile.lambda_1a, profile.lambda_a1,
                                  profile.lambda_aa};
  const std::array<TopologyState, 4> st{kState11, kState1a, kStatea1, kStateaa};
  std::array<int, 4> cnt{};
  std::array<double, 4> rem{};
  int used = 0;
  for (int i = 0; i < 4; ++i) {
    const double exact = lam[i] * n;
    cnt[i] = static_cast<int>(std::floor(exact + 1e-9));
    rem[i] = exact - cnt[i];
    used += cnt[i];
  }
  // Largest remainder; stable sort keeps the 11,1a,a1,aa order on ties.
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rem[a] > rem[b] + 1e-12; });
  for (int k = 0; used < n; ++k, ++used) cnt[order[k % 4]]++;
  std::vector<TopologyState> out;
  out.reserve(n);
  for (int i = 0; i < 4; ++i) out.insert(out.end(), cnt[i], st[i]);
  return out;
}

enum class ChannelMode { Complex, Integer };

struct ChannelRealization {
  int n = 0;
  std::vector<Row2> h;
  std::vector<Row2> g;
  std::vector<TopologyState> states;
  double rho = 1.0;
  double alpha = 0.5;
  ChannelMode mode = ChannelMode::Complex;

  double a1(int t) const { return exponent(states[t].a1, alpha); }
  double a2(int t) const { return exponent(states[t].a2, alpha); }
  cplx det(int t) const { return h[t](0) * g[t](1) - h[t](1) * g[t](0); }

  // Same channels, different SNR; schemes are rebuilt per grid point.
  ChannelRealization at_rho(double r) const {
    ChannelRealization c = *this;
    c.rho = r;
    return c;
  }
};

inline constexpr double kRankThreshold = 1e-9;
inline constexpr int kMaxRedraws = 1000;

inline ChannelRealization draw_channels(int n, const std::vector<TopologyState>& states, double rho,
                                        double alpha, std::uint64_t seed,
                                        ChannelMode mode = ChannelMode::Complex) {
  if (n < 1) throw Error("draw_channels needs n >= 1");
  if (static_cast<int>(states.size()) != n) throw Error("state sequence length must equal n");
  if (!(rho > 1.0)) throw Error("rho must exceed 1");
  ChannelRealization c;
  c.n = n;
  c.states = states;
  c.rho = rho;
  c.alpha = alpha;
  c.mode = mode;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::uniform_int_distribution<int> coef(-3, 3);
  auto draw = [&]() -> cplx {
    if (mode == ChannelMode::Integer) return cplx(coef(rng), 0.0);
    const double re = gauss(rng);
    return cplx(re, gauss(rng));
  };
  for (int t = 0; t < n; ++t) {
    Row2 h, g;
    int tries = 0;
    for (;;) {
      h << draw(), draw();
      g << draw(), draw();
      if (std::abs(h(0) * g(1) - h(1) * g(0)) > kRankThreshold) break;
      if (++tries >= kMaxRedraws) throw Error("draw_channels: rank redraw budget exhausted");
    }
    c.h.push_back(h);
    c.g.push_back(g);
  }
  return c;
}

inline std::pair<cplx, cplx> receive(const Vec2& x, const TopologyState& state, const Row2& h,
                                     const Row2& g, double rho, double alpha, const Vec2& noise) {
  if (x.squaredNorm() > 1.0 + 1e-9) throw Error("channel input violates the unit power constraint");
  const cplx y = std::sqrt(std::pow(rho, exponent(state.a1, alpha))) * (h * x)(0) + noise(0);
  const cplx z = std::sqrt(std::pow(rho, exponent(state.a2, alpha))) * (g * x)(0) + noise(1);
  return {y, z};
}

inline std::string realization_csv(const ChannelRealization& c) {
  std::ostringstream os;
  os << "t,A1,A2,h1_re,h1_im,h2_re,h2_im,g1_re,g1_im,g2_re,g2_im\n";
  for (int t = 0; t < c.n; ++t) {
    os << t + 1 << ',' << fmt_num(c.a1(t)) << ',' << fmt_num(c.a2(t));
    for (const Row2* r : {&c.h[t], &c.g[t]})
      for (int k = 0; k < 2; ++k) os << ',' << fmt_num((*r)(k).real()) << ',' << fmt_num((*r)(k).imag());
    os << '\n';
  }
  return os.str();
}

}  // namespace gsdof

#endif  // GSDOF_TOPOLOGY_HPP_
