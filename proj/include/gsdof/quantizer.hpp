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

#ifndef GSDOF_QUANTIZER_HPP_
#define GSDOF_QUANTIZER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gsdof/common.hpp"

namespace gsdof {

// Uniform mid-rise quantizer on Re and Im with clamp range +-6 sigma per real
// component. A sample costs ceil(exponent * log2 rho) bits, Re taking the odd
// bit when the count is odd.
class UniformQuantizer {
 public:
  static constexpr double kRangeSigmas = 6.0;

  UniformQuantizer(double power, double rho, double exponent) {
    if (!(power > 0.0)) throw Error("quantizer needs a positive signal power");
    const int bits = std::max(2, static_cast<int>(std::ceil(exponent * std::log2(rho) - 1e-12)));
    bits_re_ = (bits + 1) / 2;
    bits_im_ = bits / 2;
    if (bits_re_ > 31) throw Error("quantizer bit budget exceeds 31 bits per component");
    range_ = kRangeSigmas * std::sqrt(power / 2.0);
    step_re_ = 2.0 * range_ / static_cast<double>(1u << bits_re_);
    step_im_ = 2.0 * range_ / static_cast<double>(1u << bits_im_);
  }

  int bits() const { return bits_re_ + bits_im_; }
  int bits_re() const { return bits_re_; }
  int bits_im() const { return bits_im_; }
  double step_re() const { return step_re_; }
  double step_im() const { return step_im_; }
  double max_step() const { return std::max(step_re_, step_im_); }

  struct Index {
    std::uint32_t re = 0;
    std::uint32_t im = 0;
  };

  Index encode(cplx x, bool* saturated = nullptr) const {
    bool sat = false;
    Index i{component(x.real(), bits_re_, step_re_, sat), component(x.imag(), bits_im_, step_im_, sat)};
    if (saturated) *saturated = sat;
    return i;
  }

  cplx decode(const Index& i) const {
    return {-range_ + (static_cast<double>(i.re) + 0.5) * step_re_,
            -range_ + (static_cast<double>(i.im) + 0.5) * step_im_};
  }

  // Granular distortion (uniform error model), complex sample.
  double distortion() const { return (step_re_ * step_re_ + step_im_ * step_im_) / 12.0; }

  // Upper bound on distortion() over the ceiling in the bit count:
  // 15 P / rho^exponent. Smooth in rho, used by the mutual-information model.
  static double distortion_bound(double power, double rho, double exponent) {
    return 15.0 * power / std::pow(rho, exponent);
  }

 private:
  std::uint32_t component(double v, int bits, double step, bool& sat) const {
    const double levels = static_cast<double>(1u << bits);
    double k = std::floor((v + range_) / step);
    if (k < 0.0) {
      k = 0.0;
      sat = true;
    } else if (k > levels - 1.0) {
      k = levels - 1.0;
      sat = true;
    }
    return static_cast<std::uint32_t>(k);
  }

  int bits_re_ = 0;
  int bits_im_ = 0;
  double range_ = 0.0;
  double step_re_ = 0.0;
  double step_im_ = 0.0;
};

using BitString = std::vector<std::uint8_t>;

inline void append_bits(BitString& out, std::uint32_t v, int bits) {
  for (int b = bits - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((v >> b) & 1u));
}

inline std::uint32_t read_bits(const BitString& in, size_t& pos, int bits) {
  std::uint32_t v = 0;
  for (int b = 0; b < bits; ++b) v = (v << 1) | (pos < in.size() ? in[pos++] : 0u);
  return v;
}

inline BitString serialize(const UniformQuantizer& q, const std::vector<cplx>& xs, size_t* saturated = nullptr) {
  BitString out;
  size_t sat_count = 0;
  for (const auto& x : xs) {
    bool sat = false;
    const auto i = q.encode(x, &sat);
    sat_count += sat ? 1 : 0;
    append_bits(out, i.re, q.bits_re());
    append_bits(out, i.im, q.bits_im());
  }
  if (saturated) *saturated = sat_count;
  return out;
}

inline std::vector<cplx> deserialize(const UniformQuantizer& q, const BitString& bits, size_t count) {
  std::vector<cplx> out;
  size_t pos = 0;
  for (size_t k = 0; k < count; ++k) {
    UniformQuantizer::Index i;
    i.re = read_bits(bits, pos, q.bits_re());
    i.im = read_bits(bits, pos, q.bits_im());
    out.push_back(q.decode(i));
  }
  return out;
}

// Bitwise XOR; the shorter operand is zero-padded.
inline BitString xor_bits(const BitString& a, const BitString& b) {
  BitString out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>((i < a.size() ? a[i] : 0) ^ (i < b.size() ? b[i] : 0));
  return out;
}

// Common message built from two side-information vectors. Each receiver holds
// one operand and XORs it back out to reach the other.
struct DigitizedPair {
  UniformQuantizer qa;
  UniformQuantizer qb;
  BitString common;
  size_t saturated = 0;
  size_t samples = 0;
};

inline DigitizedPair digitize_pair(const std::vector<cplx>& a, double power_a, double exp_a,
                                   const std::vector<cplx>& b, double power_b, double exp_b, double rho) {
  DigitizedPair d{UniformQuantizer(power_a, rho, exp_a), UniformQuantizer(power_b, rho, exp_b), {}, 0, 0};
  size_t sa = 0, sb = 0;
  const auto ba = serialize(d.qa, a, &sa);
  const auto bb = serialize(d.qb, b, &sb);
  d.common = xor_bits(ba, bb);
  d.saturated = sa + sb;
  d.samples = a.size() + b.size();
  return d;
}

// Receiver holding operand b recovers a.
inline std::vector<cplx> recover_a(const DigitizedPair& d, const std::vector<cplx>& local_b, size_t count_a) {
  return deserialize(d.qa, xor_bits(d.common, serialize(d.qb, local_b)), count_a);
}

// Receiver holding operand a recovers b.
inline std::vector<cplx> recover_b(const DigitizedPair& d, const std::vector<cplx>& local_a, size_t count_b) {
  return deserialize(d.qb, xor_bits(d.common, serialize(d.qa, local_a)), count_b);
}

}  // namespace gsdof

#endif  // GSDOF_QUANTIZER_HPP_
