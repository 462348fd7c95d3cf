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

#ifndef GSDOF_COMPUTATION_RATE_HPP_
#define GSDOF_COMPUTATION_RATE_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsdof/common.hpp"

namespace gsdof {

// Compute-and-forward rate of the integer combination a.x seen through the
// real channel h at effective SNR rho_eff / (1 + interference_power):
//   log2+ 1 / (||a||^2 - snr (h.a)^2 / (1 + snr ||h||^2)).
// The bracket is rewritten with the Lagrange identity so a == h does not
// cancel catastrophically at large snr.
inline double computation_rate(const Eigen::VectorXd& h, const Eigen::VectorXi& a, double rho_eff,
                               double interference_power = 0.0) {
  if (h.size() != a.size() || h.size() == 0) throw Error("channel and coefficient vectors must match");
  if (a.cwiseAbs().maxCoeff() == 0) throw Error("coefficient vector must be nonzero");
  if (!(rho_eff >= 0.0) || !(interference_power >= 0.0)) throw Error("powers must be nonnegative");
  const double snr = rho_eff / (1.0 + interference_power);
  const Eigen::VectorXd ad = a.cast<double>();
  const double aa = ad.squaredNorm(), hh = h.squaredNorm();
  double cross = 0.0;  // ||a||^2 ||h||^2 - (h.a)^2
  for (Eigen::Index i = 0; i < h.size(); ++i)
    for (Eigen::Index j = i + 1; j < h.size(); ++j) {
      const double d = ad(i) * h(j) - ad(j) * h(i);
      cross += d * d;
    }
  const double bracket = (aa + snr * cross) / (1.0 + snr * hh);
  return std::max(0.0, -std::log2(bracket));
}

struct RateTerm {
  Eigen::VectorXd h;
  Eigen::VectorXi a;
  double rho_eff = 0.0;
  double interference_power = 0.0;
};

// Both receivers must decode the same key: the usable rate is the smaller one.
inline double computation_rate(const RateTerm& first, const RateTerm& second) {
  return std::min(computation_rate(first.h, first.a, first.rho_eff, first.interference_power),
                  computation_rate(second.h, second.a, second.rho_eff, second.interference_power));
}

// Literal transcription of the receiver-1 expression with the self-interference
// term added inside the bracket and an unsquared |h.a|. Kept for comparison
// only; its high-SNR slope is zero, which is why computation_rate above is the
// one used everywhere else. Returns +inf when the bracket is not positive.
inline double computation_rate_as_printed(const Eigen::VectorXd& h, const Eigen::VectorXi& a, double rho,
                                          double self_interference = 0.0) {
  const Eigen::VectorXd ad = a.cast<double>();
  const double bracket =
      ad.squaredNorm() + self_interference - rho * std::abs(h.dot(ad)) / (1.0 + rho * h.squaredNorm());
  if (!(bracket > 0.0)) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -std::log2(bracket));
}

}  // namespace gsdof

#endif  // GSDOF_COMPUTATION_RATE_HPP_
