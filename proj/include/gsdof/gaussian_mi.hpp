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

#ifndef GSDOF_GAUSSIAN_MI_HPP_
#define GSDOF_GAUSSIAN_MI_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gsdof/common.hpp"
#include "gsdof/topology.hpp"

namespace gsdof {

inline const double kLog2PiE = std::log2(std::numbers::pi * std::numbers::e);

// log2 det(pi*e*cov) for a circularly-symmetric complex Gaussian vector.
inline double diff_entropy(const CMat& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0) throw Error("covariance must be square and nonempty");
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) throw Error("covariance is not Hermitian");
  Eigen::LLT<CMat> llt(cov);
  if (llt.info() != Eigen::Success) throw Error("covariance is not positive definite");
  double acc = 0.0;
  const CMat& l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double d = l(i, i).real();
    if (!(d > 0.0)) throw Error("covariance is not positive definite");
    acc += 2.0 * std::log2(d);
  }
  return static_cast<double>(cov.rows()) * kLog2PiE + acc;
}

// log2 det(I + B B^H) from the R factor of [B^H; I]. The identity block keeps
// every singular value >= 1, so the QR stays accurate at rho ~ 1e12.
inline double logdet_i_plus_gram(const CMat& b) {
  const Eigen::Index m = b.rows();
  if (m == 0) return 0.0;
  CMat stack(b.cols() + m, m);
  stack.topRows(b.cols()) = b.adjoint();
  stack.bottomRows(m) = CMat::Identity(m, m);
  Eigen::HouseholderQR<CMat> qr(stack);
  const CMat& r = qr.matrixQR();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) acc += 2.0 * std::log2(std::abs(r(i, i)));
  return acc;
}

// Outputs = rows * symbols + independent noise with per-row variance.
// Every symbol is zero-mean complex Gaussian with variance sym_var(k).
struct GaussianSystem {
  CMat rows;
  Eigen::VectorXd sym_var;
  Eigen::VectorXd noise_var;
};

namespace detail {

inline CMat whitened_columns(const GaussianSystem& sys, const std::vector<bool>& keep) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < sys.rows.cols(); ++k)
    if (keep[k]) cols.push_back(k);
  CMat b(sys.rows.rows(), static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index r = 0; r < sys.rows.rows(); ++r) {
    const double w = 1.0 / std::sqrt(sys.noise_var(r));
    for (size_t j = 0; j < cols.size(); ++j)
      b(r, static_cast<Eigen::Index>(j)) = sys.rows(r, cols[j]) * w * std::sqrt(sys.sym_var(cols[j]));
  }
  return b;
}

}  // namespace detail

// I(targets; outputs | known), bits.
inline double conditional_mi(const GaussianSystem& sys, const std::vector<int>& targets,
                             const std::vector<int>& known) {
  const auto k = sys.rows.cols();
  if (sys.sym_var.size() != k || sys.noise_var.size() != sys.rows.rows())
    throw Error("gaussian system dimensions disagree");
  for (Eigen::Index r = 0; r < sys.noise_var.size(); ++r)
    if (!(sys.noise_var(r) > 0.0)) throw Error("singular conditional covariance (zero output noise)");
  std::vector<bool> with_t(k, true), without_t(k, true);
  for (int j : known) with_t[j] = without_t[j] = false;
  for (int j : targets) without_t[j] = false;
  const double a = logdet_i_plus_gram(detail::whitened_columns(sys, with_t));
  const double b = logdet_i_plus_gram(detail::whitened_columns(sys, without_t));
  return std::max(0.0, a - b);
}

// Stacked form: secret, noise (artificial + receiver) and other-message maps.
struct LinearGaussianModel {
  CMat map_secret;
  CMat map_noise;
  CMat map_other;
  Eigen::VectorXd secret_var;
  Eigen::VectorXd noise_var;
  Eigen::VectorXd other_var;

  CMat covariance(bool with_secret, bool with_other) const {
    CMat cov = map_noise * noise_var.cast<cplx>().asDiagonal() * map_noise.adjoint();
    if (with_secret && map_secret.cols() > 0)
      cov += map_secret * secret_var.cast<cplx>().asDiagonal() * map_secret.adjoint();
    if (with_other && map_other.cols() > 0)
      cov += map_other * other_var.cast<cplx>().asDiagonal() * map_other.adjoint();
    return cov;
  }
};

namespace detail {

// log2 det(B B^H) through the R factor of B^H; B must have full row rank.
inline double logdet_gram(const CMat& b) {
  Eigen::HouseholderQR<CMat> qr(CMat(b.adjoint()));
  const CMat& r = qr.matrixQR();
  const double top = std::max(1e-300, r.cwiseAbs().maxCoeff());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    const double d = std::abs(r(i, i));
    if (d <= 1e-12 * top) throw Error("singular conditional covariance");
    acc += 2.0 * std::log2(d);
  }
  return acc;
}

}  // namespace detail

// I(secret; y | other) = h(y | other) - h(y | other, secret). The other-message
// columns drop out because they are known.
inline double mutual_info(const LinearGaussianModel& m) {
  const auto rows = m.map_noise.rows();
  if (m.map_secret.rows() != rows || (m.map_other.cols() > 0 && m.map_other.rows() != rows))
    throw Error("model maps must share the output dimension");
  if (m.map_noise.cols() < rows) throw Error("singular conditional covariance");
  auto factor = [&](bool with_secret) {
    const Eigen::Index ks = with_secret ? m.map_secret.cols() : 0;
    CMat b(rows, ks + m.map_noise.cols());
    for (Eigen::Index j = 0; j < ks; ++j) b.col(j) = m.map_secret.col(j) * std::sqrt(m.secret_var(j));
    for (Eigen::Index j = 0; j < m.map_noise.cols(); ++j)
      b.col(ks + j) = m.map_noise.col(j) * std::sqrt(m.noise_var(j));
    return b;
  };
  const double without = detail::logdet_gram(factor(false));
  return std::max(0.0, detail::logdet_gram(factor(true)) - without);
}

// ---- slope fitting ------------------------------------------------------

struct SlopeFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  double intercept = 0.0;
  double x_lo = 0.0;  // fitted log2(rho) subrange
  double x_hi = 0.0;
};

inline SlopeFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error("slope fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double e = y[i] - f.intercept - f.slope * x[i];
      rss += e * e;
    }
    f.stderr_ = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  f.x_lo = x.front();
  f.x_hi = x.back();
  return f;
}

// OLS of bits against log2(rho) over the upper half of the grid.
inline SlopeFit fit_top_half(const std::vector<double>& rho, const std::vector<double>& bits) {
  if (rho.size() != bits.size() || rho.size() < 2) throw Error("slope fit needs matching grids");
  const size_t start = rho.size() / 2;
  std::vector<double> x, y;
  for (size_t i = start; i < rho.size(); ++i) {
    x.push_back(std::log2(rho[i]));
    y.push_back(bits[i]);
  }
  if (x.size() < 2) {
    x.insert(x.begin(), std::log2(rho[start - 1]));
    y.insert(y.begin(), bits[start - 1]);
  }
  return ols(x, y);
}

// ---- entropy ledger -----------------------------------------------------

struct LedgerEntry {
  std::string label;
  double rho = 0.0;
  double bits = 0.0;
};

struct EntropyLedger {
  std::vector<LedgerEntry> entries;

  void add(std::string label, double rho, double bits) {
    if (!std::isfinite(bits)) throw Error("ledger entry '" + label + "' is not finite");
    entries.push_back({std::move(label), rho, bits});
  }
  std::string csv() const {
    std::ostringstream os;
    os << "label,rho,bits\n";
    for (const auto& e : entries) os << e.label << ',' << fmt_num(e.rho) << ',' << fmt_num(e.bits) << '\n';
    return os.str();
  }
};

// ---- output-entropy slope inequalities ----------------------------------

enum class Lemma1Id { A, B, C, D };

inline Lemma1Id parse_lemma1_id(const std::string& s) {
  if (s == "4a") return Lemma1Id::A;
  if (s == "4b") return Lemma1Id::B;
  if (s == "4c") return Lemma1Id::C;
  if (s == "4d") return Lemma1Id::D;
  throw Error("unknown inequality id '" + s + "'");
}

struct Lemma1Result {
  bool holds = false;
  double lhs_slope = 0.0;  // per slot
  double rhs_slope = 0.0;  // per slot
  double margin() const { return rhs_slope - lhs_slope; }
};

inline constexpr double kLemmaTol = 0.02;
inline constexpr int kLemmaSlots = 40;

// Inputs are i.i.d. CN(0, I/2) per slot, so ||x||^2 = 1 on average and every
// output entropy has a per-slot closed form.
inline Lemma1Result lemma1_slope_eval(const TopologyProfile& profile, Lemma1Id id,
                                      const std::vector<double>& rho_grid, std::uint64_t seed,
                                      int n = kLemmaSlots) {
  profile.validate();
  if (rho_grid.size() < 3) throw Error("lemma check needs at least 3 rho points");
  const auto states = state_sequence(profile, n);
  const auto ch = draw_channels(n, states, 2.0, profile.alpha, seed);
  const double a = profile.alpha;
  std::vector<double> lhs, rhs;
  for (double rho : rho_grid) {
    double hy = 0.0, hz = 0.0, hyz = 0.0;
    for (int t = 0; t < n; ++t) {
      const double sy = std::sqrt(std::pow(rho, ch.a1(t))), sz = std::sqrt(std::pow(rho, ch.a2(t)));
      CMat s(2, 2);
      s.row(0) = sy * ch.h[t];
      s.row(1) = sz * ch.g[t];
      const CMat cov = CMat::Identity(2, 2) + 0.5 * s * s.adjoint();
      hy += diff_entropy(cov.block(0, 0, 1, 1));
      hz += diff_entropy(cov.block(1, 1, 1, 1));
      hyz += diff_entropy(cov);
    }
    const double l2r = std::log2(rho);
    const double surcharge_1a = n * profile.lambda_1a * (1.0 - a) * l2r;
    const double surcharge_a1 = n * profile.lambda_a1 * (1.0 - a) * l2r;
    double l = 0.0, r = 0.0;
    switch (id) {
      case Lemma1Id::A: l = hyz; r = 2.0 * hz + surcharge_1a; break;
      case Lemma1Id::B: l = hyz; r = 2.0 * hy + surcharge_a1; break;
      case Lemma1Id::C: l = hy; r = 2.0 * hz + surcharge_1a; break;
      case Lemma1Id::D: l = hz; r = 2.0 * hy + surcharge_a1; break;
    }
    lhs.push_back(l / n);
    rhs.push_back(r / n);
  }
  Lemma1Result res;
  res.lhs_slope = fit_top_half(rho_grid, lhs).slope;
  res.rhs_slope = fit_top_half(rho_grid, rhs).slope;
  res.holds = res.lhs_slope <= res.rhs_slope + kLemmaTol;
  return res;
}

inline bool lemma1_slope_check(const TopologyProfile& profile, Lemma1Id id,
                               const std::vector<double>& rho_grid, std::uint64_t seed) {
  return lemma1_slope_eval(profile, id, rho_grid, seed).holds;
}

}  // namespace gsdof

#endif  // GSDOF_GAUSSIAN_MI_HPP_
