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

#include <gtest/gtest.h>

#include <random>

#include "gsdof/computation_rate.hpp"
#include "gsdof/experiments.hpp"
#include "gsdof/lattice.hpp"
#include "gsdof/quantizer.hpp"

namespace gsdof {
namespace {

Eigen::VectorXd vd(double a, double b) { return Eigen::Vector2d(a, b); }
Eigen::VectorXi vi(int a, int b) { return Eigen::Vector2i(a, b); }

// ---- computation rate ----------------------------------------------------

// Direct transcription with no algebraic rearrangement.
double rate_oracle(const Eigen::VectorXd& h, const Eigen::VectorXi& a, double snr) {
  double aa = 0.0, hh = 0.0, ha = 0.0;
  for (int i = 0; i < h.size(); ++i) {
    aa += a(i) * a(i);
    hh += h(i) * h(i);
    ha += h(i) * a(i);
  }
  const double bracket = aa - snr * ha * ha / (1.0 + snr * hh);
  return std::max(0.0, std::log2(1.0 / bracket));
}

TEST(ComputationRate, MatchesDirectEvaluation) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> c(-3, 3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const Eigen::VectorXd h = vd(n(rng), n(rng));
    Eigen::VectorXi a = vi(c(rng), c(rng));
    if (a.cwiseAbs().maxCoeff() == 0) a(0) = 1;
    const double snr = std::pow(10.0, (t % 7) * 0.5);
    EXPECT_NEAR(computation_rate(h, a, snr), rate_oracle(h, a, snr), 1e-9);
  }
}

TEST(ComputationRate, AlphaSlopeWithMatchedCoefficients) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> c(-3, 3);
  for (double alpha : {0.25, 0.5, 0.75}) {
    std::vector<double> rho, mean;
    for (double db : parse_range("60:120:10")) {
      rho.push_back(db_to_linear(db));
      mean.push_back(0.0);
    }
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
      Eigen::VectorXi g = vi(c(rng), c(rng));
      if (g.cwiseAbs().maxCoeff() == 0) g(1) = 1;
      for (size_t i = 0; i < rho.size(); ++i)
        mean[i] += computation_rate(g.cast<double>(), g, std::pow(rho[i], alpha)) / trials;
    }
    EXPECT_NEAR(fit_top_half(rho, mean).slope, alpha, 0.03) << alpha;
  }
}

TEST(ComputationRate, NegationInvariantAndMonotone) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const Eigen::VectorXd h = vd(n(rng), n(rng));
    const Eigen::VectorXi a = vi(1 + t % 3, -(t % 2));
    double prev = 0.0;
    for (double snr : {0.1, 1.0, 10.0, 1e3, 1e6, 1e9}) {
      const double r = computation_rate(h, a, snr, 0.5);
      EXPECT_NEAR(r, computation_rate(h, Eigen::VectorXi(-a), snr, 0.5), 1e-12);
      EXPECT_GE(r + 1e-12, prev);
      prev = r;
    }
  }
}

TEST(ComputationRate, ClampsAtZero) {
  EXPECT_EQ(computation_rate(vd(1, 0), vi(1, 1), 1.0), 0.0);
  EXPECT_EQ(computation_rate(vd(2, 1), vi(2, 1), 0.0), 0.0);
}

TEST(ComputationRate, StableWhenCoefficientsEqualChannel) {
  // The naive bracket cancels to 0 in double at 1e12; the rewritten one cannot.
  const double r = computation_rate(vd(3, -2), vi(3, -2), 1e12);
  EXPECT_TRUE(std::isfinite(r));
  EXPECT_NEAR(r, std::log2(1.0 / 13.0 + 1e12), 1e-6);
}

TEST(ComputationRate, InterferenceLowersSnr) {
  EXPECT_NEAR(computation_rate(vd(1, 1), vi(1, 1), 1e6, 9.0), computation_rate(vd(1, 1), vi(1, 1), 1e5), 1e-12);
}

TEST(ComputationRate, MinOverTwoReceivers) {
  const RateTerm a{vd(1, 2), vi(1, 2), 1e6, 0.0}, b{vd(2, 1), vi(2, 1), 1e3, 0.0};
  EXPECT_NEAR(computation_rate(a, b), computation_rate(vd(2, 1), vi(2, 1), 1e3), 1e-12);
}

TEST(ComputationRate, Errors) {
  EXPECT_THROW(computation_rate(vd(1, 1), vi(0, 0), 1.0), Error);
  EXPECT_THROW(computation_rate(vd(1, 1), Eigen::VectorXi::Ones(3), 1.0), Error);
  EXPECT_THROW(computation_rate(vd(1, 1), vi(1, 1), -1.0), Error);
}

TEST(ComputationRate, AsPrintedFormHasNoSlope) {
  std::vector<double> rho, bits;
  for (double db : parse_range("60:120:10")) {
    rho.push_back(db_to_linear(db));
    bits.push_back(computation_rate_as_printed(vd(0.6, 0.8), vi(1, 1), rho.back()));
  }
  EXPECT_NEAR(fit_top_half(rho, bits).slope, 0.0, 1e-6);
}

// ---- lattice encode / decode ---------------------------------------------

TEST(LatticeConfig, Validation) {
  LatticeConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_NEAR(2.0 * std::pow(cfg.effective_scale() * cfg.half(), 2), 1.0, 1e-12);
  cfg.p = 30;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.p = 31;
  cfg.scale = 1.0;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_TRUE(is_prime(31));
  EXPECT_FALSE(is_prime(1));
  EXPECT_EQ(mod_p(-1, 31), 30);
  EXPECT_EQ(centered(30, 31), -1);
}

TEST(CfDecode, ExhaustiveNoiseless) {
  const LatticeConfig cfg;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> c(-3, 3);
  int trials = 0;
  while (trials < 500) {
    const Eigen::Vector2i h(c(rng), c(rng));
    if (h.cwiseAbs().maxCoeff() == 0) continue;
    ++trials;
    for (int u0 = 0; u0 < cfg.p; u0 += 1 + trials % 3)
      for (int u1 = 0; u1 < cfg.p; u1 += 1 + trials % 5) {
        const Eigen::Vector2i u(u0, u1);
        const double y = h.cast<double>().dot(cf_encode(u, cfg));
        const auto d = cf_decode(y, cfg, h);
        ASSERT_TRUE(d.ok);
        // Plain modular arithmetic oracle.
        const int want = ((h(0) * u0 + h(1) * u1) % cfg.p + cfg.p) % cfg.p;
        ASSERT_EQ(d.value, want) << h.transpose() << " u=" << u.transpose();
      }
  }
}

TEST(CfDecode, GainIsDividedOut) {
  const LatticeConfig cfg;
  const Eigen::Vector2i h(2, -3), u(7, 19);
  const double g = 1234.5;
  const auto d = cf_decode(g * h.cast<double>().dot(cf_encode(u, cfg)), cfg, h, g);
  EXPECT_TRUE(d.ok);
  EXPECT_EQ(d.value, mod_p(2 * 7 - 3 * 19, 31));
}

TEST(CfDecode, SameKeyAtBothReceivers) {
  // Two receivers with different gains and independent small noise decode
  // the same combination of the same codewords.
  const LatticeConfig cfg;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> m(0, 30);
  std::normal_distribution<double> n(0.0, 1.0);
  const Eigen::Vector2i a(1, -2);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Vector2i u(m(rng), m(rng));
    const double x = a.cast<double>().dot(cf_encode(u, cfg));
    const double g1 = 1e4, g2 = 3e3;
    const auto d1 = cf_decode(g1 * x + n(rng), cfg, a, g1);
    const auto d2 = cf_decode(g2 * x + n(rng), cfg, a, g2);
    ASSERT_TRUE(d1.ok && d2.ok);
    EXPECT_EQ(d1.value, d2.value);
  }
}

TEST(CfDecode, ZeroSymbols) {
  const LatticeConfig cfg;
  const auto d = cf_decode(Eigen::Vector2d(1, 1).dot(cf_encode({0, 0}, cfg)), cfg, {1, 1});
  EXPECT_TRUE(d.ok);
  EXPECT_EQ(d.value, 0);
}

TEST(CfDecode, FailuresAreReported) {
  const LatticeConfig cfg;
  const double s = cfg.effective_scale();
  EXPECT_FALSE(cf_decode(2.5 * s, cfg, {1, 0}).ok);           // on the decision boundary
  EXPECT_FALSE(cf_decode(40.0 * s, cfg, {1, 1}).ok);          // beyond any codeword sum
  EXPECT_THROW(cf_decode(0.0, cfg, {0, 0}), Error);
  EXPECT_THROW(cf_decode(0.0, cfg, {1, 0}, 0.0), Error);
}

TEST(KeyDecode, FailureRateFallsWithRho) {
  const LatticeConfig cfg;
  const Eigen::Vector2i h(2, -1);
  const double kappa = 1.0, alpha = 0.5;
  double prev = 1.1;
  for (double rho : {1e3, 1e6, 1e9}) {
    const double f = key_failure_rate(h, kappa, rho, alpha, cfg, 10000, 7);
    EXPECT_LE(f, prev) << rho;
    prev = f;
  }
  EXPECT_LT(prev, key_failure_rate(h, kappa, 1e3, alpha, cfg, 10000, 7));
  EXPECT_FALSE(key_decode_budget(2.0, kappa, 1e3, alpha, cfg).ok);
  EXPECT_TRUE(key_decode_budget(2.0, kappa, 1e9, alpha, cfg).ok);
}

TEST(LatticeSchemes, KeysExactOverIntegerTrials) {
  // Noiseless: the key equations h1.u and g1.u decode exactly at both receivers.
  const LatticeConfig cfg;
  const auto setup = scheme_setup("int-sym-alt", 0.5);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> m(0, 30);
  for (int t = 0; t < 200; ++t) {
    const auto ch = draw_realization(setup, 0.5, mix_seed(8, t));
    const Eigen::Vector2i u(m(rng), m(rng));
    const Eigen::Vector2d x = cf_encode(u, cfg);
    for (const Row2* row : {&ch.h[0], &ch.g[0]}) {
      const Eigen::Vector2i a(static_cast<int>((*row)(0).real()), static_cast<int>((*row)(1).real()));
      const auto d = cf_decode(a.cast<double>().dot(x), cfg, a);
      ASSERT_TRUE(d.ok);
      EXPECT_EQ(d.value, mod_p(static_cast<long long>(a(0)) * u(0) + static_cast<long long>(a(1)) * u(1), cfg.p));
    }
  }
}

TEST(LatticeSchemes, GdofCombinationsExact) {
  const LatticeConfig cfg;
  const auto setup = scheme_setup("gdof", 0.5);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> m(0, 30);
  for (int t = 0; t < 200; ++t) {
    const auto ch = draw_realization(setup, 0.5, mix_seed(9, t));
    const Eigen::Vector2i v(m(rng), m(rng)), w(m(rng), m(rng));
    // c = g1.v + h2.w: the integer sum of two decoded combinations.
    const auto iv = [](const Row2& r) {
      return Eigen::Vector2i(static_cast<int>(r(0).real()), static_cast<int>(r(1).real()));
    };
    const auto dv = cf_decode(iv(ch.g[0]).cast<double>().dot(cf_encode(v, cfg)), cfg, iv(ch.g[0]));
    const auto dw = cf_decode(iv(ch.h[1]).cast<double>().dot(cf_encode(w, cfg)), cfg, iv(ch.h[1]));
    ASSERT_TRUE(dv.ok && dw.ok);
    const long long want = iv(ch.g[0]).cast<long long>().dot(v.cast<long long>()) +
                           iv(ch.h[1]).cast<long long>().dot(w.cast<long long>());
    EXPECT_EQ(mod_p(dv.value + dw.value, cfg.p), mod_p(want, cfg.p));
  }
}

// ---- quantizer -------------------------------------------------------------

TEST(Quantizer, BitBudget) {
  const UniformQuantizer q(1.0, 1e6, 0.5);
  EXPECT_EQ(q.bits(), static_cast<int>(std::ceil(0.5 * std::log2(1e6))));
  EXPECT_EQ(q.bits_re() - q.bits_im(), q.bits() % 2);
  EXPECT_THROW(UniformQuantizer(0.0, 1e6, 0.5), Error);
}

TEST(Quantizer, RoundTripBoundedAndSaturationRare) {
  const double alpha = 0.5;
  std::vector<double> worst;
  for (double rho : {1e6, 1e9, 1e12}) {
    // Side-information sample at power rho^alpha quantized at rate alpha log rho.
    const double power = std::pow(rho, alpha);
    const UniformQuantizer q(power, rho, alpha);
    std::mt19937_64 rng(10);
    std::normal_distribution<double> n(0.0, std::sqrt(power / 2.0));
    std::vector<cplx> xs(100000);
    for (auto& x : xs) x = cplx(n(rng), n(rng));
    size_t sat = 0;
    const auto back = deserialize(q, serialize(q, xs, &sat), xs.size());
    double err = 0.0, mse = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
      const double e = std::abs(xs[i] - back[i]);
      mse += e * e / xs.size();
      bool s = false;
      q.encode(xs[i], &s);
      if (!s) err = std::max(err, e);
    }
    EXPECT_LT(static_cast<double>(sat) / xs.size(), 1e-3) << rho;
    EXPECT_LE(err, q.max_step()) << rho;
    EXPECT_LE(mse, UniformQuantizer::distortion_bound(power, rho, alpha)) << rho;
    EXPECT_LE(q.distortion(), UniformQuantizer::distortion_bound(power, rho, alpha)) << rho;
    worst.push_back(err);
  }
  const auto [lo, hi] = std::minmax_element(worst.begin(), worst.end());
  EXPECT_LE(*hi, 2.0 * *lo);  // does not grow with rho
}

TEST(Quantizer, XorDigitizationRoundTrip) {
  const double rho = 1e9, alpha = 0.5, power = std::pow(rho, alpha);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, std::sqrt(power / 2.0));
  std::vector<cplx> a(5), b(5);
  for (auto& x : a) x = cplx(n(rng), n(rng));
  for (auto& x : b) x = cplx(n(rng), n(rng));
  const auto d = digitize_pair(a, power, alpha, b, power, alpha, rho);
  EXPECT_EQ(d.common.size(), 5u * d.qa.bits());
  const auto ra = recover_a(d, b, a.size()), rb = recover_b(d, a, b.size());
  const auto qa = deserialize(d.qa, serialize(d.qa, a), a.size());
  const auto qb = deserialize(d.qb, serialize(d.qb, b), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(ra[i], qa[i]);
    EXPECT_EQ(rb[i], qb[i]);
  }
}

TEST(Quantizer, BitHelpers) {
  BitString s;
  append_bits(s, 0b1011, 4);
  size_t pos = 0;
  EXPECT_EQ(read_bits(s, pos, 4), 0b1011u);
  EXPECT_EQ(xor_bits({1, 0, 1}, {1, 1}), (BitString{0, 1, 1}));
}

}  // namespace
}  // namespace gsdof
