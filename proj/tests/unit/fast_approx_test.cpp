// Copyright 2026 The wefpe Authors.
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

#include <cmath>
#include <numbers>
#include <random>

#include "wefpe/errors.hpp"
#include "wefpe/fast_approx.hpp"

namespace wefpe {
namespace {

FastParams params(double beta, double gamma, int k) {
  FastParams p;
  p.beta_raw = softplus_inverse(beta);
  p.gamma = gamma;
  p.k_terms = k;
  return p;
}

TEST(FastWp, OriginValue) {
  EXPECT_NEAR(fast_wp({0.0, 0.0}, params(0.5, 1.0, 3)), 2.0 + 1.0 + 0.25 + 1.0 / 9.0, 1e-12);
}

TEST(FastWp, ZeroAmplitudeLeavesRadialTerm) {
  const FastParams p = params(0.61, 0.0, 8);
  for (const Complex z : {Complex(0.3, 0.2), Complex(-1.0, 2.5), Complex(4.0, 0.0)}) {
    EXPECT_NEAR(fast_wp(z, p), 1.0 / (std::norm(z) + p.beta()), 1e-15);
  }
}

TEST(FastWp, FiniteAndBoundedOnUnitCell) {
  const FastParams p;  // β ≈ 0.610, omega1_norm ≈ 1.085
  const double bound = 1.0 / p.beta() + 2.0 * std::abs(p.gamma) * std::numbers::pi * std::numbers::pi / 6.0;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const Complex z(2.0 * kLemniscaticHalfPeriod * i / 99.0, 2.0 * kLemniscaticHalfPeriod * j / 99.0);
      const double f = fast_wp(z, p);
      ASSERT_TRUE(std::isfinite(f));
      EXPECT_LE(std::abs(f), bound);
    }
  }
}

TEST(FastGradients, OriginValues) {
  const FastGradients g = fast_wp_gradients({0.0, 0.0}, params(0.5, 2.7, 3));
  EXPECT_NEAR(g.d_beta, -4.0, 1e-12);
  EXPECT_NEAR(g.d_gamma, 1.0 + 0.25 + 1.0 / 9.0, 1e-12);
  EXPECT_TRUE(g.u_kink);
  EXPECT_TRUE(g.v_kink);
}

TEST(FastGradients, MatchCentralDifferences) {
  const double h = 1e-6;
  const FastParams p = params(0.61, 1.3, 8);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<Complex> pts{{0.3, 0.2}};
  for (int k = 0; k < 30; ++k) pts.emplace_back(d(rng), d(rng));
  const auto close = [](double analytic, double numeric) {
    return std::abs(analytic - numeric) <= 1e-6 * std::max(std::abs(analytic), 1.0);
  };
  for (const Complex z : pts) {
    const FastGradients g = fast_wp_gradients(z, p);
    ASSERT_FALSE(g.u_kink || g.v_kink);

    FastParams a = p, b = p;
    a.beta_raw = softplus_inverse(p.beta() + h);
    b.beta_raw = softplus_inverse(p.beta() - h);
    EXPECT_TRUE(close(g.d_beta, (fast_wp(z, a) - fast_wp(z, b)) / (2 * h))) << z;

    a = p, b = p;
    a.gamma += h;
    b.gamma -= h;
    EXPECT_TRUE(close(g.d_gamma, (fast_wp(z, a) - fast_wp(z, b)) / (2 * h))) << z;

    const Complex du(h * p.omega1_norm, 0.0);
    EXPECT_TRUE(close(g.d_u, (fast_wp(z + du, p) - fast_wp(z - du, p)) / (2 * h))) << z;
    const Complex dv(0.0, h * p.omega3_norm);
    EXPECT_TRUE(close(g.d_v, (fast_wp(z + dv, p) - fast_wp(z - dv, p)) / (2 * h))) << z;
  }
}

TEST(FastTailBound, Values) {
  EXPECT_DOUBLE_EQ(fast_tail_bound(params(0.61, 1.0, 8)), 0.25);
  EXPECT_EQ(fast_tail_bound(params(0.61, 0.0, 8)), 0.0);
}

TEST(FastTailBound, BoundsDoubledTruncation) {
  const FastParams p8 = params(0.61, 1.0, 8);
  FastParams p16 = p8;
  p16.k_terms = 16;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-6.0, 6.0);
  for (int k = 0; k < 1000; ++k) {
    const Complex z(d(rng), d(rng));
    EXPECT_LE(std::abs(fast_wp(z, p8) - fast_wp(z, p16)), fast_tail_bound(p8));
  }
}

TEST(FastFeatures, Origin) {
  const FastParams p = params(0.5, 1.0, 3);
  const auto f = fast_features({0.0, 0.0}, p);
  EXPECT_NEAR(f[0], 2.0 + 1.0 + 0.25 + 1.0 / 9.0, 1e-12);
  EXPECT_EQ(f[1], 0.0);
  // The sin(kπv′) terms keep a slope of γπ Σ 1/k in v′ at the origin.
  EXPECT_NEAR(f[2], std::numbers::pi * (1.0 + 0.5 + 1.0 / 3.0), 1e-12);
  EXPECT_NEAR(f[3], 2.0, 1e-15);
}

TEST(FastFeatures, RadialOnlyWhenGammaZero) {
  const FastParams p = params(0.61, 0.0, 8);
  const auto f = fast_features({1.0, 0.0}, p);
  const double q = 1.0 + p.beta();
  EXPECT_NEAR(f[0], 1.0 / q, 1e-15);
  // u′ = 1 / omega1_norm, so ∂/∂u′ of 1/((u′ω1)² + β) is −2 omega1_norm / q².
  EXPECT_NEAR(f[1], -2.0 * p.omega1_norm / (q * q), 1e-12);
  EXPECT_EQ(f[2], 0.0);
  EXPECT_NEAR(f[3], 1.0 / q, 1e-15);
}

TEST(FastParams, Validation) {
  FastParams p;
  EXPECT_NO_THROW(p.validate());
  p.k_terms = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = FastParams{};
  p.omega1_norm = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
}

}  // namespace
}  // namespace wefpe
