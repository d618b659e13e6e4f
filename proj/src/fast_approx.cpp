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

#include "wefpe/fast_approx.hpp"

#include <cmath>
#include <numbers>

#include "wefpe/errors.hpp"

namespace wefpe {

namespace {

double sign_or_zero(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

struct Coords {
  double u, v, radial_denominator;
};

Coords coords(Complex z, const FastParams& p) {
  return {z.real() / p.omega1_norm, z.imag() / p.omega3_norm, std::norm(z) + p.beta()};
}

}  // namespace

void FastParams::validate() const {
  if (!(omega1_norm > 0.0) || !(omega3_norm > 0.0)) {
    throw ConfigError("fast: omega1_norm and omega3_norm must be positive");
  }
  if (k_terms < 1) throw ConfigError("fast: k_terms must be >= 1");
}

double fast_wp(Complex z, const FastParams& p) {
  const Coords c = coords(z, p);
  double series = 0.0;
  for (int k = 1; k <= p.k_terms; ++k) {
    const double kpi = k * std::numbers::pi;
    const double bracket = std::cos(kpi * c.u) * std::exp(-kpi * std::abs(c.v)) +
                           std::sin(kpi * c.v) * std::exp(-kpi * std::abs(c.u));
    series += p.gamma / (static_cast<double>(k) * k) * bracket;
  }
  return 1.0 / c.radial_denominator + series;
}

FastGradients fast_wp_gradients(Complex z, const FastParams& p) {
  const Coords c = coords(z, p);
  const double su = sign_or_zero(c.u);
  const double sv = sign_or_zero(c.v);
  FastGradients g;
  g.u_kink = c.u == 0.0;
  g.v_kink = c.v == 0.0;

  const double inv_r = 1.0 / c.radial_denominator;
  g.d_beta = -inv_r * inv_r;
  // |z|² = (u′ ω1)² + (v′ ω3)².
  g.d_u = -2.0 * c.u * p.omega1_norm * p.omega1_norm * inv_r * inv_r;
  g.d_v = -2.0 * c.v * p.omega3_norm * p.omega3_norm * inv_r * inv_r;

  for (int k = 1; k <= p.k_terms; ++k) {
    const double kpi = k * std::numbers::pi;
    const double w = 1.0 / (static_cast<double>(k) * k);
    const double cu = std::cos(kpi * c.u), snu = std::sin(kpi * c.u);
    const double cv = std::cos(kpi * c.v), snv = std::sin(kpi * c.v);
    const double ev = std::exp(-kpi * std::abs(c.v));
    const double eu = std::exp(-kpi * std::abs(c.u));
    g.d_gamma += w * (cu * ev + snv * eu);
    g.d_u += p.gamma * w * (-kpi * snu * ev - kpi * su * snv * eu);
    g.d_v += p.gamma * w * (-kpi * sv * cu * ev + kpi * cv * eu);
  }
  return g;
}

double fast_tail_bound(const FastParams& p) {
  return 2.0 * std::abs(p.gamma) / static_cast<double>(p.k_terms);
}

std::array<double, 4> fast_features(Complex z, const FastParams& p) {
  const FastGradients g = fast_wp_gradients(z, p);
  return {fast_wp(z, p), g.d_u, g.d_v, 1.0 / (std::norm(z) + p.beta())};
}

}  // namespace wefpe
