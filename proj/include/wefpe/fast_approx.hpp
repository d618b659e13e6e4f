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

#pragma once

#include <array>

#include "wefpe/lattice.hpp"
#include "wefpe/math.hpp"

namespace wefpe {

// Fourier-like surrogate for ℘ used in fine-tuning:
//   1/(|z|² + β) + Σ_{k=1..K} (γ/k²) [cos(kπu′) e^{−kπ|v′|} + sin(kπv′) e^{−kπ|u′|}]
// with u′ = Re z / omega1_norm, v′ = Im z / omega3_norm and β = softplus(beta_raw).
struct FastParams {
  double beta_raw = softplus_inverse(0.610);
  double gamma = 1.0;
  double omega1_norm = 1.085;
  double omega3_norm = kLemniscaticHalfPeriod;
  int k_terms = 8;

  double beta() const { return softplus(beta_raw); }

  // Throws ConfigError for non-positive normalizers or k_terms < 1.
  void validate() const;
};

// Partial derivatives of fast_wp with respect to β, γ, u′ and v′. On a kink
// (u′ = 0 or v′ = 0) d|x|/dx is taken as 0 and the matching flag is set.
struct FastGradients {
  double d_beta = 0.0;
  double d_gamma = 0.0;
  double d_u = 0.0;
  double d_v = 0.0;
  bool u_kink = false;
  bool v_kink = false;
};

double fast_wp(Complex z, const FastParams& p);
FastGradients fast_wp_gradients(Complex z, const FastParams& p);

// 2|γ|/K: bounds every omitted tail Σ_{k>K}, since each bracket is at most 2
// in magnitude and Σ_{k>K} 1/k² < 1/K.
double fast_tail_bound(const FastParams& p);

// Four-wide features for the encoding pipeline in fast mode:
// [fast_wp, ∂/∂u′, ∂/∂v′, 1/(|z|² + β)].
std::array<double, 4> fast_features(Complex z, const FastParams& p);

}  // namespace wefpe
