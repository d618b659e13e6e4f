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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wefpe/lattice.hpp"

namespace wefpe {

// Residuals of the classical ℘ identities over sampled points. Residuals are
// relative: |a − b| / max(|b|, 1), except the differential equation, which is
// normalized by |℘′|² + 1.
struct IdentityReport {
  // (℘′)² − 4℘³ + g2℘ + g3 with the invariants of the configured lattice.
  double max_diffeq_residual = 0.0;
  // Same, with the nominal (g2, g3) from the configuration.
  double max_diffeq_residual_nominal = 0.0;
  double max_addition_residual = 0.0;
  double max_periodicity_residual = 0.0;
  double max_parity_residual = 0.0;
  // Least-squares c in ℘(z) − 1/z² ≈ c z² near the origin (real part).
  double laurent_coeff_estimate = 0.0;
  std::size_t samples_used = 0;
  std::size_t addition_pairs_used = 0;
  LatticeInvariants lattice;
  double nominal_g2 = 0.0;
  double nominal_g3 = 0.0;
};

// `count` points uniform in the fundamental cell {s·2ω1 + t·2ω3 : s, t ∈ [0, 1)},
// rejecting those within 0.2|ω1| of a lattice point.
std::vector<Complex> sample_fundamental_cell(const LatticeConfig& cfg, std::size_t count,
                                             std::uint64_t seed);

// Throws ArgumentError for sample_count < 10.
IdentityReport identity_report(const LatticeConfig& cfg, std::size_t sample_count,
                               std::uint64_t rng_seed);

// Thresholds applied by `wefpe verify`.
struct IdentityThresholds {
  double diffeq = 1e-2;
  double addition = 1e-2;
  double periodicity = 2e-2;
  double parity = 1e-12;
  // Relative deviation of the Laurent estimate from g2_lattice / 20.
  double laurent = 5e-2;
};

bool identity_report_passes(const IdentityReport& report,
                            const IdentityThresholds& thresholds = {});

}  // namespace wefpe
