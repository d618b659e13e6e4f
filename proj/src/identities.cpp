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

#include "wefpe/identities.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wefpe/errors.hpp"

namespace wefpe {

namespace {

double rel_residual(Complex value, Complex reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1.0);
}

}  // namespace

std::vector<Complex> sample_fundamental_cell(const LatticeConfig& cfg, std::size_t count,
                                             std::uint64_t seed) {
  const WeierstrassP wp(cfg);
  const double exclusion = 0.2 * std::abs(cfg.omega1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> points;
  points.reserve(count);
  while (points.size() < count) {
    const double s = unit(rng);
    const double t = unit(rng);
    const Complex z = 2.0 * s * cfg.omega1 + 2.0 * t * cfg.omega3;
    if (wp.nearest_lattice_distance(z) >= exclusion) points.push_back(z);
  }
  return points;
}

IdentityReport identity_report(const LatticeConfig& cfg, std::size_t sample_count,
                               std::uint64_t rng_seed) {
  if (sample_count < 10) throw ArgumentError("identity_report: sample_count must be >= 10");
  const WeierstrassP wp(cfg);
  const std::vector<Complex> z = sample_fundamental_cell(cfg, sample_count, rng_seed);

  IdentityReport report;
  report.samples_used = z.size();
  report.nominal_g2 = cfg.g2;
  report.nominal_g3 = cfg.g3;
  report.lattice = lattice_invariants(cfg.omega1, cfg.omega3);
  const Complex g2 = report.lattice.g2;
  const Complex g3 = report.lattice.g3;

  std::vector<WpPair> at(z.size());
  wp.evaluate(z, at);

  const double exclusion = 0.2 * std::abs(cfg.omega1);
  for (std::size_t k = 0; k < z.size(); ++k) {
    const Complex p = at[k].wp;
    const Complex dp = at[k].wp_prime;
    const double scale = std::norm(dp) + 1.0;
    report.max_diffeq_residual =
        std::max(report.max_diffeq_residual, std::abs(dp * dp - 4.0 * p * p * p + g2 * p + g3) / scale);
    report.max_diffeq_residual_nominal =
        std::max(report.max_diffeq_residual_nominal,
                 std::abs(dp * dp - 4.0 * p * p * p + cfg.g2 * p + cfg.g3) / scale);

    const WpPair neg = wp(-z[k]);
    report.max_parity_residual =
        std::max({report.max_parity_residual, rel_residual(neg.wp, p), rel_residual(-neg.wp_prime, dp)});

    const WpPair shifted = wp(z[k] + 2.0 * cfg.omega1);
    report.max_periodicity_residual =
        std::max(report.max_periodicity_residual, rel_residual(shifted.wp, p));

    const Complex z2 = z[(k + 1) % z.size()];
    const Complex sum = z[k] + z2;
    if (wp.nearest_lattice_distance(sum) < exclusion) continue;
    try {
      const Complex rhs = addition_rhs(z[k], z2, wp);
      report.max_addition_residual =
          std::max(report.max_addition_residual, rel_residual(rhs, wp(sum).wp));
      ++report.addition_pairs_used;
    } catch (const DegeneratePairError&) {
    }
  }

  // Laurent coefficient: ℘(z) − 1/z² = c z² + O(z⁴) with c = g2/20.
  std::mt19937_64 rng(rng_seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> radius(0.01, 0.05);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
  const double r0 = std::abs(cfg.omega1);
  Complex numerator = 0.0;
  double denominator = 0.0;
  for (int i = 0; i < 64; ++i) {
    const Complex s = std::polar(radius(rng) * r0, angle(rng));
    const Complex s2 = s * s;
    numerator += std::conj(s2) * (wp(s).wp - 1.0 / s2);
    denominator += std::norm(s2);
  }
  report.laurent_coeff_estimate = (numerator / denominator).real();
  return report;
}

bool identity_report_passes(const IdentityReport& report, const IdentityThresholds& t) {
  const double laurent_target = report.lattice.g2.real() / 20.0;
  const double laurent_err =
      std::abs(report.laurent_coeff_estimate - laurent_target) / std::abs(laurent_target);
  return report.max_diffeq_residual < t.diffeq && report.max_addition_residual < t.addition &&
         report.max_periodicity_residual < t.periodicity &&
         report.max_parity_residual < t.parity && laurent_err < t.laurent;
}

}  // namespace wefpe
