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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wefpe/simd/kernels.hpp"

namespace wefpe {

using Complex = std::complex<double>;

// Γ(1/4)² / (2√(2π)): real half-period of the square lattice used for the
// g3 = 0 configuration.
inline constexpr double kLemniscaticHalfPeriod = 2.62205755429212;

struct HalfPeriods {
  Complex omega1;
  Complex omega3;
  // True when g3 ≠ 0: the periods are the placeholder pair (1, i) and do not
  // correspond to (g2, g3).
  bool general_case = false;
};

// Half-periods for invariants (g2, g3). Only the g3 = 0 case is computed;
// anything else returns the (1, i) placeholder with `general_case` set.
// Throws ConfigError when |g2³ − 27 g3²| ≤ eps.
HalfPeriods lemniscatic_half_periods(double g2, double g3, double eps);

enum class SummationOrder { ModulusSorted, Lexicographic };

struct LatticeConfig {
  double g2 = 1.0;
  double g3 = 0.0;
  Complex omega1{kLemniscaticHalfPeriod, 0.0};
  Complex omega3{0.0, kLemniscaticHalfPeriod};
  double eps = 1e-8;
  int max_m = 12;
  int max_n = 12;
  double term_clip = 5e3;
  double final_clip = 1e4;
  double pole_value = 5e2;

  // Throws ConfigError on a degenerate discriminant, Re ω1 ≤ 0, Im ω3 ≤ 0,
  // non-positive truncation or clip values.
  void validate() const;

  double pole_radius() const noexcept { return 15.0 * eps; }

  // Number of lattice points in the truncated sum.
  std::size_t term_count() const noexcept {
    return static_cast<std::size_t>(2 * max_m + 1) * static_cast<std::size_t>(2 * max_n + 1) - 1;
  }

  // Smallest modulus among lattice points just outside the truncation box.
  double first_excluded_radius() const noexcept;
};

struct WpPair {
  Complex wp;
  Complex wp_prime;
};

// Lattice points ω = 2mω1 + 2nω3, (m, n) ≠ (0, 0), |m| ≤ max_m, |n| ≤ max_n.
// ModulusSorted is a stable sort of the row-major (m, n) order by |ω|.
std::vector<Complex> enumerate_lattice(const LatticeConfig& cfg, SummationOrder order);

// Truncated ℘ and ℘′ with the stability controls (pole substitution, per-term
// and final clamping). Construction enumerates and caches the lattice, so keep
// one instance around for repeated evaluation; evaluation is const and
// thread-safe.
class WeierstrassP {
 public:
  explicit WeierstrassP(const LatticeConfig& cfg,
                        SummationOrder order = SummationOrder::ModulusSorted);

  WpPair operator()(Complex z) const { return partial(z, size()); }

  // Uses only the first `n_terms` lattice points of the summation order.
  WpPair partial(Complex z, std::size_t n_terms) const;

  void evaluate(std::span<const Complex> z, std::span<WpPair> out) const {
    evaluate(z, out, size());
  }
  void evaluate(std::span<const Complex> z, std::span<WpPair> out, std::size_t n_terms) const;

  // Distance from z to the nearest enumerated lattice point or the origin.
  double nearest_lattice_distance(Complex z) const;
  bool near_pole(Complex z) const { return nearest_lattice_distance(z) < cfg_.pole_radius(); }

  const LatticeConfig& config() const noexcept { return cfg_; }
  SummationOrder order() const noexcept { return order_; }
  const std::vector<Complex>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  LatticeConfig cfg_;
  SummationOrder order_;
  std::vector<Complex> points_;
  simd::LatticeTerms terms_;
};

// One-shot evaluation; builds the lattice on every call.
WpPair wp_pair(Complex z, const LatticeConfig& cfg,
               SummationOrder order = SummationOrder::ModulusSorted);

// 2|z| / r_max², the tail bound for a modulus-sorted sum truncated at radius
// r_max. Throws ArgumentError for r_max ≤ 0.
double truncation_bound(Complex z, double r_max);

// Right-hand side of the addition theorem,
//   −℘(z1) − ℘(z2) + ¼ ((℘′(z1) − ℘′(z2)) / (℘(z1) − ℘(z2)))²,
// from truncated evaluations. Throws PoleError when z1 + z2 is within the pole
// radius of a lattice point and DegeneratePairError when z1 − z2 is within
// that radius of a lattice point or |℘(z1) − ℘(z2)| < 1e-6 (|℘(z1)| + |℘(z2)| + 1).
Complex addition_rhs(Complex z1, Complex z2, const WeierstrassP& wp);
Complex addition_rhs(Complex z1, Complex z2, const LatticeConfig& cfg);

// Invariants of the lattice spanned by (2ω1, 2ω3): g2 = 60 Σ' ω⁻⁴ and
// g3 = 140 Σ' ω⁻⁶, Richardson-extrapolated from two square truncations.
struct LatticeInvariants {
  Complex g2;
  Complex g3;
};
LatticeInvariants lattice_invariants(Complex omega1, Complex omega3);

}  // namespace wefpe
