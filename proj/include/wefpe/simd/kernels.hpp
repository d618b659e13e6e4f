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
#include <optional>
#include <span>
#include <vector>

// Data-parallel inner loops. Every kernel has a portable scalar reference and
// optional ISA-specific variants chosen at runtime. The lattice-sum kernels are
// vectorised across evaluation points, never across lattice terms, so every
// lane accumulates its terms in exactly the scalar order and all variants are
// bit-identical.
namespace wefpe::simd {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa) noexcept;

// Compiled in and supported by the running CPU.
bool isa_supported(Isa isa) noexcept;

// Widest supported ISA.
Isa best_isa() noexcept;

// best_isa(), unless overridden by set_isa_override() or the WEFPE_ISA
// environment variable ("scalar" / "avx2").
Isa active_isa() noexcept;

// Forces a kernel family; std::nullopt restores automatic selection.
// Requesting an unsupported ISA falls back to Scalar.
void set_isa_override(std::optional<Isa> isa) noexcept;

// Lattice points in summation order, structure-of-arrays, with 1/ω² cached.
struct LatticeTerms {
  std::vector<double> re;
  std::vector<double> im;
  std::vector<double> inv_sq_re;
  std::vector<double> inv_sq_im;

  std::size_t size() const noexcept { return re.size(); }
};

// Points in, correction-series sums out. All spans have the same length.
struct SeriesBatch {
  std::span<const double> z_re;
  std::span<const double> z_im;
  std::span<double> wp_re;
  std::span<double> wp_im;
  std::span<double> wpp_re;
  std::span<double> wpp_im;
};

// For each point z, sums the first `n_terms` lattice terms
//   1/(z-ω)² - 1/ω²   and   -2/(z-ω)³
// with each real/imaginary part clamped to ±term_clip before accumulation.
// Points must not coincide with a lattice point.
void wp_series(Isa isa, const LatticeTerms& terms, std::size_t n_terms,
               double term_clip, const SeriesBatch& batch);

inline void wp_series(const LatticeTerms& terms, std::size_t n_terms,
                      double term_clip, const SeriesBatch& batch) {
  wp_series(active_isa(), terms, n_terms, term_clip, batch);
}

// Inner product. The AVX2 variant reassociates the sum, so results agree with
// the scalar reference to rounding, not bit-for-bit.
double dot(Isa isa, std::span<const double> a, std::span<const double> b);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return dot(active_isa(), a, b);
}

namespace detail {

void wp_series_scalar(const LatticeTerms& terms, std::size_t n_terms,
                      double term_clip, const SeriesBatch& batch,
                      std::size_t first, std::size_t last);
double dot_scalar(const double* a, const double* b, std::size_t n);

#if defined(WEFPE_HAVE_AVX2)
void wp_series_avx2(const LatticeTerms& terms, std::size_t n_terms,
                    double term_clip, const SeriesBatch& batch);
double dot_avx2(const double* a, const double* b, std::size_t n);
#endif

}  // namespace detail
}  // namespace wefpe::simd
