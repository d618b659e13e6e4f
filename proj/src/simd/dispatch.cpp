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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "wefpe/errors.hpp"
#include "wefpe/simd/kernels.hpp"

namespace wefpe::simd {

namespace {

// -1: automatic; otherwise the forced Isa value.
std::atomic<int> g_override{-1};

std::optional<Isa> env_override() noexcept {
  const char* v = std::getenv("WEFPE_ISA");
  if (v == nullptr) return std::nullopt;
  if (std::strcmp(v, "scalar") == 0) return Isa::Scalar;
  if (std::strcmp(v, "avx2") == 0) return Isa::Avx2;
  return std::nullopt;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(WEFPE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() noexcept { return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() noexcept {
  std::optional<Isa> wanted;
  if (const int forced = g_override.load(std::memory_order_relaxed); forced >= 0) {
    wanted = static_cast<Isa>(forced);
  } else {
    wanted = env_override();
  }
  if (!wanted) return best_isa();
  return isa_supported(*wanted) ? *wanted : Isa::Scalar;
}

void set_isa_override(std::optional<Isa> isa) noexcept {
  g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void wp_series(Isa isa, const LatticeTerms& terms, std::size_t n_terms,
               double term_clip, const SeriesBatch& batch) {
  const std::size_t n = batch.z_re.size();
  if (batch.z_im.size() != n || batch.wp_re.size() != n || batch.wp_im.size() != n ||
      batch.wpp_re.size() != n || batch.wpp_im.size() != n) {
    throw ShapeError("wp_series: batch spans differ in length");
  }
  if (n_terms > terms.size()) throw ArgumentError("wp_series: n_terms exceeds lattice size");
#if defined(WEFPE_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_supported(Isa::Avx2)) {
    detail::wp_series_avx2(terms, n_terms, term_clip, batch);
    return;
  }
#endif
  (void)isa;
  detail::wp_series_scalar(terms, n_terms, term_clip, batch, 0, n);
}

double dot(Isa isa, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
#if defined(WEFPE_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_supported(Isa::Avx2)) {
    return detail::dot_avx2(a.data(), b.data(), a.size());
  }
#endif
  (void)isa;
  return detail::dot_scalar(a.data(), b.data(), a.size());
}

}  // namespace wefpe::simd
