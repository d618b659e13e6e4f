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

// Built with -mavx2 only (no -mfma): products and sums must round exactly as
// in the scalar reference.
#include <immintrin.h>

#include "wefpe/simd/kernels.hpp"

namespace wefpe::simd::detail {

namespace {

inline __m256d clamp_abs(__m256d x, __m256d lo, __m256d hi) {
  return _mm256_min_pd(_mm256_max_pd(x, lo), hi);
}

}  // namespace

void wp_series_avx2(const LatticeTerms& terms, std::size_t n_terms,
                    double term_clip, const SeriesBatch& batch) {
  const std::size_t n = batch.z_re.size();
  const __m256d hi = _mm256_set1_pd(term_clip);
  const __m256d lo = _mm256_set1_pd(-term_clip);
  const __m256d minus_two = _mm256_set1_pd(-2.0);
  const __m256d neg_zero = _mm256_set1_pd(-0.0);

  std::size_t p = 0;
  for (; p + 4 <= n; p += 4) {
    const __m256d zr = _mm256_loadu_pd(batch.z_re.data() + p);
    const __m256d zi = _mm256_loadu_pd(batch.z_im.data() + p);
    __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
    __m256d accp_re = _mm256_setzero_pd(), accp_im = _mm256_setzero_pd();
    for (std::size_t k = 0; k < n_terms; ++k) {
      const __m256d dx = _mm256_sub_pd(zr, _mm256_set1_pd(terms.re[k]));
      const __m256d dy = _mm256_sub_pd(zi, _mm256_set1_pd(terms.im[k]));
      const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      const __m256d ir = _mm256_div_pd(dx, r2);
      const __m256d ii = _mm256_div_pd(_mm256_xor_pd(dy, neg_zero), r2);
      const __m256d t = _mm256_mul_pd(ir, ii);
      const __m256d sq_re = _mm256_sub_pd(_mm256_mul_pd(ir, ir), _mm256_mul_pd(ii, ii));
      const __m256d sq_im = _mm256_add_pd(t, t);
      const __m256d cube_re =
          _mm256_sub_pd(_mm256_mul_pd(sq_re, ir), _mm256_mul_pd(sq_im, ii));
      const __m256d cube_im =
          _mm256_add_pd(_mm256_mul_pd(sq_re, ii), _mm256_mul_pd(sq_im, ir));

      acc_re = _mm256_add_pd(
          acc_re, clamp_abs(_mm256_sub_pd(sq_re, _mm256_set1_pd(terms.inv_sq_re[k])), lo, hi));
      acc_im = _mm256_add_pd(
          acc_im, clamp_abs(_mm256_sub_pd(sq_im, _mm256_set1_pd(terms.inv_sq_im[k])), lo, hi));
      accp_re = _mm256_add_pd(accp_re, clamp_abs(_mm256_mul_pd(minus_two, cube_re), lo, hi));
      accp_im = _mm256_add_pd(accp_im, clamp_abs(_mm256_mul_pd(minus_two, cube_im), lo, hi));
    }
    _mm256_storeu_pd(batch.wp_re.data() + p, acc_re);
    _mm256_storeu_pd(batch.wp_im.data() + p, acc_im);
    _mm256_storeu_pd(batch.wpp_re.data() + p, accp_re);
    _mm256_storeu_pd(batch.wpp_im.data() + p, accp_im);
  }
  wp_series_scalar(terms, n_terms, term_clip, batch, p, n);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace wefpe::simd::detail
