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

#include "wefpe/simd/complex_ops.hpp"
#include "wefpe/simd/kernels.hpp"

namespace wefpe::simd::detail {

void wp_series_scalar(const LatticeTerms& terms, std::size_t n_terms,
                      double term_clip, const SeriesBatch& batch,
                      std::size_t first, std::size_t last) {
  for (std::size_t p = first; p < last; ++p) {
    const double zr = batch.z_re[p];
    const double zi = batch.z_im[p];
    double acc_re = 0.0, acc_im = 0.0;
    double accp_re = 0.0, accp_im = 0.0;
    for (std::size_t k = 0; k < n_terms; ++k) {
      const InversePowers inv = inverse_powers(zr - terms.re[k], zi - terms.im[k]);
      acc_re += clamp_abs(inv.sq_re - terms.inv_sq_re[k], term_clip);
      acc_im += clamp_abs(inv.sq_im - terms.inv_sq_im[k], term_clip);
      accp_re += clamp_abs(-2.0 * inv.cube_re, term_clip);
      accp_im += clamp_abs(-2.0 * inv.cube_im, term_clip);
    }
    batch.wp_re[p] = acc_re;
    batch.wp_im[p] = acc_im;
    batch.wpp_re[p] = accp_re;
    batch.wpp_im[p] = accp_im;
  }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace wefpe::simd::detail
