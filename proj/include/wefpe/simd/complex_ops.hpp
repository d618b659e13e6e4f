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

#include <algorithm>

// Component-wise complex reciprocal powers shared by the scalar kernel and the
// principal-part evaluation. The AVX2 kernel mirrors these operations one for
// one; keep them in sync.
namespace wefpe::simd {

struct InversePowers {
  double sq_re, sq_im;    // 1/d²
  double cube_re, cube_im;  // 1/d³
};

inline InversePowers inverse_powers(double dx, double dy) {
  const double r2 = dx * dx + dy * dy;
  const double ir = dx / r2;
  const double ii = -dy / r2;
  const double t = ir * ii;
  const double sq_re = ir * ir - ii * ii;
  const double sq_im = t + t;
  return {sq_re, sq_im, sq_re * ir - sq_im * ii, sq_re * ii + sq_im * ir};
}

inline double clamp_abs(double x, double bound) {
  return std::min(std::max(x, -bound), bound);
}

}  // namespace wefpe::simd
