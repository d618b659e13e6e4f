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

#include "wefpe/lattice.hpp"

namespace wefpe {

struct OrderingRow {
  std::size_t k = 0;
  SummationOrder order = SummationOrder::ModulusSorted;
  double mean_abs_error = 0.0;
  double max_abs_error = 0.0;
  // 2 max|z| / R², present for modulus-sorted rows that end on a complete
  // shell (R = modulus of the first omitted point).
  std::optional<double> bound;
  // |℘_K(z) − ℘_oracle(z)| per sample point.
  std::vector<double> errors;
};

// For each K, error of the first K terms in each summation order against a
// modulus-sorted evaluation at `oracle_truncation` (max_m = max_n). Throws
// ArgumentError for an empty k list, K = 0 or K larger than the lattice.
std::vector<OrderingRow> ordering_benchmark(const LatticeConfig& cfg,
                                            std::span<const std::size_t> k_list,
                                            std::span<const Complex> points,
                                            int oracle_truncation = 48);

}  // namespace wefpe
