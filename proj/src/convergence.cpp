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

#include "wefpe/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wefpe/errors.hpp"

namespace wefpe {

std::vector<OrderingRow> ordering_benchmark(const LatticeConfig& cfg,
                                            std::span<const std::size_t> k_list,
                                            std::span<const Complex> points,
                                            int oracle_truncation) {
  if (k_list.empty()) throw ArgumentError("ordering_benchmark: empty k list");
  if (points.empty()) throw ArgumentError("ordering_benchmark: no sample points");

  LatticeConfig oracle_cfg = cfg;
  oracle_cfg.max_m = oracle_truncation;
  oracle_cfg.max_n = oracle_truncation;
  const WeierstrassP oracle(oracle_cfg);
  std::vector<WpPair> reference(points.size());
  oracle.evaluate(points, reference);

  const WeierstrassP sorted(cfg, SummationOrder::ModulusSorted);
  const WeierstrassP lexicographic(cfg, SummationOrder::Lexicographic);
  double max_modulus = 0.0;
  for (const Complex z : points) max_modulus = std::max(max_modulus, std::abs(z));

  std::vector<OrderingRow> rows;
  std::vector<WpPair> partial(points.size());
  for (const std::size_t k : k_list) {
    if (k == 0 || k > sorted.size()) {
      throw ArgumentError("ordering_benchmark: K must be in [1, " +
                          std::to_string(sorted.size()) + "]");
    }
    for (const WeierstrassP* wp : {&sorted, &lexicographic}) {
      OrderingRow row;
      row.k = k;
      row.order = wp->order();
      wp->evaluate(points, partial, k);
      row.errors.resize(points.size());
      double total = 0.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        row.errors[i] = std::abs(partial[i].wp - reference[i].wp);
        total += row.errors[i];
        row.max_abs_error = std::max(row.max_abs_error, row.errors[i]);
      }
      row.mean_abs_error = total / static_cast<double>(points.size());
      if (row.order == SummationOrder::ModulusSorted) {
        const auto& pts = wp->points();
        if (k == pts.size()) {
          row.bound = truncation_bound(max_modulus, cfg.first_excluded_radius());
        } else if (std::abs(pts[k]) > std::abs(pts[k - 1]) * (1.0 + 1e-12)) {
          row.bound = truncation_bound(max_modulus, std::abs(pts[k]));
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace wefpe
