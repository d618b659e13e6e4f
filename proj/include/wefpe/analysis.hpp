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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wefpe/encoding.hpp"

namespace wefpe {

// Dense row-major matrix for analysis outputs.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

struct PairSample {
  double distance = 0.0;      // Euclidean, in patch units
  double rel_distance = 0.0;  // 100 · distance / max distance
  double similarity = 0.0;    // cosine
};

struct BinStat {
  double center = 0.0;
  double mean_similarity = 0.0;
  // Bin mean min-max mapped onto [kMappedLow, kMappedHigh].
  double mapped_similarity = 0.0;
  std::size_t count = 0;
};

// Display band for mapped similarities.
inline constexpr double kMappedLow = 13.5;
inline constexpr double kMappedHigh = 16.5;

struct DecayReport {
  std::size_t n_pairs = 0;
  std::size_t n_bins = 0;
  std::vector<BinStat> bins;  // non-empty bins only, in distance order
  double pearson_rho = 0.0;   // bin centre vs bin mean
  double raw_pearson_rho = 0.0;  // rel_distance vs similarity over all pairs
  double monotonicity = 0.0;     // share of strictly decreasing consecutive bins
  double decay_magnitude = 0.0;  // (first − last) / first on the mapped scale
  double first_bin_mean = 0.0;
  double last_bin_mean = 0.0;
};

// Cosine similarity between patch rows (and the class row when include_cls).
// Symmetric with an exact unit diagonal. Throws DegenerateRowError naming the
// first zero-norm row (grid row index).
Matrix cosine_similarity_matrix(const EncodingGrid& grid, bool include_cls = false);

// One sample per unordered patch pair, pairs (a, b) with a < b in patch order.
// Throws ShapeError unless grid.rows() == height·width + 1.
std::vector<PairSample> pairwise_samples(const EncodingGrid& grid, int height, int width);

// Equal-width bins over rel_distance ∈ [0, 100]; returns the non-empty ones.
// Throws ArgumentError for n_bins < 1 or no samples.
std::vector<BinStat> bin_and_aggregate(std::span<const PairSample> samples, int n_bins = 80);

// Sample Pearson correlation. Throws ArgumentError on length mismatch or
// fewer than two points and UndefinedCorrelationError when either input's
// spread is below 1e-12 of its magnitude.
double pearson(std::span<const double> x, std::span<const double> y);

// Throws InsufficientDataError when fewer than two bins are non-empty.
DecayReport decay_report(const EncodingGrid& grid, int height, int width, int n_bins = 80);

// Adds a fresh standard-normal vector to every patch row; class row unchanged.
// Throws ShapeError when dim != grid.cols().
EncodingGrid fuse_with_noise(const EncodingGrid& grid, std::uint64_t noise_seed, int dim);

// Same-shape grid of seeded standard normals (class row included), the
// unstructured baseline for the structural comparisons.
EncodingGrid random_normal_grid(std::size_t rows, std::size_t cols, std::uint64_t seed);

// Patch rows only (drops the class row).
Matrix patch_rows(const EncodingGrid& grid);

struct PcaResult {
  Matrix coordinates;                   // N × 2
  std::array<double, 2> eigenvalues{};  // covariance eigenvalues
  std::array<double, 2> explained_ratio{};  // eigenvalue / total variance
  std::array<std::vector<double>, 2> components;
  std::array<int, 2> iterations{};
};

inline constexpr int kPcaMaxIterations = 1000;
inline constexpr double kPcaTolerance = 1e-10;

// Top-2 principal components by power iteration with deflation on the
// covariance of mean-centred rows. Components are orthonormal with their first
// non-negligible coordinate positive. Throws ArgumentError for fewer than 3 rows.
PcaResult pca_top2(const Matrix& rows);

}  // namespace wefpe
