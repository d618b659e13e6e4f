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

#include "wefpe/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "wefpe/errors.hpp"
#include "wefpe/simd/kernels.hpp"

namespace wefpe {

namespace {

std::vector<double> row_norms(const EncodingGrid& grid, std::size_t first) {
  std::vector<double> norms(grid.rows() - first);
  for (std::size_t r = first; r < grid.rows(); ++r) {
    const double n = std::sqrt(simd::dot(grid.row(r), grid.row(r)));
    if (!(n > 0.0)) {
      throw DegenerateRowError(r, "zero-norm encoding row " + std::to_string(r));
    }
    norms[r - first] = n;
  }
  return norms;
}

void check_grid_shape(const EncodingGrid& grid, int height, int width) {
  if (height < 1 || width < 1 ||
      grid.rows() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width) + 1) {
    throw ShapeError("grid has " + std::to_string(grid.rows()) + " rows, expected " +
                     std::to_string(height) + "*" + std::to_string(width) + "+1");
  }
}

}  // namespace

Matrix cosine_similarity_matrix(const EncodingGrid& grid, bool include_cls) {
  const std::size_t first = include_cls ? 0 : 1;
  if (grid.rows() <= first) return Matrix(0, 0);
  const std::vector<double> norms = row_norms(grid, first);
  const std::size_t n = norms.size();
  Matrix s(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    s(a, a) = 1.0;
    for (std::size_t b = a + 1; b < n; ++b) {
      const double c = simd::dot(grid.row(a + first), grid.row(b + first)) / (norms[a] * norms[b]);
      s(a, b) = c;
      s(b, a) = c;
    }
  }
  return s;
}

std::vector<PairSample> pairwise_samples(const EncodingGrid& grid, int height, int width) {
  check_grid_shape(grid, height, width);
  const Matrix sim = cosine_similarity_matrix(grid, false);
  const auto n = static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  const auto w = static_cast<std::size_t>(width);

  std::vector<PairSample> samples;
  samples.reserve(n * (n - 1) / 2);
  double max_distance = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double di = static_cast<double>(a / w) - static_cast<double>(b / w);
      const double dj = static_cast<double>(a % w) - static_cast<double>(b % w);
      const double d = std::sqrt(di * di + dj * dj);
      max_distance = std::max(max_distance, d);
      samples.push_back({d, 0.0, sim(a, b)});
    }
  }
  for (PairSample& s : samples) s.rel_distance = 100.0 * s.distance / max_distance;
  return samples;
}

std::vector<BinStat> bin_and_aggregate(std::span<const PairSample> samples, int n_bins) {
  if (n_bins < 1) throw ArgumentError("bin_and_aggregate: n_bins must be >= 1");
  if (samples.empty()) throw ArgumentError("bin_and_aggregate: no samples");
  const auto nb = static_cast<std::size_t>(n_bins);
  std::vector<double> sum(nb, 0.0);
  std::vector<std::size_t> count(nb, 0);
  for (const PairSample& s : samples) {
    const double scaled = s.rel_distance / 100.0 * static_cast<double>(nb);
    const auto bin = std::min(static_cast<std::size_t>(std::max(scaled, 0.0)), nb - 1);
    sum[bin] += s.similarity;
    ++count[bin];
  }
  std::vector<BinStat> bins;
  const double width = 100.0 / static_cast<double>(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    if (count[k] == 0) continue;
    bins.push_back({(static_cast<double>(k) + 0.5) * width,
                    sum[k] / static_cast<double>(count[k]), 0.0, count[k]});
  }
  const auto [lo, hi] = std::minmax_element(bins.begin(), bins.end(), [](auto& a, auto& b) {
    return a.mean_similarity < b.mean_similarity;
  });
  const double lo_v = lo->mean_similarity, span_v = hi->mean_similarity - lo->mean_similarity;
  for (BinStat& b : bins) {
    const double t = span_v > 0.0 ? (b.mean_similarity - lo_v) / span_v : 1.0;
    b.mapped_similarity = kMappedLow + (kMappedHigh - kMappedLow) * t;
  }
  return bins;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("pearson: length mismatch");
  if (x.size() < 2) throw ArgumentError("pearson: need at least two points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const auto flat = [n](double ss, double mean) {
    return std::sqrt(ss / n) <= 1e-12 * std::max(std::abs(mean), 1e-300);
  };
  if (flat(sxx, mx) || flat(syy, my)) {
    throw UndefinedCorrelationError("pearson: input has no variation");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

DecayReport decay_report(const EncodingGrid& grid, int height, int width, int n_bins) {
  const std::vector<PairSample> samples = pairwise_samples(grid, height, width);
  if (samples.empty()) throw InsufficientDataError("decay_report: grid has fewer than two patches");
  DecayReport report;
  report.n_pairs = samples.size();
  report.n_bins = static_cast<std::size_t>(n_bins);
  report.bins = bin_and_aggregate(samples, n_bins);
  if (report.bins.size() < 2) {
    throw InsufficientDataError("decay_report: fewer than two non-empty bins");
  }

  std::vector<double> centers, means;
  for (const BinStat& b : report.bins) {
    centers.push_back(b.center);
    means.push_back(b.mean_similarity);
  }
  report.pearson_rho = pearson(centers, means);

  std::vector<double> rel(samples.size()), sim(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    rel[i] = samples[i].rel_distance;
    sim[i] = samples[i].similarity;
  }
  report.raw_pearson_rho = pearson(rel, sim);

  std::size_t decreasing = 0;
  for (std::size_t k = 1; k < means.size(); ++k) decreasing += means[k] < means[k - 1] ? 1 : 0;
  report.monotonicity = static_cast<double>(decreasing) / static_cast<double>(means.size() - 1);

  report.first_bin_mean = means.front();
  report.last_bin_mean = means.back();
  const double first = report.bins.front().mapped_similarity;
  const double last = report.bins.back().mapped_similarity;
  report.decay_magnitude = (first - last) / first;
  return report;
}

EncodingGrid fuse_with_noise(const EncodingGrid& grid, std::uint64_t noise_seed, int dim) {
  if (dim < 0 || static_cast<std::size_t>(dim) != grid.cols()) {
    throw ShapeError("fuse_with_noise: dim " + std::to_string(dim) + " != model_dim " +
                     std::to_string(grid.cols()));
  }
  std::mt19937_64 rng(noise_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  EncodingGrid fused = grid;
  for (std::size_t r = 1; r < fused.rows(); ++r) {
    for (double& x : fused.row(r)) x = normal(rng) + x;
  }
  return fused;
}

EncodingGrid random_normal_grid(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  EncodingGrid g(rows, cols);
  for (double& x : g.data()) x = normal(rng);
  return g;
}

Matrix patch_rows(const EncodingGrid& grid) {
  if (grid.rows() == 0) return {};
  Matrix m(grid.rows() - 1, grid.cols());
  std::copy(grid.data().begin() + static_cast<std::ptrdiff_t>(grid.cols()), grid.data().end(),
            m.data.begin());
  return m;
}

}  // namespace wefpe
