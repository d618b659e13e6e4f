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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "wefpe/analysis.hpp"
#include "wefpe/errors.hpp"

namespace wefpe {
namespace {

EncodingGrid default_grid() { return generate_encoding_grid(EncodingConfig{}); }

TEST(CosineSimilarity, SymmetricUnitDiagonal) {
  const Matrix s = cosine_similarity_matrix(default_grid());
  ASSERT_EQ(s.rows, 196u);
  ASSERT_EQ(s.cols, 196u);
  for (std::size_t a = 0; a < s.rows; ++a) {
    EXPECT_EQ(s(a, a), 1.0);
    for (std::size_t b = 0; b < s.cols; ++b) {
      EXPECT_LT(std::abs(s(a, b) - s(b, a)), 1e-12);
      EXPECT_LE(std::abs(s(a, b)), 1.0 + 1e-12);
    }
  }
  EXPECT_EQ(cosine_similarity_matrix(default_grid(), true).rows, 197u);
}

TEST(CosineSimilarity, PositionalGainInvariance) {
  EncodingConfig cfg;
  const Matrix a = cosine_similarity_matrix(generate_encoding_grid(cfg));
  cfg.beta_pos = 10.0;
  const Matrix b = cosine_similarity_matrix(generate_encoding_grid(cfg));
  for (std::size_t k = 0; k < a.data.size(); ++k) EXPECT_NEAR(a.data[k], b.data[k], 1e-12);
}

TEST(CosineSimilarity, ZeroRowIsReported) {
  EncodingGrid g(4, 3, {1, 0, 0, 1, 2, 3, 0, 0, 0, 4, 5, 6});
  try {
    cosine_similarity_matrix(g);
    FAIL() << "expected DegenerateRowError";
  } catch (const DegenerateRowError& e) {
    EXPECT_EQ(e.row(), 2u);
  }
}

TEST(PairwiseSamples, Counts) {
  const auto s = pairwise_samples(default_grid(), 14, 14);
  EXPECT_EQ(s.size(), 19110u);
  double mx = 0.0;
  for (const PairSample& p : s) mx = std::max(mx, p.rel_distance);
  EXPECT_EQ(mx, 100.0);
  EXPECT_THROW(pairwise_samples(default_grid(), 14, 13), ShapeError);
}

TEST(PairwiseSamples, TwoByOne) {
  EncodingGrid g(3, 2, {0, 1, 1, 0, 1, 1});
  const auto s = pairwise_samples(g, 2, 1);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].distance, 1.0);
  EXPECT_EQ(s[0].rel_distance, 100.0);
  EXPECT_NEAR(s[0].similarity, std::sqrt(0.5), 1e-15);
}

TEST(BinAndAggregate, SingleBinIsGlobalMean) {
  const auto s = pairwise_samples(default_grid(), 14, 14);
  const auto bins = bin_and_aggregate(s, 1);
  ASSERT_EQ(bins.size(), 1u);
  double mean = 0.0;
  for (const PairSample& p : s) mean += p.similarity;
  mean /= static_cast<double>(s.size());
  EXPECT_NEAR(bins[0].mean_similarity, mean, 1e-12);
  EXPECT_EQ(bins[0].count, 19110u);
}

TEST(BinAndAggregate, EightyBinsCoverAllPairs) {
  const auto s = pairwise_samples(default_grid(), 14, 14);
  const auto bins = bin_and_aggregate(s, 80);
  EXPECT_LE(bins.size(), 80u);
  std::size_t total = 0;
  for (const BinStat& b : bins) {
    total += b.count;
    EXPECT_GE(b.mapped_similarity, kMappedLow);
    EXPECT_LE(b.mapped_similarity, kMappedHigh);
  }
  EXPECT_EQ(total, 19110u);
  for (std::size_t k = 1; k < bins.size(); ++k) EXPECT_LT(bins[k - 1].center, bins[k].center);
}

TEST(BinAndAggregate, ConstantSimilarities) {
  std::vector<PairSample> s;
  for (int k = 0; k <= 100; ++k) s.push_back({1.0, static_cast<double>(k), 0.3});
  for (const BinStat& b : bin_and_aggregate(s, 10)) EXPECT_DOUBLE_EQ(b.mean_similarity, 0.3);
  EXPECT_THROW(bin_and_aggregate(s, 0), ArgumentError);
  EXPECT_THROW(bin_and_aggregate({}, 10), ArgumentError);
}

TEST(Pearson, Examples) {
  std::vector<double> x{1, 2, 3, 4, 5}, y, z;
  for (double v : x) {
    y.push_back(-v + 3);
    z.push_back(v);
  }
  EXPECT_NEAR(pearson(x, y), -1.0, 1e-15);
  EXPECT_NEAR(pearson(x, z), 1.0, 1e-15);
  std::vector<double> c(5, 2.0);
  EXPECT_THROW(pearson(x, c), UndefinedCorrelationError);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{1}), ArgumentError);
  EXPECT_THROW(pearson(x, std::vector<double>{1, 2}), ArgumentError);
}

TEST(DecayReport, PaperArithmeticForMagnitude) {
  EXPECT_NEAR((16.5 - 13.8) / 16.5, 0.1636, 1e-4);
}

TEST(DecayReport, FieldsAreConsistent) {
  const DecayReport r = decay_report(default_grid(), 14, 14, 80);
  EXPECT_EQ(r.n_pairs, 19110u);
  EXPECT_EQ(r.n_bins, 80u);
  EXPECT_GE(r.pearson_rho, -1.0);
  EXPECT_LE(r.pearson_rho, 1.0);
  EXPECT_GE(r.monotonicity, 0.0);
  EXPECT_LE(r.monotonicity, 1.0);
  EXPECT_EQ(r.first_bin_mean, r.bins.front().mean_similarity);
  EXPECT_EQ(r.last_bin_mean, r.bins.back().mean_similarity);
}

TEST(DecayReport, IdenticalRowsHaveNoCorrelation) {
  EncodingGrid g(17, 8);
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) g(r, c) = 1.0 + static_cast<double>(c);
  }
  EXPECT_THROW(decay_report(g, 4, 4, 10), UndefinedCorrelationError);
}

TEST(FuseWithNoise, ZeroGridGivesNoise) {
  EncodingConfig cfg;
  cfg.beta_pos = 0.0;
  const EncodingGrid g = generate_encoding_grid(cfg);
  const EncodingGrid f = fuse_with_noise(g, 5, 192);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t r = 1; r < f.rows(); ++r) {
    for (double v : f.row(r)) EXPECT_EQ(v, normal(rng));
  }
  for (std::size_t c = 0; c < f.cols(); ++c) EXPECT_EQ(f(0, c), g(0, c));
}

TEST(FuseWithNoise, DeterministicAndShapeChecked) {
  const EncodingGrid g = default_grid();
  EXPECT_EQ(fuse_with_noise(g, 8, 192), fuse_with_noise(g, 8, 192));
  EXPECT_NE(fuse_with_noise(g, 8, 192), fuse_with_noise(g, 9, 192));
  EXPECT_THROW(fuse_with_noise(g, 8, 64), ShapeError);
}

TEST(RandomNormalGrid, ShapeAndDeterminism) {
  const EncodingGrid a = random_normal_grid(197, 192, 1);
  EXPECT_EQ(a.rows(), 197u);
  EXPECT_EQ(a.cols(), 192u);
  EXPECT_EQ(a, random_normal_grid(197, 192, 1));
}

}  // namespace
}  // namespace wefpe
