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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wefpe/fast_approx.hpp"
#include "wefpe/lattice.hpp"
#include "wefpe/math.hpp"

namespace wefpe {

inline constexpr double kDefaultAlphaScale = 0.15;
inline constexpr double kLayerNormEps = 1e-5;
inline constexpr double kClassTokenScale = 0.02;

enum class EncodingMode { DirectLattice, FastApprox };

// Per-component gains applied before tanh compression. An unset sigma means
// "use α_scale", which reduces to the plain pre-training compression.
struct ModulationParams {
  std::array<double, 4> mu{1.0, 1.0, 1.0, 1.0};
  std::optional<double> sigma;
};

struct EncodingConfig {
  int height = 14;
  int width = 14;
  double alpha_u = 1.0;
  double alpha_v = 1.0;
  // α_scale = softplus(alpha_scale_raw).
  double alpha_scale_raw = softplus_inverse(kDefaultAlphaScale);
  // Im(ω3) = softplus(alpha_learn_raw); overrides lattice.omega3.
  double alpha_learn_raw = softplus_inverse(kLemniscaticHalfPeriod);
  double beta_pos = 1.0;
  int model_dim = 192;
  std::uint64_t projection_seed = 0;
  EncodingMode mode = EncodingMode::DirectLattice;
  ModulationParams modulation;
  LatticeConfig lattice;
  SummationOrder order = SummationOrder::ModulusSorted;
  FastParams fast;

  double alpha_scale() const { return softplus(alpha_scale_raw); }
  double omega3_imag() const { return softplus(alpha_learn_raw); }

  // `lattice` with ω3 replaced by i·softplus(alpha_learn_raw).
  LatticeConfig effective_lattice() const;

  // Modulation with sigma resolved to α_scale when unset.
  ModulationParams resolved_modulation() const;

  // Throws ConfigError on any violated field constraint.
  void validate() const;
};

// Compressed features [Re ℘, Im ℘, Re ℘′, Im ℘′] after modulation and tanh.
using FeatureVector4 = std::array<double, 4>;

// (H·W + 1) × d, row-major. Row 0 is the class token, rows 1..H·W the patches
// in row-major (i, j) order.
class EncodingGrid {
 public:
  EncodingGrid() = default;
  EncodingGrid(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  EncodingGrid(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t patch_count() const noexcept { return rows_ == 0 ? 0 : rows_ - 1; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  friend bool operator==(const EncodingGrid&, const EncodingGrid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct HybridParams {
  double lambda_raw = 0.0;
  EncodingGrid learned_grid;

  double lambda() const { return sigmoid(lambda_raw); }
};

// Patch centre in (0, 1)²: u = (j + 0.5)/W, v = (i + 0.5)/H.
// Throws ArgumentError for indices outside the grid.
std::pair<double, double> normalize_coords(int i, int j, int height, int width);

// z = α_u · u · 2 Re ω1 + i · α_v · v · 2 Im ω3 (effective lattice).
Complex map_to_complex(double u, double v, const EncodingConfig& cfg);

// Raw (uncompressed) features at z: [Re ℘, Im ℘, Re ℘′, Im ℘′] in direct mode,
// fast_features() in fast mode.
std::array<double, 4> extract_features(Complex z, const EncodingConfig& cfg);

// tanh(σ · μ_j · raw_j). An unset sigma falls back to kDefaultAlphaScale.
FeatureVector4 modulate_and_compress(const std::array<double, 4>& raw, const ModulationParams& m);

// Fixed d×4 projection drawn from a seeded normal (scale 1/2, zero bias),
// followed by layer normalization without affine parameters.
class Projection {
 public:
  Projection(int model_dim, std::uint64_t seed);

  int model_dim() const noexcept { return dim_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<double>& class_row() const noexcept { return class_row_; }

  void apply(const FeatureVector4& f, std::span<double> out) const;
  std::vector<double> apply(const FeatureVector4& f) const;

 private:
  int dim_;
  std::vector<double> weights_;    // d×4 row-major
  std::vector<double> class_row_;  // seeded stand-in for the learned class token
};

std::vector<double> project_and_norm(const FeatureVector4& f, const EncodingConfig& cfg);

// Throws ConfigError for an invalid configuration.
EncodingGrid generate_encoding_grid(const EncodingConfig& cfg);

// Patch rows λ·wef + (1 − λ)·learned; class row copied from the learned grid.
// Throws ShapeError on a shape mismatch.
EncodingGrid hybrid_blend(const EncodingGrid& wef, const HybridParams& h);

}  // namespace wefpe
