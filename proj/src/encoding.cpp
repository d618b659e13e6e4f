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

#include "wefpe/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "wefpe/errors.hpp"

namespace wefpe {

LatticeConfig EncodingConfig::effective_lattice() const {
  LatticeConfig l = lattice;
  l.omega3 = Complex(0.0, omega3_imag());
  return l;
}

ModulationParams EncodingConfig::resolved_modulation() const {
  ModulationParams m = modulation;
  if (!m.sigma) m.sigma = alpha_scale();
  return m;
}

void EncodingConfig::validate() const {
  if (height < 1 || width < 1) throw ConfigError("height and width must be >= 1");
  if (!(alpha_u > 0.0) || !(alpha_v > 0.0)) throw ConfigError("alpha_u and alpha_v must be positive");
  if (model_dim < 4) throw ConfigError("model_dim must be >= 4");
  if (!(alpha_scale() > 0.0)) throw ConfigError("alpha_scale underflows to zero");
  if (!(omega3_imag() > 0.0)) throw ConfigError("Im(omega3) underflows to zero");
  if (!std::isfinite(beta_pos)) throw ConfigError("beta_pos must be finite");
  effective_lattice().validate();
  fast.validate();
}

EncodingGrid::EncodingGrid(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw ShapeError("EncodingGrid: data size != rows * cols");
}

std::pair<double, double> normalize_coords(int i, int j, int height, int width) {
  if (height < 1 || width < 1 || i < 0 || i >= height || j < 0 || j >= width) {
    throw ArgumentError("normalize_coords: (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") outside " + std::to_string(height) + "x" + std::to_string(width));
  }
  return {(j + 0.5) / width, (i + 0.5) / height};
}

Complex map_to_complex(double u, double v, const EncodingConfig& cfg) {
  const LatticeConfig l = cfg.effective_lattice();
  return {cfg.alpha_u * u * 2.0 * l.omega1.real(), cfg.alpha_v * v * 2.0 * l.omega3.imag()};
}

namespace {

std::array<double, 4> split(const WpPair& p) {
  return {p.wp.real(), p.wp.imag(), p.wp_prime.real(), p.wp_prime.imag()};
}

}  // namespace

std::array<double, 4> extract_features(Complex z, const EncodingConfig& cfg) {
  if (cfg.mode == EncodingMode::FastApprox) return fast_features(z, cfg.fast);
  return split(WeierstrassP(cfg.effective_lattice(), cfg.order)(z));
}

FeatureVector4 modulate_and_compress(const std::array<double, 4>& raw, const ModulationParams& m) {
  const double sigma = m.sigma.value_or(kDefaultAlphaScale);
  FeatureVector4 out;
  for (std::size_t j = 0; j < 4; ++j) out[j] = std::tanh(sigma * (m.mu[j] * raw[j]));
  return out;
}

Projection::Projection(int model_dim, std::uint64_t seed) : dim_(model_dim) {
  if (model_dim < 4) throw ConfigError("model_dim must be >= 4");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<std::size_t>(model_dim);
  weights_.resize(d * 4);
  for (double& w : weights_) w = 0.5 * normal(rng);
  class_row_.resize(d);
  for (double& c : class_row_) c = kClassTokenScale * normal(rng);
}

void Projection::apply(const FeatureVector4& f, std::span<double> out) const {
  const auto d = static_cast<std::size_t>(dim_);
  if (out.size() != d) throw ShapeError("Projection::apply: output length != model_dim");
  double mean = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    const double* w = weights_.data() + 4 * r;
    out[r] = w[0] * f[0] + w[1] * f[1] + w[2] * f[2] + w[3] * f[3];
    mean += out[r];
  }
  mean /= static_cast<double>(d);
  double var = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    out[r] -= mean;
    var += out[r] * out[r];
  }
  var /= static_cast<double>(d);
  const double inv_std = 1.0 / std::sqrt(var + kLayerNormEps);
  for (std::size_t r = 0; r < d; ++r) out[r] *= inv_std;
}

std::vector<double> Projection::apply(const FeatureVector4& f) const {
  std::vector<double> out(static_cast<std::size_t>(dim_));
  apply(f, out);
  return out;
}

std::vector<double> project_and_norm(const FeatureVector4& f, const EncodingConfig& cfg) {
  return Projection(cfg.model_dim, cfg.projection_seed).apply(f);
}

EncodingGrid generate_encoding_grid(const EncodingConfig& cfg) {
  cfg.validate();
  const auto h = static_cast<std::size_t>(cfg.height);
  const auto w = static_cast<std::size_t>(cfg.width);
  const std::size_t patches = h * w;
  const Projection projection(cfg.model_dim, cfg.projection_seed);
  const ModulationParams modulation = cfg.resolved_modulation();

  std::vector<Complex> z(patches);
  for (int i = 0; i < cfg.height; ++i) {
    for (int j = 0; j < cfg.width; ++j) {
      const auto [u, v] = normalize_coords(i, j, cfg.height, cfg.width);
      z[static_cast<std::size_t>(i) * w + static_cast<std::size_t>(j)] = map_to_complex(u, v, cfg);
    }
  }

  std::vector<std::array<double, 4>> raw(patches);
  if (cfg.mode == EncodingMode::DirectLattice) {
    const WeierstrassP wp(cfg.effective_lattice(), cfg.order);
    std::vector<WpPair> values(patches);
    wp.evaluate(z, values);
    for (std::size_t p = 0; p < patches; ++p) raw[p] = split(values[p]);
  } else {
    for (std::size_t p = 0; p < patches; ++p) raw[p] = fast_features(z[p], cfg.fast);
  }

  EncodingGrid grid(patches + 1, static_cast<std::size_t>(cfg.model_dim));
  std::copy(projection.class_row().begin(), projection.class_row().end(), grid.row(0).begin());
  for (std::size_t p = 0; p < patches; ++p) {
    const std::span<double> row = grid.row(p + 1);
    projection.apply(modulate_and_compress(raw[p], modulation), row);
    for (double& x : row) x *= cfg.beta_pos;
  }
  return grid;
}

EncodingGrid hybrid_blend(const EncodingGrid& wef, const HybridParams& h) {
  const EncodingGrid& learned = h.learned_grid;
  if (wef.rows() != learned.rows() || wef.cols() != learned.cols()) {
    throw ShapeError("hybrid_blend: grids differ in shape (" + std::to_string(wef.rows()) + "x" +
                     std::to_string(wef.cols()) + " vs " + std::to_string(learned.rows()) + "x" +
                     std::to_string(learned.cols()) + ")");
  }
  if (wef.rows() == 0) throw ShapeError("hybrid_blend: empty grid");
  const double lambda = h.lambda();
  EncodingGrid out(wef.rows(), wef.cols());
  std::copy(learned.row(0).begin(), learned.row(0).end(), out.row(0).begin());
  for (std::size_t r = 1; r < wef.rows(); ++r) {
    for (std::size_t c = 0; c < wef.cols(); ++c) {
      out(r, c) = lambda * wef(r, c) + (1.0 - lambda) * learned(r, c);
    }
  }
  return out;
}

}  // namespace wefpe
