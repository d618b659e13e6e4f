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

#include <cmath>
#include <random>

#include "wefpe/analysis.hpp"
#include "wefpe/errors.hpp"

namespace wefpe {

namespace {

void normalize(std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  for (double& x : v) x /= n;
}

void remove_component(std::vector<double>& v, const std::vector<double>& unit) {
  double proj = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) proj += v[i] * unit[i];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * unit[i];
}

void fix_sign(std::vector<double>& v) {
  for (double x : v) {
    if (std::abs(x) > 1e-12) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

std::vector<double> multiply(const Matrix& a, const std::vector<double>& v) {
  std::vector<double> out(a.rows, 0.0);
  for (std::size_t r = 0; r < a.rows; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.cols; ++c) s += a(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

double rayleigh(const Matrix& a, const std::vector<double>& v) {
  const std::vector<double> av = multiply(a, v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * av[i];
  return s;
}

// Dominant eigenpair of the symmetric PSD matrix `a`, restricted to the
// complement of `deflated` (already-found unit eigenvectors).
std::vector<double> power_iteration(const Matrix& a, const std::vector<std::vector<double>>& deflated,
                                    std::uint64_t seed, int& iterations) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(a.rows);
  for (double& x : v) x = normal(rng);
  for (const auto& u : deflated) remove_component(v, u);
  normalize(v);

  double scale = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i) scale += std::abs(a(i, i));

  iterations = 0;
  for (int it = 1; it <= kPcaMaxIterations; ++it) {
    iterations = it;
    std::vector<double> next = multiply(a, v);
    for (const auto& u : deflated) remove_component(next, u);
    double n = 0.0;
    for (double x : next) n += x * x;
    n = std::sqrt(n);
    // Remaining spectrum is numerically zero: any orthogonal direction will do.
    if (n <= 1e-14 * std::max(scale, 1e-300)) break;
    for (double& x : next) x /= n;
    double delta = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) delta = std::max(delta, std::abs(next[i] - v[i]));
    v = std::move(next);
    if (delta < kPcaTolerance) break;
  }
  for (const auto& u : deflated) remove_component(v, u);
  normalize(v);
  fix_sign(v);
  return v;
}

}  // namespace

PcaResult pca_top2(const Matrix& rows) {
  if (rows.rows < 3) throw ArgumentError("pca_top2: need at least 3 rows");
  if (rows.cols < 2) throw ArgumentError("pca_top2: need at least 2 columns");
  const std::size_t n = rows.rows, d = rows.cols;

  std::vector<double> mean(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) mean[c] += rows(r, c);
  }
  for (double& m : mean) m /= static_cast<double>(n);
  Matrix centred(n, d);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) centred(r, c) = rows(r, c) - mean[c];
  }

  Matrix cov(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += centred(r, a) * centred(r, b);
      s /= static_cast<double>(n - 1);
      cov(a, b) = s;
      cov(b, a) = s;
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) total += cov(i, i);

  PcaResult result;
  std::vector<std::vector<double>> found;
  for (std::size_t k = 0; k < 2; ++k) {
    std::vector<double> v = power_iteration(cov, found, 0x5eed + k, result.iterations[k]);
    result.eigenvalues[k] = std::max(rayleigh(cov, v), 0.0);
    result.explained_ratio[k] = total > 0.0 ? result.eigenvalues[k] / total : 0.0;
    found.push_back(v);
    result.components[k] = std::move(v);
  }

  result.coordinates = Matrix(n, 2);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < 2; ++k) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) s += centred(r, c) * result.components[k][c];
      result.coordinates(r, k) = s;
    }
  }
  return result;
}

}  // namespace wefpe
