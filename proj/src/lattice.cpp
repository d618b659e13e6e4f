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

#include "wefpe/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wefpe/errors.hpp"
#include "wefpe/simd/complex_ops.hpp"

namespace wefpe {

HalfPeriods lemniscatic_half_periods(double g2, double g3, double eps) {
  const double discriminant = g2 * g2 * g2 - 27.0 * g3 * g3;
  if (!(std::abs(discriminant) > eps)) {
    throw ConfigError("discriminant too close to zero: " + std::to_string(discriminant));
  }
  if (std::abs(g3) < eps) {
    return {Complex(kLemniscaticHalfPeriod, 0.0), Complex(0.0, kLemniscaticHalfPeriod), false};
  }
  return {Complex(1.0, 0.0), Complex(0.0, 1.0), true};
}

void LatticeConfig::validate() const {
  const double discriminant = g2 * g2 * g2 - 27.0 * g3 * g3;
  if (!(std::abs(discriminant) > eps)) {
    throw ConfigError("discriminant too close to zero: " + std::to_string(discriminant));
  }
  if (!(omega1.real() > 0.0)) throw ConfigError("Re(omega1) must be positive");
  if (!(omega3.imag() > 0.0)) throw ConfigError("Im(omega3) must be positive");
  if (max_m < 1 || max_n < 1) throw ConfigError("max_m and max_n must be >= 1");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (!(term_clip > 0.0) || !(final_clip > 0.0) || !(pole_value > 0.0)) {
    throw ConfigError("term_clip, final_clip and pole_value must be positive");
  }
}

double LatticeConfig::first_excluded_radius() const noexcept {
  const auto point = [&](int m, int n) {
    return 2.0 * static_cast<double>(m) * omega1 + 2.0 * static_cast<double>(n) * omega3;
  };
  double r = std::numeric_limits<double>::infinity();
  for (int m = -(max_m + 1); m <= max_m + 1; ++m) {
    r = std::min({r, std::abs(point(m, max_n + 1)), std::abs(point(m, -(max_n + 1)))});
  }
  for (int n = -(max_n + 1); n <= max_n + 1; ++n) {
    r = std::min({r, std::abs(point(max_m + 1, n)), std::abs(point(-(max_m + 1), n))});
  }
  return r;
}

std::vector<Complex> enumerate_lattice(const LatticeConfig& cfg, SummationOrder order) {
  std::vector<Complex> points;
  points.reserve(cfg.term_count());
  for (int m = -cfg.max_m; m <= cfg.max_m; ++m) {
    for (int n = -cfg.max_n; n <= cfg.max_n; ++n) {
      if (m == 0 && n == 0) continue;
      points.push_back(2.0 * static_cast<double>(m) * cfg.omega1 +
                       2.0 * static_cast<double>(n) * cfg.omega3);
    }
  }
  if (order == SummationOrder::ModulusSorted) {
    std::vector<double> modulus(points.size());
    std::transform(points.begin(), points.end(), modulus.begin(),
                   [](Complex w) { return std::abs(w); });
    std::vector<std::size_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return modulus[a] < modulus[b]; });
    std::vector<Complex> sorted(points.size());
    std::transform(idx.begin(), idx.end(), sorted.begin(),
                   [&](std::size_t i) { return points[i]; });
    points = std::move(sorted);
  }
  return points;
}

WeierstrassP::WeierstrassP(const LatticeConfig& cfg, SummationOrder order)
    : cfg_(cfg), order_(order) {
  cfg_.validate();
  points_ = enumerate_lattice(cfg_, order_);
  const std::size_t n = points_.size();
  terms_.re.resize(n);
  terms_.im.resize(n);
  terms_.inv_sq_re.resize(n);
  terms_.inv_sq_im.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex w = points_[k];
    const simd::InversePowers inv = simd::inverse_powers(w.real(), w.imag());
    terms_.re[k] = w.real();
    terms_.im[k] = w.imag();
    terms_.inv_sq_re[k] = inv.sq_re;
    terms_.inv_sq_im[k] = inv.sq_im;
  }
}

double WeierstrassP::nearest_lattice_distance(Complex z) const {
  // Solve z = 2a ω1 + 2b ω3 for real (a, b); the nearest lattice point is one
  // of the four integer neighbours of (a, b), restricted to the enumerated box.
  const Complex e1 = 2.0 * cfg_.omega1;
  const Complex e3 = 2.0 * cfg_.omega3;
  const double det = e1.real() * e3.imag() - e3.real() * e1.imag();
  const double a = (z.real() * e3.imag() - e3.real() * z.imag()) / det;
  const double b = (e1.real() * z.imag() - z.real() * e1.imag()) / det;
  double best = std::numeric_limits<double>::infinity();
  for (const double mc : {std::floor(a), std::floor(a) + 1.0}) {
    for (const double nc : {std::floor(b), std::floor(b) + 1.0}) {
      const double m = std::clamp(mc, -static_cast<double>(cfg_.max_m),
                                  static_cast<double>(cfg_.max_m));
      const double n = std::clamp(nc, -static_cast<double>(cfg_.max_n),
                                  static_cast<double>(cfg_.max_n));
      best = std::min(best, std::abs(z - (m * e1 + n * e3)));
    }
  }
  return best;
}

WpPair WeierstrassP::partial(Complex z, std::size_t n_terms) const {
  WpPair out;
  evaluate(std::span<const Complex>(&z, 1), std::span<WpPair>(&out, 1), n_terms);
  return out;
}

void WeierstrassP::evaluate(std::span<const Complex> z, std::span<WpPair> out,
                            std::size_t n_terms) const {
  if (z.size() != out.size()) throw ShapeError("WeierstrassP::evaluate: size mismatch");
  if (n_terms > size()) throw ArgumentError("WeierstrassP::evaluate: n_terms exceeds lattice");

  std::vector<std::size_t> regular;
  regular.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (near_pole(z[i])) {
      out[i] = {Complex(cfg_.pole_value, 0.0), Complex(cfg_.pole_value, 0.0)};
    } else {
      regular.push_back(i);
    }
  }
  if (regular.empty()) return;

  const std::size_t n = regular.size();
  std::vector<double> buf(6 * n);
  double* zr = buf.data();
  double* zi = zr + n;
  for (std::size_t k = 0; k < n; ++k) {
    zr[k] = z[regular[k]].real();
    zi[k] = z[regular[k]].imag();
  }
  const simd::SeriesBatch batch{
      {zr, n}, {zi, n}, {zi + n, n}, {zi + 2 * n, n}, {zi + 3 * n, n}, {zi + 4 * n, n}};
  simd::wp_series(terms_, n_terms, cfg_.term_clip, batch);

  const double clip = cfg_.final_clip;
  for (std::size_t k = 0; k < n; ++k) {
    const simd::InversePowers principal = simd::inverse_powers(zr[k], zi[k]);
    const double wp_re = principal.sq_re + batch.wp_re[k];
    const double wp_im = principal.sq_im + batch.wp_im[k];
    const double wpp_re = -2.0 * principal.cube_re + batch.wpp_re[k];
    const double wpp_im = -2.0 * principal.cube_im + batch.wpp_im[k];
    out[regular[k]] = {
        Complex(simd::clamp_abs(wp_re, clip), simd::clamp_abs(wp_im, clip)),
        Complex(simd::clamp_abs(wpp_re, clip), simd::clamp_abs(wpp_im, clip))};
  }
}

WpPair wp_pair(Complex z, const LatticeConfig& cfg, SummationOrder order) {
  return WeierstrassP(cfg, order)(z);
}

double truncation_bound(Complex z, double r_max) {
  if (!(r_max > 0.0)) throw ArgumentError("truncation_bound: r_max must be positive");
  return 2.0 * std::abs(z) / (r_max * r_max);
}

Complex addition_rhs(Complex z1, Complex z2, const WeierstrassP& wp) {
  if (wp.near_pole(z1 + z2)) {
    throw PoleError("addition_rhs: z1 + z2 lies on a lattice point");
  }
  const double congruence_tol =
      std::max(wp.config().pole_radius(), 1e-12 * (std::abs(z1) + std::abs(z2)));
  if (wp.nearest_lattice_distance(z1 - z2) < congruence_tol) {
    throw DegeneratePairError("addition_rhs: z1 ≡ z2 (mod lattice)");
  }
  const WpPair a = wp(z1);
  const WpPair b = wp(z2);
  const Complex denom = a.wp - b.wp;
  if (std::abs(denom) < 1e-6 * (std::abs(a.wp) + std::abs(b.wp) + 1.0)) {
    throw DegeneratePairError("addition_rhs: wp(z1) == wp(z2), z1 ≡ ±z2 (mod lattice)");
  }
  const Complex slope = (a.wp_prime - b.wp_prime) / denom;
  return -a.wp - b.wp + 0.25 * slope * slope;
}

Complex addition_rhs(Complex z1, Complex z2, const LatticeConfig& cfg) {
  return addition_rhs(z1, z2, WeierstrassP(cfg));
}

namespace {

// Σ' ω⁻⁴ and Σ' ω⁻⁶ over the square box |m|, |n| ≤ half_width.
std::pair<Complex, Complex> eisenstein_box(Complex omega1, Complex omega3, int half_width) {
  Complex s4 = 0.0, s6 = 0.0;
  for (int m = -half_width; m <= half_width; ++m) {
    for (int n = -half_width; n <= half_width; ++n) {
      if (m == 0 && n == 0) continue;
      const Complex inv = 1.0 / (2.0 * static_cast<double>(m) * omega1 +
                                 2.0 * static_cast<double>(n) * omega3);
      const Complex inv2 = inv * inv;
      s4 += inv2 * inv2;
      s6 += inv2 * inv2 * inv2;
    }
  }
  return {s4, s6};
}

}  // namespace

LatticeInvariants lattice_invariants(Complex omega1, Complex omega3) {
  // Box-truncation tails decay like 1/M², so one Richardson step removes the
  // leading error.
  constexpr int kCoarse = 64;
  const auto [c4, c6] = eisenstein_box(omega1, omega3, kCoarse);
  const auto [f4, f6] = eisenstein_box(omega1, omega3, 2 * kCoarse);
  const Complex s4 = (4.0 * f4 - c4) / 3.0;
  const Complex s6 = (4.0 * f6 - c6) / 3.0;
  return {60.0 * s4, 140.0 * s6};
}

}  // namespace wefpe
