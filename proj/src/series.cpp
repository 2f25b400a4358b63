// Copyright 2026 The bingham-moments Authors
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

#include "bingham/series.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "bingham/errors.hpp"
#include "bingham/specfun.hpp"

namespace bingham::series {

namespace {

using specfun::double_factorial;

constexpr int kTableSize = 64;

struct Factorials {
  std::array<double, kTableSize> fact{};
  std::array<double, kTableSize + 1> dfact{};  // dfact[k + 1] = k!!, k >= -1
  std::array<double, kTableSize> half_ratio{};  // (2p-1)!! / (2p)!!
};

const Factorials& factorials() {
  static const Factorials f = [] {
    Factorials t;
    for (int i = 0; i < kTableSize; ++i) t.fact[i] = specfun::factorial(i);
    for (int k = -1; k < kTableSize; ++k) t.dfact[k + 1] = double_factorial(k);
    for (int p = 0; p < kTableSize / 2; ++p)
      t.half_ratio[p] = double_factorial(2 * p - 1) / double_factorial(2 * p);
    return t;
  }();
  return f;
}

inline double dfact(int k) { return factorials().dfact[k + 1]; }

void check_even_orders(int n, int m, const char* what) {
  if (n < 0 || m < 0 || n % 2 != 0 || m % 2 != 0 || n + m > 4)
    throw DomainError(std::string(what) + ": need even n, m >= 0 with n + m <= 4");
}

}  // namespace

void FarParams::validate() const {
  if (n1 < 1 || 2 * n1 + 8 >= kTableSize) throw DomainError("FarParams: n1 out of range");
  if (!(d > 0.0)) throw DomainError("FarParams: d must be > 0");
}

std::size_t exact_step_count(double extent, double step) {
  if (!(step > 0.0) || !(extent > 0.0)) throw DomainError("grid extent and step must be > 0");
  const double q = extent / step;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, r) || r < 1.0)
    throw DomainError("grid step " + std::to_string(step) + " does not divide " +
                      std::to_string(extent));
  return static_cast<std::size_t>(r);
}

double z_far(int n, int m, double b1, double b2, const FarParams& p) {
  check_even_orders(n, m, "z_far");
  p.validate();
  if (!(b1 <= -p.d) || !(b2 <= -p.d)) throw DomainError("z_far: need b1, b2 <= -d");
  // Evaluate in a canonical argument order so that swapping (n, b1) with
  // (m, b2) reproduces the identical floating-point operations.
  if (b1 > b2 || (b1 == b2 && n > m)) {
    std::swap(n, m);
    std::swap(b1, b2);
  }
  const Factorials& f = factorials();
  const double a1 = -2.0 * b1;
  const double a2 = -2.0 * b2;
  const int n_half = n / 2;
  const int m_half = m / 2;
  // inverse powers (2|b|)^-(i) up to the largest exponent needed
  std::array<double, kTableSize> inv1{};
  std::array<double, kTableSize> inv2{};
  inv1[0] = inv2[0] = 1.0;
  for (int i = 1; i <= p.n1 + 2; ++i) {
    inv1[i] = inv1[i - 1] / a1;
    inv2[i] = inv2[i - 1] / a2;
  }
  double sum = 0.0;
  for (int j = 0; j <= p.n1; ++j) {
    for (int k = 0; j + k <= p.n1; ++k) {
      const double coeff = specfun::binomial(j + k, j) * f.half_ratio[j + k];
      sum += coeff * dfact(2 * j + n - 1) * dfact(2 * k + m - 1) * inv1[j + n_half] *
             inv2[k + m_half];
    }
  }
  // two polar caps, each contributing pi / sqrt(|b1 b2|) at leading order
  return 2.0 * std::numbers::pi / std::sqrt(b1 * b2) * sum;
}

double gm_deriv(int j, int m, double b2) {
  if (j < 0 || 2 * j >= kTableSize) throw DomainError("gm_deriv: j out of range");
  if (m != 0 && m != 2 && m != 4) throw DomainError("gm_deriv: m must be 0, 2 or 4");
  if (!(b2 <= 0.0)) throw DomainError("gm_deriv: need b2 <= 0");
  const Factorials& f = factorials();
  const double a = 0.5 * (m + 1);
  const double b = 0.5 * (m + 2);
  const int mh = m / 2;
  // d^j g / d a^j at a = 1 by the Leibniz rule over h1 = a^{m/2}, h2 = 1F1(a; b; b2 a)
  double leibniz = 0.0;
  for (int k = 0; k <= std::min(j, mh); ++k) {
    const double dh1 = f.fact[mh] / f.fact[mh - k];
    const int i = j - k;
    const double dh2 = std::pow(b2, i) * specfun::rising_factorial(a, i) /
                       specfun::rising_factorial(b, i) * specfun::hyp1f1_half(m, i, b2);
    leibniz += specfun::binomial(j, k) * dh1 * dh2;
  }
  const double dg_da = 0.5 * std::sqrt(std::numbers::pi) * specfun::gamma_half_ratio(m) * leibniz;
  // a = 1 - x1^2: d^{2j}/dx1^{2j} at x1 = 0 picks (-1)^j (2j)!/j! d^j/da^j
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign * f.fact[2 * j] / f.fact[j] * dg_da;
}

GmDerivGrid build_gm_grid(double d, int n2, double step) {
  if (n2 < 0 || 2 * n2 + 8 >= kTableSize) throw DomainError("build_gm_grid: N2 out of range");
  const std::size_t steps = exact_step_count(d, step);
  GmDerivGrid grid;
  grid.step = step;
  grid.d = d;
  grid.max_order = n2;
  grid.nodes = steps + 1;
  grid.values.resize(grid.nodes * static_cast<std::size_t>(n2 + 1) * 3);
  for (std::size_t k = 0; k < grid.nodes; ++k) {
    const double b2 = k == 0 ? 0.0 : -static_cast<double>(k) * step;
    for (int j = 0; j <= n2; ++j)
      for (int m : GmDerivGrid::kOrders) grid.values[grid.offset(k, j, m)] = gm_deriv(j, m, b2);
  }
  return grid;
}

void GmDerivGrid::validate() const {
  if (!(step > 0.0) || !(d > 0.0) || max_order < 0)
    throw StateError("gm grid: invalid parameters");
  if (nodes < 2 || values.size() != nodes * static_cast<std::size_t>(max_order + 1) * 3)
    throw StateError("gm grid: value array does not match node count");
}

double GmDerivGrid::interpolate(int j, int m, double b2, GmInterpolation mode) const {
  if (j < 0 || j > max_order) throw DomainError("gm grid: derivative order out of range");
  if (!(b2 <= 0.0) || b2 < -d * (1.0 + 1e-12))
    throw DomainError("gm grid: b2 outside [-d, 0]");
  const double u = -b2 / step;  // continuous node index
  const std::size_t last = nodes - 1;
  if (mode == GmInterpolation::kCubic && nodes >= 4) {
    const double fl = std::floor(u);
    std::size_t base = fl < 1.0 ? 0 : static_cast<std::size_t>(fl) - 1;
    if (base + 3 > last) base = last - 3;
    const double s = u - static_cast<double>(base);
    const double w0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    const double w1 = s * (s - 2.0) * (s - 3.0) / 2.0;
    const double w2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
    const double w3 = s * (s - 1.0) * (s - 2.0) / 6.0;
    return w0 * at(base, j, m) + w1 * at(base + 1, j, m) + w2 * at(base + 2, j, m) +
           w3 * at(base + 3, j, m);
  }
  std::size_t k = static_cast<std::size_t>(std::floor(u));
  if (k >= last) k = last - 1;
  const double t = u - static_cast<double>(k);
  return (1.0 - t) * at(k, j, m) + t * at(k + 1, j, m);
}

double z_mixed(int n, int m, double b1, double b2, const GmDerivGrid& grid, int n2,
               GmInterpolation mode) {
  check_even_orders(n, m, "z_mixed");
  const double d = grid.d;
  const bool far1 = b1 <= -d;
  const bool far2 = b2 <= -d;
  if (!(b1 <= 0.0) || !(b2 <= 0.0) || far1 == far2)
    throw DomainError("z_mixed: exactly one of b1, b2 must be <= -d, both <= 0");
  if (n2 < 0 || n2 > grid.max_order) throw DomainError("z_mixed: N2 exceeds tabulated order");
  if (far2) return z_mixed(m, n, b2, b1, grid, n2, mode);

  const Factorials& f = factorials();
  const double alpha = -b1;
  const double gauss = std::sqrt(std::numbers::pi / alpha);
  const double inv2a = 1.0 / (2.0 * alpha);
  double power = std::pow(inv2a, n / 2);  // (2|b1|)^-(j + n/2)
  double sum = 0.0;
  for (int j = 0; j <= n2; ++j) {
    const double g = grid.interpolate(j, m, b2, mode);
    sum += g / f.fact[2 * j] * dfact(2 * j + n - 1) * power;
    power *= inv2a;
  }
  return 4.0 * gauss * sum;
}

}  // namespace bingham::series
