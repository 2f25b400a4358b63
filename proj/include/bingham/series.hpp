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

#pragma once

#include <array>
#include <cstddef>
#include <vector>

// Closed-form approximations of Z_{nm}(b1, b2) away from the origin:
//   far region   b1, b2 <= -d : truncated series of Gaussian integrals
//   mixed region exactly one of b1, b2 <= -d : Taylor expansion of the inner
//                integral g_m in x1, with its derivatives tabulated in b2.
namespace bingham::series {

struct FarParams {
  int n1 = 5;       // truncation order, terms with j + k <= n1
  double d = 30.0;  // region threshold

  void validate() const;
};

enum class GmInterpolation {
  kLinear,  // two-point, between adjacent nodes
  kCubic,   // four-point Lagrange on the same nodes
};

/// Tabulated d^{2j} g_m(b2, 0) / d x1^{2j} on b2 = -k * step, k = 0 .. d/step.
struct GmDerivGrid {
  static constexpr std::array<int, 3> kOrders{0, 2, 4};

  double step = 0.001;
  double d = 30.0;
  int max_order = 5;  // N2: derivative orders j = 0 .. max_order
  std::size_t nodes = 0;
  std::vector<double> values;  // index (k, j, m/2), row-major

  double b2_min() const noexcept { return -d; }
  std::size_t offset(std::size_t k, int j, int m) const noexcept {
    return (k * static_cast<std::size_t>(max_order + 1) + static_cast<std::size_t>(j)) * 3 +
           static_cast<std::size_t>(m / 2);
  }
  double at(std::size_t k, int j, int m) const { return values[offset(k, j, m)]; }

  /// Value at an arbitrary b2 in [-d, 0].
  double interpolate(int j, int m, double b2, GmInterpolation mode) const;

  /// Throws StateError when sizes or parameters are inconsistent.
  void validate() const;
};

/// Far-region approximation; requires b1, b2 <= -p.d and even n, m, n + m <= 4.
double z_far(int n, int m, double b1, double b2, const FarParams& p = {});

/// d^{2j} g_m(b2, 0) / d x1^{2j}, evaluated analytically.
double gm_deriv(int j, int m, double b2);

/// Tabulates gm_deriv on [-d, 0]; d / step must be an integer.
GmDerivGrid build_gm_grid(double d, int n2, double step);

/// Mixed-region approximation using the grid's d as region threshold.
/// Exactly one of b1, b2 must be <= -d; the case b2 <= -d is evaluated as
/// z_mixed(m, n, b2, b1).
double z_mixed(int n, int m, double b1, double b2, const GmDerivGrid& grid, int n2,
               GmInterpolation mode = GmInterpolation::kCubic);

/// Number of steps in [0, extent]; throws DomainError unless it is an integer.
std::size_t exact_step_count(double extent, double step);

}  // namespace bingham::series
