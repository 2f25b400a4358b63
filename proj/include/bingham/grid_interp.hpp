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
#include <cstdint>
#include <string_view>
#include <vector>

namespace bingham {

struct MomentTables;

/// Quantity held by a near-region grid.
enum class Quantity : std::uint8_t {
  kZ00 = 0,  // Z00 itself
  kR20 = 1,  // Z20 / Z00
  kR02 = 2,  // Z02 / Z00
  kR40 = 3,  // Z40 / Z00
  kR04 = 4,  // Z04 / Z00
  kR22 = 5,  // Z22 / Z00
};

inline constexpr std::array<Quantity, 5> kRatioQuantities{Quantity::kR20, Quantity::kR02,
                                                          Quantity::kR40, Quantity::kR04,
                                                          Quantity::kR22};

std::string_view to_string(Quantity q) noexcept;

/// Exponents (n, m) of the numerator Z_{nm}; (0, 0) for kZ00.
std::array<int, 2> quantity_orders(Quantity q) noexcept;

/// Third-order Hermite interpolant on [x1, x2] matching values f1, f2 and
/// slopes d1, d2 at the endpoints.
double hermite3(double x, double x1, double x2, double f1, double f2, double d1, double d2);

/// Value and partial derivatives at the four corners of one lattice cell,
/// indexed [x-corner][y-corner] with corner 0 at x1 (resp. y1).
struct CellCorners {
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  double f[2][2]{};
  double fx[2][2]{};
  double fy[2][2]{};
};

/// Average of the two blended Hermite passes over a cell. Edge values come
/// from 1D Hermite interpolation, cross-edge slopes from linear
/// interpolation, then one pass interpolates along x and the other along y.
double blended_cell_eval(const CellCorners& cell, double x, double y);

/// Values and first derivatives of one quantity on the lattice
/// b1, b2 in {-i * spacing : i = 0 .. extent / spacing}.
struct HermiteGrid2D {
  Quantity quantity = Quantity::kZ00;
  double spacing = 0.0;
  double extent = 0.0;
  std::size_t axis_nodes = 0;
  std::vector<double> value;  // index i1 * axis_nodes + i2, node (-i1 h, -i2 h)
  std::vector<double> d_b1;
  std::vector<double> d_b2;

  std::size_t index(std::size_t i1, std::size_t i2) const noexcept {
    return i1 * axis_nodes + i2;
  }
  std::size_t node_count() const noexcept { return axis_nodes * axis_nodes; }
  /// Coordinate of lattice line i.
  double coordinate(std::size_t i) const noexcept {
    return i == 0 ? 0.0 : -static_cast<double>(i) * spacing;
  }

  /// Throws StateError on inconsistent sizes or non-finite entries.
  void validate() const;

  /// Interpolated value for b1, b2 in [-extent, 0].
  double evaluate(double b1, double b2) const;

  /// Gathers the corner records of the cell containing (b1, b2).
  CellCorners cell_at(double b1, double b2) const;
};

/// Near-region value of `q` for -d < b1, b2 <= 0 from loaded tables.
double z_near(Quantity q, double b1, double b2, const MomentTables& tables);

}  // namespace bingham
