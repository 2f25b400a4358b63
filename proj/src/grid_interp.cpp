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

#include "bingham/grid_interp.hpp"

#include <cmath>

#include "bingham/errors.hpp"
#include "bingham/tables.hpp"

namespace bingham {

std::string_view to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::kZ00: return "Z00";
    case Quantity::kR20: return "Z20/Z00";
    case Quantity::kR02: return "Z02/Z00";
    case Quantity::kR40: return "Z40/Z00";
    case Quantity::kR04: return "Z04/Z00";
    case Quantity::kR22: return "Z22/Z00";
  }
  return "?";
}

std::array<int, 2> quantity_orders(Quantity q) noexcept {
  switch (q) {
    case Quantity::kZ00: return {0, 0};
    case Quantity::kR20: return {2, 0};
    case Quantity::kR02: return {0, 2};
    case Quantity::kR40: return {4, 0};
    case Quantity::kR04: return {0, 4};
    case Quantity::kR22: return {2, 2};
  }
  return {0, 0};
}

double hermite3(double x, double x1, double x2, double f1, double f2, double d1, double d2) {
  const double l1 = (x - x2) / (x1 - x2);
  const double l2 = (x - x1) / (x2 - x1);
  return f1 * (1.0 + 2.0 * (x1 - x) / (x1 - x2)) * l1 * l1 +
         f2 * (1.0 + 2.0 * (x2 - x) / (x2 - x1)) * l2 * l2 + d1 * (x - x1) * l1 * l1 +
         d2 * (x - x2) * l2 * l2;
}

namespace {

double lerp(double x, double x1, double x2, double f1, double f2) {
  return f1 * (x2 - x) / (x2 - x1) + f2 * (x - x1) / (x2 - x1);
}

}  // namespace

double blended_cell_eval(const CellCorners& c, double x, double y) {
  // values along the four edges
  const double f_xy1 = hermite3(x, c.x1, c.x2, c.f[0][0], c.f[1][0], c.fx[0][0], c.fx[1][0]);
  const double f_xy2 = hermite3(x, c.x1, c.x2, c.f[0][1], c.f[1][1], c.fx[0][1], c.fx[1][1]);
  const double f_x1y = hermite3(y, c.y1, c.y2, c.f[0][0], c.f[0][1], c.fy[0][0], c.fy[0][1]);
  const double f_x2y = hermite3(y, c.y1, c.y2, c.f[1][0], c.f[1][1], c.fy[1][0], c.fy[1][1]);
  // slopes across the edges
  const double fy_xy1 = lerp(x, c.x1, c.x2, c.fy[0][0], c.fy[1][0]);
  const double fy_xy2 = lerp(x, c.x1, c.x2, c.fy[0][1], c.fy[1][1]);
  const double fx_x1y = lerp(y, c.y1, c.y2, c.fx[0][0], c.fx[0][1]);
  const double fx_x2y = lerp(y, c.y1, c.y2, c.fx[1][0], c.fx[1][1]);

  const double along_x = hermite3(x, c.x1, c.x2, f_x1y, f_x2y, fx_x1y, fx_x2y);
  const double along_y = hermite3(y, c.y1, c.y2, f_xy1, f_xy2, fy_xy1, fy_xy2);
  return 0.5 * (along_x + along_y);
}

void HermiteGrid2D::validate() const {
  if (!(spacing > 0.0) || !(extent > 0.0) || axis_nodes < 2)
    throw StateError("hermite grid " + std::string(to_string(quantity)) + ": invalid geometry");
  const std::size_t n = node_count();
  if (value.size() != n || d_b1.size() != n || d_b2.size() != n)
    throw StateError("hermite grid " + std::string(to_string(quantity)) +
                     ": array sizes do not match the lattice");
  for (std::size_t k = 0; k < n; ++k)
    if (!std::isfinite(value[k]) || !std::isfinite(d_b1[k]) || !std::isfinite(d_b2[k]))
      throw StateError("hermite grid " + std::string(to_string(quantity)) +
                       ": non-finite entry");
}

namespace {

// Lattice cell [coordinate(i+1), coordinate(i)] containing b, robust to the
// rounding of i * spacing so that lattice nodes land on a cell corner.
std::size_t cell_index(double b, const HermiteGrid2D& g) {
  const std::size_t last_cell = g.axis_nodes - 2;
  const double u = -b / g.spacing;
  if (!(u > 0.0)) return 0;
  std::size_t i = static_cast<std::size_t>(u);
  if (i > last_cell) return last_cell;
  if (i > 0 && g.coordinate(i) < b) --i;  // b lies above line i
  if (i < last_cell && g.coordinate(i + 1) >= b) ++i;
  return i;
}

}  // namespace

CellCorners HermiteGrid2D::cell_at(double b1, double b2) const {
  const std::size_t i = cell_index(b1, *this);
  const std::size_t j = cell_index(b2, *this);
  CellCorners c;
  // corner 0 is the lower coordinate, i.e. lattice line i + 1
  c.x1 = coordinate(i + 1);
  c.x2 = coordinate(i);
  c.y1 = coordinate(j + 1);
  c.y2 = coordinate(j);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const std::size_t k = index(i + 1 - a, j + 1 - b);
      c.f[a][b] = value[k];
      c.fx[a][b] = d_b1[k];
      c.fy[a][b] = d_b2[k];
    }
  }
  return c;
}

double HermiteGrid2D::evaluate(double b1, double b2) const {
  const double lo = -extent * (1.0 + 1e-12);
  if (!(b1 <= 0.0) || !(b2 <= 0.0) || b1 < lo || b2 < lo)
    throw DomainError("hermite grid: point outside [-extent, 0]^2");
  return blended_cell_eval(cell_at(b1, b2), b1, b2);
}

double z_near(Quantity q, double b1, double b2, const MomentTables& tables) {
  const double d = tables.header.d;
  if (!(b1 > -d) || !(b2 > -d) || !(b1 <= 0.0) || !(b2 <= 0.0))
    throw DomainError("z_near: need -d < b1, b2 <= 0");
  return tables.grid(q).evaluate(b1, b2);
}

}  // namespace bingham
