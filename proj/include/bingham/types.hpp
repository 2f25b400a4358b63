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

namespace bingham {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Real symmetric 3x3 parameter matrix; only the upper triangle is stored.
class BinghamParam {
 public:
  BinghamParam() = default;
  BinghamParam(double b11, double b22, double b33, double b12, double b13, double b23)
      : upper_{b11, b22, b33, b12, b13, b23} {}

  static BinghamParam diagonal(double b11, double b22, double b33) {
    return {b11, b22, b33, 0.0, 0.0, 0.0};
  }
  /// Symmetrizes `m` by averaging mirrored off-diagonal entries.
  static BinghamParam from_matrix(const Mat3& m);

  double operator()(std::size_t i, std::size_t j) const noexcept;
  Mat3 matrix() const noexcept;
  bool finite() const noexcept;
  /// Frobenius norm.
  double norm() const noexcept;
  /// B + s*I.
  BinghamParam shifted(double s) const noexcept;

  /// Entries in the order B11 B22 B33 B12 B13 B23.
  const std::array<double, 6>& entries() const noexcept { return upper_; }

 private:
  std::array<double, 6> upper_{};
};

/// Exponent triple of the monomial x1^n1 x2^n2 x3^n3.
struct Monomial {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;

  int order() const noexcept { return n1 + n2 + n3; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Highest monomial order exposed by the public moment surface.
inline constexpr int kMaxMomentOrder = 4;
/// Number of monomials with n1+n2+n3 <= 4.
inline constexpr std::size_t kMonomialCount = 35;

/// Dense index of a monomial of order <= 4, graded by order.
std::size_t monomial_index(const Monomial& mono);
/// All monomials of order <= 4 in index order.
const std::array<Monomial, kMonomialCount>& all_monomials() noexcept;

}  // namespace bingham
