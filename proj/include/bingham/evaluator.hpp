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
#include <cstdint>
#include <memory>
#include <vector>

#include "bingham/series.hpp"
#include "bingham/tables.hpp"
#include "bingham/types.hpp"

namespace bingham {

/// B = T diag(b1 + h, b2 + h, h) T^T with b1 <= b2 <= 0 and det T = +1.
struct CanonicalDiag {
  double b1 = 0.0;
  double b2 = 0.0;
  Mat3 rotation{};  // columns are eigenvectors
  double log_shift = 0.0;
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations, sorted and shifted
/// so that the largest eigenvalue becomes zero.
CanonicalDiag eig3_sym(const BinghamParam& b);

/// One term c * Z_{p q 0} of a reduced monomial.
struct ReducedTerm {
  int p = 0;
  int q = 0;
  double coeff = 0.0;
};

/// Expresses Z_{n1 n2 n3}(diag(b1, b2, 0)) through Z_{pq0} by substituting
/// x3^2 = 1 - x1^2 - x2^2. Empty when any exponent is odd; throws DomainError
/// when the order exceeds 4.
std::vector<ReducedTerm> reduce_monomial(int n1, int n2, int n3);

/// log Z(B) and every moment <x^mono> of order <= 4.
struct MomentSet {
  double log_z = 0.0;
  std::array<double, kMonomialCount> moments{};  // indexed by monomial_index

  double at(int n1, int n2, int n3) const { return moments[monomial_index({n1, n2, n3})]; }
  /// Second-moment matrix M_ij = <x_i x_j>.
  Mat3 second_moments() const;
};

enum class Region : std::uint8_t {
  kFar,    // b1, b2 <= -d
  kMixed,  // exactly one of them <= -d
  kNear,   // -d < b1, b2 <= 0
};

const char* to_string(Region r) noexcept;

/// Region of a nonpositive pair; the near region is the half-open (-d, 0]^2.
Region classify(double b1, double b2, double d) noexcept;

enum class Wrt : std::uint8_t { kB1, kB2 };

struct EvalParams {
  int n1 = 5;
  int n2 = 5;
  series::GmInterpolation gm_interpolation = series::GmInterpolation::kCubic;
};

/// Fast moment evaluation backed by immutable tables. All methods are const
/// and safe to call concurrently.
class Evaluator {
 public:
  explicit Evaluator(std::shared_ptr<const MomentTables> tables, EvalParams params = {});

  double d() const noexcept { return tables_->header.d; }
  const EvalParams& params() const noexcept { return params_; }
  const MomentTables& tables() const noexcept { return *tables_; }

  /// Z_{nm0}(diag(b1, b2, 0)) for even n, m with n + m <= 4 and b1, b2 <= 0.
  double z_diag(int n, int m, double b1, double b2) const;

  /// Z00 and the five ratios at one pair, in Quantity order.
  std::array<double, 6> quantities(double b1, double b2) const;

  MomentSet moments(const BinghamParam& b) const;

  double log_partition(const BinghamParam& b) const;

  /// d(Z_nm / Z00)/d b_wrt at a nonpositive pair, for n + m == 2. For
  /// (n, m) == (0, 0) this is d(log Z00)/d b_wrt.
  double moment_derivative(int n, int m, Wrt wrt, double b1, double b2) const;

 private:
  std::shared_ptr<const MomentTables> tables_;
  EvalParams params_;
  series::FarParams far_;
};

}  // namespace bingham
