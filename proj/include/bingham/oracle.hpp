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
#include <functional>
#include <span>
#include <vector>

#include "bingham/types.hpp"

/// Reference values of Z_{n1 n2 n3}(B) by nested adaptive Simpson quadrature
/// over spherical coordinates. Slow; used to build tables and to check the
/// fast approximations, never on the evaluation hot path.
namespace bingham::oracle {

struct QuadratureSpec {
  double abs_tol = 1e-11;
  int max_depth = 40;

  /// Throws DomainError unless abs_tol > 0 and max_depth >= 10.
  void validate() const;
};

/// Exponent pair of Z_{nm0}(diag(b1, b2, 0)).
struct DiagOrder {
  int n = 0;
  int m = 0;
  friend bool operator==(const DiagOrder&, const DiagOrder&) = default;
};

/// Largest number of orders a single batched pass can carry.
inline constexpr std::size_t kMaxBatch = 16;

double adaptive_simpson_1d(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_depth);

/// Z_{nm0}(diag(b1, b2, 0)) for even n, m with n + m <= 8 and b1, b2 <= 0.
double z_nm_oracle(int n, int m, double b1, double b2, const QuadratureSpec& spec = {});

/// Several Z_{nm0} at one (b1, b2) from a single quadrature pass; every
/// component meets spec.abs_tol.
std::vector<double> z_nm_oracle_batch(std::span<const DiagOrder> orders, double b1, double b2,
                                      const QuadratureSpec& spec = {});

/// Tensor-product Gauss-Legendre rule on one octant of the sphere with the
/// trigonometric factors cached. Converges spectrally for the smooth
/// integrands x1^n x2^m exp(b1 x1^2 + b2 x2^2); serves as the independent
/// cross-check of the adaptive oracle and as the fast path for tables.
class OctantRule {
 public:
  explicit OctantRule(std::size_t nodes_per_axis);

  /// Nodes per axis sufficient for ~1e-13 absolute accuracy when
  /// max(|b1|, |b2|) <= max_abs_b.
  static std::size_t nodes_for(double max_abs_b);

  std::size_t nodes_per_axis() const noexcept { return n_; }

  /// Writes Z_{nm0}(b1, b2) for each order into `out` (same length).
  void integrate(std::span<const DiagOrder> orders, double b1, double b2,
                 std::span<double> out) const;

 private:
  std::size_t n_;
  std::vector<double> weight_;     // per-axis weight, scaled to the octant
  std::vector<double> sin_theta_;
  std::vector<double> cos2_phi_;   // cos^2(phi)
  std::vector<double> sin2_phi_;   // sin^2(phi)
};

/// Z_{nm0} values by OctantRule with nodes_for(max(|b1|, |b2|)) nodes.
std::vector<double> z_nm_gauss_legendre_batch(std::span<const DiagOrder> orders, double b1,
                                              double b2);

/// Integral of x^mono * exp(x'Bx - shift) over the sphere; Z = value * e^shift.
struct ShiftedValue {
  double value = 0.0;
  double shift = 0.0;
  double unshifted() const;
};

/// Largest eigenvalue of B by the trigonometric closed form.
double largest_eigenvalue(const BinghamParam& b);

ShiftedValue z_general_oracle_shifted(const Monomial& mono, const BinghamParam& b,
                                      const QuadratureSpec& spec = {});

/// Z_{n1 n2 n3}(B) in the original frame, no diagonalization.
double z_general_oracle(const Monomial& mono, const BinghamParam& b,
                        const QuadratureSpec& spec = {});

/// All 35 monomials of order <= 4 (indexed by monomial_index) in one pass,
/// each scaled by e^{-shift}.
struct GeneralMomentSet {
  std::array<double, kMonomialCount> shifted{};
  double shift = 0.0;
};

GeneralMomentSet general_oracle_all(const BinghamParam& b, const QuadratureSpec& spec = {});

}  // namespace bingham::oracle
