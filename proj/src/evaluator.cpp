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

#include "bingham/evaluator.hpp"

#include <cmath>
#include <string>

#include "bingham/errors.hpp"
#include "bingham/specfun.hpp"

namespace bingham {

namespace {

void check_orders(int n, int m) {
  if (n < 0 || m < 0 || n % 2 != 0 || m % 2 != 0 || n + m > 4)
    throw DomainError("z_diag: need even n, m >= 0 with n + m <= 4");
}

void check_pair(double b1, double b2) {
  if (!(b1 <= 0.0) || !(b2 <= 0.0) || !std::isfinite(b1) || !std::isfinite(b2))
    throw DomainError("need finite b1, b2 <= 0");
}

Quantity ratio_quantity(int n, int m) {
  if (n == 2 && m == 0) return Quantity::kR20;
  if (n == 0 && m == 2) return Quantity::kR02;
  if (n == 4 && m == 0) return Quantity::kR40;
  if (n == 0 && m == 4) return Quantity::kR04;
  return Quantity::kR22;
}

using Poly = std::array<double, kMonomialCount>;

}  // namespace

const char* to_string(Region r) noexcept {
  switch (r) {
    case Region::kFar: return "far";
    case Region::kMixed: return "mixed";
    case Region::kNear: return "near";
  }
  return "?";
}

Region classify(double b1, double b2, double d) noexcept {
  const bool far1 = b1 <= -d;
  const bool far2 = b2 <= -d;
  if (far1 && far2) return Region::kFar;
  if (far1 || far2) return Region::kMixed;
  return Region::kNear;
}

std::vector<ReducedTerm> reduce_monomial(int n1, int n2, int n3) {
  if (n1 < 0 || n2 < 0 || n3 < 0) throw DomainError("reduce_monomial: negative exponent");
  if (n1 + n2 + n3 > kMaxMomentOrder)
    throw DomainError("reduce_monomial: unsupported order " + std::to_string(n1 + n2 + n3));
  if (n1 % 2 != 0 || n2 % 2 != 0 || n3 % 2 != 0) return {};
  // x3^{n3} = (1 - x1^2 - x2^2)^k, expanded by the multinomial theorem
  const int k = n3 / 2;
  std::vector<ReducedTerm> out;
  for (int b = 0; b <= k; ++b) {
    for (int c = 0; b + c <= k; ++c) {
      const double multinomial =
          specfun::factorial(k) /
          (specfun::factorial(k - b - c) * specfun::factorial(b) * specfun::factorial(c));
      const double sign = ((b + c) % 2 == 0) ? 1.0 : -1.0;
      out.push_back({n1 + 2 * b, n2 + 2 * c, sign * multinomial});
    }
  }
  return out;
}

Mat3 MomentSet::second_moments() const {
  Mat3 m{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::array<int, 3> e{0, 0, 0};
      ++e[i];
      ++e[j];
      m[i][j] = at(e[0], e[1], e[2]);
    }
  }
  return m;
}

Evaluator::Evaluator(std::shared_ptr<const MomentTables> tables, EvalParams params)
    : tables_(std::move(tables)), params_(params) {
  if (!tables_) throw StateError("evaluator: no tables loaded");
  tables_->validate();
  if (params_.n2 < 0 || params_.n2 > tables_->gm.max_order)
    throw StateError("evaluator: N2 exceeds the tabulated derivative order");
  far_.n1 = params_.n1;
  far_.d = tables_->header.d;
  far_.validate();
}

double Evaluator::z_diag(int n, int m, double b1, double b2) const {
  check_orders(n, m);
  check_pair(b1, b2);
  switch (classify(b1, b2, d())) {
    case Region::kFar: return series::z_far(n, m, b1, b2, far_);
    case Region::kMixed:
      return series::z_mixed(n, m, b1, b2, tables_->gm, params_.n2, params_.gm_interpolation);
    case Region::kNear: break;
  }
  const double z00 = tables_->z00.evaluate(b1, b2);
  if (n == 0 && m == 0) return z00;
  return tables_->grid(ratio_quantity(n, m)).evaluate(b1, b2) * z00;
}

std::array<double, 6> Evaluator::quantities(double b1, double b2) const {
  check_pair(b1, b2);
  std::array<double, 6> out{};
  if (classify(b1, b2, d()) == Region::kNear) {
    out[0] = tables_->z00.evaluate(b1, b2);
    for (std::size_t q = 0; q < 5; ++q) out[q + 1] = tables_->ratios[q].evaluate(b1, b2);
    return out;
  }
  out[0] = z_diag(0, 0, b1, b2);
  for (std::size_t q = 0; q < 5; ++q) {
    const auto [n, m] = quantity_orders(kRatioQuantities[q]);
    out[q + 1] = z_diag(n, m, b1, b2) / out[0];
  }
  return out;
}

MomentSet Evaluator::moments(const BinghamParam& b) const {
  if (!b.finite()) throw DomainError("moments: non-finite parameter matrix");
  const CanonicalDiag c = eig3_sym(b);
  const auto q = quantities(c.b1, c.b2);

  // normalized diagonal-frame moments of y = T^T x, by reduced monomial
  const auto& monos = all_monomials();
  Poly diag_moment{};
  for (std::size_t k = 0; k < kMonomialCount; ++k) {
    const auto& e = monos[k];
    double v = 0.0;
    for (const auto& t : reduce_monomial(e.n1, e.n2, e.n3)) {
      double r = 1.0;
      if (t.p == 2 && t.q == 0) r = q[1];
      else if (t.p == 0 && t.q == 2) r = q[2];
      else if (t.p == 4 && t.q == 0) r = q[3];
      else if (t.p == 0 && t.q == 4) r = q[4];
      else if (t.p == 2 && t.q == 2) r = q[5];
      v += t.coeff * r;
    }
    diag_moment[k] = v;
  }

  // expand x_i = sum_k T_ik y_k; poly[k] holds x^{monos[k]} as a polynomial in y
  std::array<Poly, kMonomialCount> poly{};
  poly[0][0] = 1.0;
  for (std::size_t k = 1; k < kMonomialCount; ++k) {
    Monomial prev = monos[k];
    int axis = prev.n1 > 0 ? 0 : (prev.n2 > 0 ? 1 : 2);
    if (axis == 0) --prev.n1;
    else if (axis == 1) --prev.n2;
    else --prev.n3;
    const Poly& src = poly[monomial_index(prev)];
    Poly& dst = poly[k];
    for (std::size_t t = 0; t < kMonomialCount; ++t) {
      if (src[t] == 0.0) continue;
      for (int y = 0; y < 3; ++y) {
        const double coeff = c.rotation[axis][y];
        if (coeff == 0.0) continue;
        Monomial e = monos[t];
        if (y == 0) ++e.n1;
        else if (y == 1) ++e.n2;
        else ++e.n3;
        dst[monomial_index(e)] += src[t] * coeff;
      }
    }
  }

  MomentSet out;
  out.log_z = std::log(q[0]) + c.log_shift;
  out.moments[0] = 1.0;
  for (std::size_t k = 1; k < kMonomialCount; ++k) {
    if (monos[k].order() % 2 != 0) continue;  // antipodal symmetry
    double v = 0.0;
    for (std::size_t t = 0; t < kMonomialCount; ++t)
      if (poly[k][t] != 0.0) v += poly[k][t] * diag_moment[t];
    out.moments[k] = v;
  }
  return out;
}

double Evaluator::log_partition(const BinghamParam& b) const {
  if (!b.finite()) throw DomainError("log_partition: non-finite parameter matrix");
  const CanonicalDiag c = eig3_sym(b);
  return std::log(z_diag(0, 0, c.b1, c.b2)) + c.log_shift;
}

double Evaluator::moment_derivative(int n, int m, Wrt wrt, double b1, double b2) const {
  if (!((n == 0 && m == 0) || (n == 2 && m == 0) || (n == 0 && m == 2)))
    throw DomainError("moment_derivative: supports (n, m) in {(0,0), (2,0), (0,2)}");
  check_pair(b1, b2);
  const double z00 = z_diag(0, 0, b1, b2);
  const bool first = wrt == Wrt::kB1;
  const double z_raise = first ? z_diag(2, 0, b1, b2) : z_diag(0, 2, b1, b2);
  if (n == 0 && m == 0) return z_raise / z00;
  const double znm = z_diag(n, m, b1, b2);
  const double z_up = first ? z_diag(n + 2, m, b1, b2) : z_diag(n, m + 2, b1, b2);
  return (z_up * z00 - znm * z_raise) / (z00 * z00);
}

}  // namespace bingham
