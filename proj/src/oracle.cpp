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

#include "bingham/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "bingham/errors.hpp"
#include "bingham/quadrature.hpp"

namespace bingham::oracle {

namespace {

using std::numbers::pi;

template <class V>
V checked(const quad::SimpsonOutcome<V>& r, const char* what) {
  if (!r.converged) {
    double best = 0.0;
    if constexpr (std::is_same_v<V, double>) {
      best = r.value;
    } else {
      best = r.value.v[0];
    }
    std::ostringstream msg;
    msg << what << ": tolerance not reached within max_depth (error estimate "
        << r.error_estimate << ")";
    throw ConvergenceError(msg.str(), best, r.error_estimate);
  }
  return r.value;
}

// Nested adaptive Simpson: outer integral over [a0, b0] at tolerance tol/2,
// inner over [a1, b1] at (tol/2)/(b0 - a0), so the total stays below tol.
template <class V, class Integrand>
V nested_simpson(const Integrand& integrand, double a0, double b0, double a1, double b1,
                 const QuadratureSpec& spec, double tol, const char* what) {
  const double outer_tol = 0.5 * tol;
  const double inner_tol = outer_tol / (b0 - a0);
  bool inner_ok = true;
  double inner_err = 0.0;
  auto outer = [&](double theta) {
    auto inner = [&](double phi) { return integrand(theta, phi); };
    const auto r = quad::adaptive_simpson<V>(inner, a1, b1, inner_tol, spec.max_depth);
    if (!r.converged) {
      inner_ok = false;
      inner_err = std::max(inner_err, r.error_estimate);
    }
    return r.value;
  };
  const auto r = quad::adaptive_simpson<V>(outer, a0, b0, outer_tol, spec.max_depth);
  if (!inner_ok) {
    auto failed = r;
    failed.converged = false;
    failed.error_estimate += inner_err * (b0 - a0);
    return checked(failed, what);
  }
  return checked(r, what);
}

void check_diag_order(int n, int m) {
  if (n < 0 || m < 0 || n % 2 != 0 || m % 2 != 0 || n + m > 8)
    throw DomainError("oracle: need even n, m >= 0 with n + m <= 8");
}

// One octant, theta from the x3 axis; the integrand is even in each
// coordinate so the full sphere is 8x the octant.
template <std::size_t K>
std::vector<double> octant_batch(std::span<const DiagOrder> orders, double b1, double b2,
                                 const QuadratureSpec& spec) {
  std::array<int, K> half_n{};
  std::array<int, K> half_m{};
  for (std::size_t k = 0; k < orders.size(); ++k) {
    half_n[k] = orders[k].n / 2;
    half_m[k] = orders[k].m / 2;
  }
  const std::size_t count = orders.size();
  auto integrand = [&](double theta, double phi) {
    const double s = std::sin(theta);
    const double x1 = s * std::cos(phi);
    const double x2 = s * std::sin(phi);
    const double q1 = x1 * x1;
    const double q2 = x2 * x2;
    const double w = std::exp(b1 * q1 + b2 * q2) * s;
    std::array<double, 5> p1{1.0, q1, q1 * q1, q1 * q1 * q1, q1 * q1 * q1 * q1};
    std::array<double, 5> p2{1.0, q2, q2 * q2, q2 * q2 * q2, q2 * q2 * q2 * q2};
    quad::Packed<K> out;
    for (std::size_t k = 0; k < count; ++k) out.v[k] = w * p1[half_n[k]] * p2[half_m[k]];
    return out;
  };
  const auto v = nested_simpson<quad::Packed<K>>(integrand, 0.0, 0.5 * pi, 0.0, 0.5 * pi, spec,
                                                 spec.abs_tol / 8.0, "z_nm_oracle");
  std::vector<double> result(count);
  for (std::size_t k = 0; k < count; ++k) result[k] = 8.0 * v.v[k];
  return result;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be > 0");
  if (max_depth < 10) throw DomainError("QuadratureSpec: max_depth must be >= 10");
}

double adaptive_simpson_1d(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_depth) {
  if (!(a < b)) throw DomainError("adaptive_simpson_1d: need a < b");
  if (!(abs_tol > 0.0)) throw DomainError("adaptive_simpson_1d: abs_tol must be > 0");
  return checked(quad::adaptive_simpson<double>(f, a, b, abs_tol, max_depth),
                 "adaptive_simpson_1d");
}

double z_nm_oracle(int n, int m, double b1, double b2, const QuadratureSpec& spec) {
  const DiagOrder order{n, m};
  return z_nm_oracle_batch(std::span<const DiagOrder>(&order, 1), b1, b2, spec)[0];
}

std::vector<double> z_nm_oracle_batch(std::span<const DiagOrder> orders, double b1, double b2,
                                      const QuadratureSpec& spec) {
  spec.validate();
  if (orders.empty()) return {};
  if (orders.size() > kMaxBatch) throw DomainError("z_nm_oracle_batch: too many orders");
  for (const auto& o : orders) check_diag_order(o.n, o.m);
  if (!(b1 <= 0.0) || !(b2 <= 0.0)) throw DomainError("z_nm_oracle: need b1, b2 <= 0");
  const std::size_t k = orders.size();
  if (k == 1) return octant_batch<1>(orders, b1, b2, spec);
  if (k <= 3) return octant_batch<3>(orders, b1, b2, spec);
  if (k <= 6) return octant_batch<6>(orders, b1, b2, spec);
  if (k <= 10) return octant_batch<10>(orders, b1, b2, spec);
  return octant_batch<kMaxBatch>(orders, b1, b2, spec);
}

OctantRule::OctantRule(std::size_t nodes_per_axis)
    : n_(nodes_per_axis),
      weight_(nodes_per_axis),
      sin_theta_(nodes_per_axis),
      cos2_phi_(nodes_per_axis),
      sin2_phi_(nodes_per_axis) {
  const auto rule = quad::gauss_legendre(nodes_per_axis);
  const double half = 0.25 * pi;  // half-length of [0, pi/2]
  for (std::size_t i = 0; i < n_; ++i) {
    const double t = half * (1.0 + rule.nodes[i]);
    weight_[i] = half * rule.weights[i];
    sin_theta_[i] = std::sin(t);
    const double c = std::cos(t);
    const double s = std::sin(t);
    cos2_phi_[i] = c * c;
    sin2_phi_[i] = s * s;
  }
}

std::size_t OctantRule::nodes_for(double max_abs_b) {
  return 32 + 4 * static_cast<std::size_t>(std::ceil(std::sqrt(std::max(0.0, max_abs_b))));
}

void OctantRule::integrate(std::span<const DiagOrder> orders, double b1, double b2,
                           std::span<double> out) const {
  if (out.size() != orders.size()) throw DomainError("OctantRule: output size mismatch");
  if (orders.size() > kMaxBatch) throw DomainError("OctantRule: too many orders");
  for (const auto& o : orders) check_diag_order(o.n, o.m);
  std::array<double, kMaxBatch> acc{};
  const std::size_t count = orders.size();
  for (std::size_t i = 0; i < n_; ++i) {
    const double s = sin_theta_[i];
    const double s2 = s * s;
    std::array<double, kMaxBatch> row{};
    for (std::size_t j = 0; j < n_; ++j) {
      const double q1 = s2 * cos2_phi_[j];
      const double q2 = s2 * sin2_phi_[j];
      const double w = weight_[j] * std::exp(b1 * q1 + b2 * q2);
      const std::array<double, 5> p1{1.0, q1, q1 * q1, q1 * q1 * q1, q1 * q1 * q1 * q1};
      const std::array<double, 5> p2{1.0, q2, q2 * q2, q2 * q2 * q2, q2 * q2 * q2 * q2};
      for (std::size_t k = 0; k < count; ++k)
        row[k] += w * p1[orders[k].n / 2] * p2[orders[k].m / 2];
    }
    for (std::size_t k = 0; k < count; ++k) acc[k] += weight_[i] * s * row[k];
  }
  for (std::size_t k = 0; k < count; ++k) out[k] = 8.0 * acc[k];
}

std::vector<double> z_nm_gauss_legendre_batch(std::span<const DiagOrder> orders, double b1,
                                              double b2) {
  if (!(b1 <= 0.0) || !(b2 <= 0.0)) throw DomainError("z_nm_gauss_legendre: need b1, b2 <= 0");
  const OctantRule rule(OctantRule::nodes_for(std::max(-b1, -b2)));
  std::vector<double> out(orders.size());
  rule.integrate(orders, b1, b2, out);
  return out;
}

double ShiftedValue::unshifted() const { return value * std::exp(shift); }

double largest_eigenvalue(const BinghamParam& b) {
  const double off = b(0, 1) * b(0, 1) + b(0, 2) * b(0, 2) + b(1, 2) * b(1, 2);
  if (off == 0.0) return std::max({b(0, 0), b(1, 1), b(2, 2)});
  const double q = (b(0, 0) + b(1, 1) + b(2, 2)) / 3.0;
  const double d0 = b(0, 0) - q;
  const double d1 = b(1, 1) - q;
  const double d2 = b(2, 2) - q;
  const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off) / 6.0);
  // det((B - qI) / p) / 2
  const double a01 = b(0, 1) / p;
  const double a02 = b(0, 2) / p;
  const double a12 = b(1, 2) / p;
  const double e0 = d0 / p;
  const double e1 = d1 / p;
  const double e2 = d2 / p;
  const double det = e0 * (e1 * e2 - a12 * a12) - a01 * (a01 * e2 - a12 * a02) +
                     a02 * (a01 * a12 - e1 * a02);
  const double r = std::clamp(0.5 * det, -1.0, 1.0);
  return q + 2.0 * p * std::cos(std::acos(r) / 3.0);
}

GeneralMomentSet general_oracle_all(const BinghamParam& b, const QuadratureSpec& spec) {
  spec.validate();
  if (!b.finite()) throw DomainError("z_general_oracle: non-finite parameter matrix");
  const double shift = largest_eigenvalue(b);
  const Mat3 m = b.matrix();
  const auto& monos = all_monomials();
  auto integrand = [&](double theta, double phi) {
    const double s = std::sin(theta);
    const std::array<double, 3> x{s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
    double q = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) q += m[i][j] * x[i] * x[j];
    const double w = std::exp(q - shift) * s;
    std::array<std::array<double, 5>, 3> pw{};
    for (std::size_t i = 0; i < 3; ++i) {
      pw[i][0] = 1.0;
      for (std::size_t e = 1; e < 5; ++e) pw[i][e] = pw[i][e - 1] * x[i];
    }
    quad::Packed<kMonomialCount> out;
    for (std::size_t k = 0; k < kMonomialCount; ++k)
      out.v[k] = w * pw[0][monos[k].n1] * pw[1][monos[k].n2] * pw[2][monos[k].n3];
    return out;
  };
  // x -> -x maps the upper hemisphere onto the lower one: even orders double,
  // odd orders cancel.
  const auto v = nested_simpson<quad::Packed<kMonomialCount>>(
      integrand, 0.0, 0.5 * pi, 0.0, 2.0 * pi, spec, spec.abs_tol / 16.0, "z_general_oracle");
  GeneralMomentSet out;
  out.shift = shift;
  for (std::size_t k = 0; k < kMonomialCount; ++k)
    out.shifted[k] = monos[k].order() % 2 == 0 ? 2.0 * v.v[k] : 0.0;
  return out;
}

ShiftedValue z_general_oracle_shifted(const Monomial& mono, const BinghamParam& b,
                                      const QuadratureSpec& spec) {
  spec.validate();
  if (!b.finite()) throw DomainError("z_general_oracle: non-finite parameter matrix");
  if (mono.n1 < 0 || mono.n2 < 0 || mono.n3 < 0 || mono.order() > kMaxMomentOrder)
    throw DomainError("z_general_oracle: need n1 + n2 + n3 <= 4");
  const double shift = largest_eigenvalue(b);
  if (mono.order() % 2 != 0) return {0.0, shift};
  const Mat3 m = b.matrix();
  auto integrand = [&](double theta, double phi) {
    const double s = std::sin(theta);
    const std::array<double, 3> x{s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
    double q = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) q += m[i][j] * x[i] * x[j];
    return std::exp(q - shift) * s * std::pow(x[0], mono.n1) * std::pow(x[1], mono.n2) *
           std::pow(x[2], mono.n3);
  };
  // even order: twice the upper hemisphere
  const double v = nested_simpson<double>(integrand, 0.0, 0.5 * pi, 0.0, 2.0 * pi, spec,
                                          spec.abs_tol / 16.0, "z_general_oracle");
  return {2.0 * v, shift};
}

double z_general_oracle(const Monomial& mono, const BinghamParam& b, const QuadratureSpec& spec) {
  return z_general_oracle_shifted(mono, b, spec).unshifted();
}

}  // namespace bingham::oracle
