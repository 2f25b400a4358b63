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

#include "bingham/types.hpp"

#include <cmath>

#include "bingham/errors.hpp"

namespace bingham {

const char* to_string(TableErrorKind kind) noexcept {
  switch (kind) {
    case TableErrorKind::kIo: return "io error";
    case TableErrorKind::kTruncated: return "truncated stream";
    case TableErrorKind::kBadMagic: return "bad magic";
    case TableErrorKind::kUnsupportedVersion: return "unsupported version";
    case TableErrorKind::kInconsistentCounts: return "inconsistent counts";
    case TableErrorKind::kChecksumMismatch: return "checksum mismatch";
    case TableErrorKind::kInvalidConfig: return "invalid config";
  }
  return "table error";
}

BinghamParam BinghamParam::from_matrix(const Mat3& m) {
  return {m[0][0], m[1][1], m[2][2], 0.5 * (m[0][1] + m[1][0]), 0.5 * (m[0][2] + m[2][0]),
          0.5 * (m[1][2] + m[2][1])};
}

double BinghamParam::operator()(std::size_t i, std::size_t j) const noexcept {
  if (i == j) return upper_[i];
  const std::size_t lo = i < j ? i : j;
  const std::size_t hi = i < j ? j : i;
  // (0,1) -> 3, (0,2) -> 4, (1,2) -> 5
  return upper_[2 + lo + hi];
}

Mat3 BinghamParam::matrix() const noexcept {
  Mat3 m{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = (*this)(i, j);
  return m;
}

bool BinghamParam::finite() const noexcept {
  for (double v : upper_)
    if (!std::isfinite(v)) return false;
  return true;
}

double BinghamParam::norm() const noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < 6; ++k) s += (k < 3 ? 1.0 : 2.0) * upper_[k] * upper_[k];
  return std::sqrt(s);
}

BinghamParam BinghamParam::shifted(double s) const noexcept {
  BinghamParam out = *this;
  for (std::size_t k = 0; k < 3; ++k) out.upper_[k] += s;
  return out;
}

namespace {

std::array<Monomial, kMonomialCount> build_monomials() {
  std::array<Monomial, kMonomialCount> out{};
  std::size_t k = 0;
  for (int order = 0; order <= kMaxMomentOrder; ++order)
    for (int n1 = order; n1 >= 0; --n1)
      for (int n2 = order - n1; n2 >= 0; --n2) out[k++] = {n1, n2, order - n1 - n2};
  return out;
}

}  // namespace

const std::array<Monomial, kMonomialCount>& all_monomials() noexcept {
  static const auto table = build_monomials();
  return table;
}

std::size_t monomial_index(const Monomial& mono) {
  if (mono.n1 < 0 || mono.n2 < 0 || mono.n3 < 0 || mono.order() > kMaxMomentOrder)
    throw DomainError("monomial order must be in [0, 4] with nonnegative exponents");
  const int order = mono.order();
  // monomials of lower order: C(order+2, 3)
  const std::size_t before = static_cast<std::size_t>(order * (order + 1) * (order + 2) / 6);
  // within an order, n1 descends then n2 descends
  const int a = order - mono.n1;  // rows preceding this n1 contribute 1+2+...+a entries
  const std::size_t offset = static_cast<std::size_t>(a * (a + 1) / 2 + (a - mono.n2));
  return before + offset;
}

}  // namespace bingham
