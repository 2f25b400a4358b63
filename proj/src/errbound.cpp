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

#include "bingham/errbound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bingham/errors.hpp"
#include "bingham/specfun.hpp"

namespace bingham::errbound {

namespace {

// (2j-1)!! / (2j)!!, via the ratio recurrence to stay exact-ish for large j
double half_coeff(int j) {
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c *= (2.0 * i - 1.0) / (2.0 * i);
  return c;
}

}  // namespace

ErrorBoundReport theorem1_bound(double d, int N, int n, int m) {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("theorem1_bound: need d > 0");
  if (N < 0) throw DomainError("theorem1_bound: need N >= 0");
  if (n < 0 || m < 0 || n % 2 != 0 || m % 2 != 0)
    throw DomainError("theorem1_bound: n, m must be even and nonnegative");

  constexpr double pi = std::numbers::pi;
  const double sd = std::sqrt(d);
  ErrorBoundReport r;
  r.d = d;
  r.N = N;
  r.n = n;
  r.m = m;
  r.term1 = 4.0 * pi * specfun::dawson(sd) / sd;
  double s2 = 0.0;
  for (int j = 0; j <= N; ++j)
    s2 += half_coeff(j) * std::pow(d, -j - 1.0) * specfun::lower_inc_gamma(j + 1, d);
  r.term2 = 2.0 * pi * s2;
  double s3 = 0.0;
  const int top = N + std::max(n, m);
  for (int j = 0; j <= top; ++j) s3 += half_coeff(j) * specfun::exp_int_alpha(j, d);
  r.term3 = 2.0 * pi * s3;
  r.bound = r.term1 - r.term2 + r.term3;
  return r;
}

SuggestedParams suggest_params(double target_abs_error) {
  if (!(target_abs_error > 0.0) || std::isnan(target_abs_error))
    throw DomainError("suggest_params: target must be positive");
  // rows are ordered loosest first; relative slack absorbs decimal round-off
  const double t = target_abs_error * (1.0 + 1e-12);
  for (const auto& row : kSuggestedRows) {
    if (row.target <= t) {
      const bool clamped = target_abs_error > kSuggestedRows.front().target * (1.0 + 1e-12);
      return {row.target, row.d, row.n1, row.n2, clamped};
    }
  }
  const auto& last = kSuggestedRows.back();
  return {last.target, last.d, last.n1, last.n2, true};
}

}  // namespace bingham::errbound
