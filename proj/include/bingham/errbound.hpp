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

namespace bingham::errbound {

struct ErrorBoundReport {
  double d = 0.0;
  int N = 0;
  int n = 0;
  int m = 0;
  double bound = 0.0;
  // bound = term1 - term2 + term3
  double term1 = 0.0;  // 4 pi F(sqrt d) / sqrt d
  double term2 = 0.0;  // 2 pi sum_{j<=N} c_j d^{-j-1} gamma(j+1, d)
  double term3 = 0.0;  // 2 pi sum_{j<=N+max(n,m)} c_j alpha_j(d)
};

/// Upper bound on |Z_nm - Zhat_nm| for the far-region series truncated at N,
/// valid when both b1, b2 <= -d.
ErrorBoundReport theorem1_bound(double d, int N, int n, int m);

struct SuggestedParams {
  double target = 0.0;  // demanded error of the chosen row
  double d = 0.0;
  int n1 = 0;
  int n2 = 0;
  bool clamped = false;  // request fell outside the tabulated span
};

struct ParamRow {
  double target;
  double d;
  int n1;
  int n2;
};

inline constexpr std::array<ParamRow, 4> kSuggestedRows{{
    {5e-5, 13.0, 5, 4},
    {5e-6, 16.0, 6, 5},
    {5e-7, 20.0, 6, 6},
    {5e-8, 26.0, 6, 6},
}};

/// Cheapest tabulated row whose demanded error does not exceed `target_abs_error`.
SuggestedParams suggest_params(double target_abs_error);

}  // namespace bingham::errbound
