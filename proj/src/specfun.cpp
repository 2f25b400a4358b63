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

#include "bingham/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bingham/errors.hpp"

namespace bingham::specfun {

namespace {

constexpr double kSeriesEps = 1e-17;
constexpr int kMaxSeriesTerms = 100000;

// Dawson: the positive-term series is used below this point and the
// asymptotic expansion above it, where its smallest term is < 1e-15.
constexpr double kDawsonSeam = 6.0;

}  // namespace

double double_factorial(int k) {
  if (k < -1) throw DomainError("double_factorial: k must be >= -1, got " + std::to_string(k));
  double r = 1.0;
  for (int i = k; i > 1; i -= 2) r *= i;
  return r;
}

double factorial(int n) {
  if (n < 0) throw DomainError("factorial: negative argument");
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double rising_factorial(double x, int k) {
  if (k < 0) throw DomainError("rising_factorial: k must be >= 0");
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x + i;
  return r;
}

double gamma_half_ratio(int m) {
  constexpr double sqrt_pi = 1.7724538509055160273;
  switch (m) {
    case 0: return sqrt_pi;
    case 2: return sqrt_pi / 2.0;
    case 4: return 3.0 * sqrt_pi / 8.0;
    case 6: return 5.0 * sqrt_pi / 16.0;
    default: throw DomainError("gamma_half_ratio: m must be one of 0, 2, 4, 6");
  }
}

SpecFunResult hyp1f1(double a, double b, double z) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("hyp1f1: parameters must be positive");
  if (!std::isfinite(z)) throw DomainError("hyp1f1: non-finite argument");
  if (z < 0.0) {
    // 1F1(a; b; z) = e^z 1F1(b-a; b; -z)
    if (b - a <= 0.0) throw DomainError("hyp1f1: Kummer transformation needs b > a");
    SpecFunResult r = hyp1f1(b - a, b, -z);
    r.value *= std::exp(z);
    return r;
  }
  double term = 1.0;
  double sum = 1.0;
  int k = 0;
  for (; k < kMaxSeriesTerms; ++k) {
    const double ratio = (a + k) / (b + k) * z / (k + 1);
    term *= ratio;
    sum += term;
    if (term <= kSeriesEps * sum && ratio < 1.0) break;
  }
  if (k == kMaxSeriesTerms) throw DomainError("hyp1f1: series did not converge");
  return {sum, (k + 2) * 2.2e-16};
}

double hyp1f1_half(int m, int k, double z) {
  if (m < 0 || m > 6 || m % 2 != 0) throw DomainError("hyp1f1_half: m must be 0, 2, 4 or 6");
  if (k < 0) throw DomainError("hyp1f1_half: k must be >= 0");
  if (z > 0.0) throw DomainError("hyp1f1_half: argument must be <= 0");
  return hyp1f1(0.5 * (m + 1) + k, 0.5 * (m + 2) + k, z).value;
}

double dawson(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return -dawson(-x);
  if (x == 0.0) return 0.0;
  const double x2 = x * x;
  if (x < kDawsonSeam) {
    // exp(-x^2) * sum_n x^(2n+1) / (n! (2n+1))
    double power = x;  // x^(2n+1) / n!
    double sum = x;
    for (int n = 1; n < kMaxSeriesTerms; ++n) {
      power *= x2 / n;
      const double term = power / (2 * n + 1);
      sum += term;
      if (term <= kSeriesEps * sum && n > x2) break;
    }
    return std::exp(-x2) * sum;
  }
  // F(x) ~ 1/(2x) * sum_n (2n-1)!! / (2x^2)^n, truncated at its smallest term.
  const double inv = 1.0 / (2.0 * x2);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    const double next = term * (2 * n - 1) * inv;
    if (next >= term || next <= kSeriesEps * sum) break;
    term = next;
    sum += term;
  }
  return sum / (2.0 * x);
}

double lower_inc_gamma(int n, double x) {
  if (n < 1) throw DomainError("lower_inc_gamma: n must be >= 1");
  if (!(x > 0.0)) throw DomainError("lower_inc_gamma: x must be > 0");
  if (x > n) {
    // (n-1)! (1 - e^{-x} sum_{i<n} x^i / i!); no cancellation once x > n
    double term = 1.0;
    double partial = 1.0;
    for (int i = 1; i < n; ++i) {
      term *= x / i;
      partial += term;
    }
    return factorial(n - 1) * (1.0 - std::exp(-x) * partial);
  }
  // x^n e^{-x} sum_k x^k / (n (n+1) ... (n+k)), all terms positive
  double term = 1.0 / n;
  double sum = term;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    term *= x / (n + k);
    sum += term;
    if (term <= kSeriesEps * sum) break;
  }
  return std::exp(n * std::log(x) - x) * sum;
}

double exp_int_alpha(int n, double z) {
  if (n < 0) throw DomainError("exp_int_alpha: n must be >= 0");
  if (!(z > 0.0)) throw DomainError("exp_int_alpha: z must be > 0");
  // sum_{i<=n} (n!/i!) z^(i-n-1), accumulated from i = n downwards
  double term = 1.0 / z;
  double sum = term;
  for (int i = n - 1; i >= 0; --i) {
    term *= (i + 1) / z;
    sum += term;
  }
  return std::exp(-z) * sum;
}

}  // namespace bingham::specfun
