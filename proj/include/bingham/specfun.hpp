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

// Special functions used by the series approximations and the far-region
// error bound. All functions are pure and accurate to about 1e-12 relative
// over the ranges the library calls them with.

namespace bingham::specfun {

/// Value plus an estimate of its relative error.
struct SpecFunResult {
  double value = 0.0;
  double est_rel_error = 0.0;
};

/// k!! = k(k-2)(k-4)...; (-1)!! = 0!! = 1. Requires k >= -1.
double double_factorial(int k);

/// n!, exact for n <= 22.
double factorial(int n);

/// C(n, k); zero when k < 0 or k > n.
double binomial(int n, int k);

/// Rising factorial x(x+1)...(x+k-1), with x^(0) = 1.
double rising_factorial(double x, int k);

/// Gamma((m+1)/2) / Gamma((m+2)/2) for m in {0, 2, 4, 6}.
double gamma_half_ratio(int m);

/// Kummer function 1F1(a; b; z) for a, b > 0. Negative arguments go through
/// the Kummer transformation so the summed series has positive terms.
SpecFunResult hyp1f1(double a, double b, double z);

/// 1F1((m+1)/2 + k; (m+2)/2 + k; z) for even m in [0, 6] and z <= 0.
double hyp1f1_half(int m, int k, double z);

/// Dawson's integral F(x) = exp(-x^2) * int_0^x exp(t^2) dt.
double dawson(double x);

/// Lower incomplete gamma function for integer order n >= 1 and x > 0.
double lower_inc_gamma(int n, double x);

/// alpha_n(z) = n! z^(-n-1) e^(-z) (1 + z + ... + z^n / n!), z > 0.
double exp_int_alpha(int n, double z);

}  // namespace bingham::specfun
