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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

namespace bingham::quad {

/// Fixed-size vector of integrand values, so one adaptive pass can carry
/// several moments that share the same exponential weight.
template <std::size_t K>
struct Packed {
  std::array<double, K> v{};

  Packed& operator+=(const Packed& o) noexcept {
    for (std::size_t i = 0; i < K; ++i) v[i] += o.v[i];
    return *this;
  }
  friend Packed operator+(Packed a, const Packed& b) noexcept { return a += b; }
  friend Packed operator-(Packed a, const Packed& b) noexcept {
    for (std::size_t i = 0; i < K; ++i) a.v[i] -= b.v[i];
    return a;
  }
  friend Packed operator*(Packed a, double s) noexcept {
    for (double& x : a.v) x *= s;
    return a;
  }
  friend Packed operator*(double s, Packed a) noexcept { return a * s; }
};

inline double magnitude(double x) noexcept { return std::abs(x); }

template <std::size_t K>
double magnitude(const Packed<K>& p) noexcept {
  double m = 0.0;
  for (double x : p.v) m = std::max(m, std::abs(x));
  return m;
}

template <class V>
struct SimpsonOutcome {
  V value{};
  double error_estimate = 0.0;
  bool converged = true;
};

namespace detail {

template <class V, class F>
struct SimpsonRun {
  F& f;
  int max_depth;
  int min_depth;
  SimpsonOutcome<V> out{};

  void step(double a, double b, const V& fa, const V& fm, const V& fb, const V& whole, double tol,
            int depth) {
    const double m = 0.5 * (a + b);
    const V flm = f(0.5 * (a + m));
    const V frm = f(0.5 * (m + b));
    const double h = (b - a) / 12.0;
    const V left = (fa + 4.0 * flm + fm) * h;
    const V right = (fm + 4.0 * frm + fb) * h;
    const V delta = left + right - whole;
    const double err = magnitude(delta) / 15.0;
    // below this the Simpson difference is rounding noise, not truncation
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * magnitude(left + right);
    const bool done = depth >= min_depth && (err <= tol || err <= noise);
    if (done || depth >= max_depth) {
      // Richardson-corrected panel value
      out.value += left + right + delta * (1.0 / 15.0);
      out.error_estimate += err;
      if (!done) out.converged = false;
      return;
    }
    step(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
    step(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace detail

/// Bisecting adaptive Simpson rule. A panel is accepted once
/// |S(a,m) + S(m,b) - S(a,b)| / 15 <= tol, with tol halved at each split.
/// Panels still unresolved at max_depth are accepted; `converged` is cleared
/// only if the summed error estimate then exceeds abs_tol.
/// `min_depth` forces an initial uniform refinement so that a coincidental
/// agreement on the coarsest panels cannot end the recursion early.
template <class V, class F>
SimpsonOutcome<V> adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth,
                                   int min_depth = 2) {
  detail::SimpsonRun<V, std::remove_reference_t<F>> run{f, max_depth, min_depth, {}};
  const V fa = f(a);
  const V fm = f(0.5 * (a + b));
  const V fb = f(b);
  const V whole = (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
  run.step(a, b, fa, fm, fb, whole, abs_tol, 0);
  // a panel stuck at max_depth is harmless if the summed estimate still fits
  if (!run.out.converged && run.out.error_estimate <= abs_tol) run.out.converged = true;
  return run.out;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(std::size_t n);

}  // namespace bingham::quad
