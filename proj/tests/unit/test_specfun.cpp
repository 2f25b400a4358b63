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

#include <cmath>
#include <numbers>

#include "bingham/errors.hpp"
#include "bingham/specfun.hpp"
#include "test_support.hpp"

using namespace bingham;
using namespace bingham::specfun;
using test_support::rel_err;

namespace {
const double kSqrtPi = std::sqrt(std::numbers::pi);

// Direct positive-term series, valid for z >= 0; used to check the Kummer path.
double hyp1f1_direct(double a, double b, double z) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 2000; ++k) {
    term *= (a + k) / (b + k) * z / (k + 1);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}
}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("double factorial") {
  CHECK(double_factorial(-1) == 1.0);
  CHECK(double_factorial(0) == 1.0);
  CHECK(double_factorial(5) == 15.0);
  CHECK(double_factorial(7) == 105.0);
  // exact against integer products
  for (int k = 1; k <= 30; ++k) {
    unsigned long long p = 1;
    for (int i = k; i > 1; i -= 2) p *= static_cast<unsigned long long>(i);
    CHECK(double_factorial(k) == static_cast<double>(p));
  }
  CHECK_THROWS_AS(double_factorial(-2), DomainError);
}

TEST_CASE("rising factorial") {
  CHECK(rising_factorial(3.7, 0) == 1.0);
  CHECK(rising_factorial(1.5, 2) == doctest::Approx(3.75).epsilon(1e-15));
  CHECK(rising_factorial(0.5, 3) == doctest::Approx(1.875).epsilon(1e-15));
}

TEST_CASE("gamma half ratio") {
  CHECK(rel_err(gamma_half_ratio(0), kSqrtPi) <= 1e-14);
  CHECK(rel_err(gamma_half_ratio(2), kSqrtPi / 2) <= 1e-14);
  CHECK(rel_err(gamma_half_ratio(4), 3 * kSqrtPi / 8) <= 1e-14);
  CHECK(rel_err(gamma_half_ratio(4), std::tgamma(2.5) / std::tgamma(3.0)) <= 1e-14);
  CHECK_THROWS_AS(gamma_half_ratio(3), DomainError);
  CHECK_THROWS_AS(gamma_half_ratio(-2), DomainError);
}

TEST_CASE("confluent hypergeometric, restricted form") {
  CHECK(hyp1f1_half(0, 0, 0.0) == 1.0);
  // references computed at 30 digits
  CHECK(rel_err(hyp1f1_half(0, 0, -1.0), 0.645035270449150068107996629746) <= 1e-12);
  CHECK(rel_err(hyp1f1_half(2, 1, -4.0), 0.0525622813233319541136705202636) <= 1e-12);
  CHECK(rel_err(hyp1f1_half(0, 0, -100.0), 0.0565616266474541925299391880158) <= 1e-12);
  CHECK(rel_err(hyp1f1(0.5, 1.5, -1.0).value, 0.746824132812427025399467436132) <= 1e-12);
  CHECK(rel_err(hyp1f1(0.5, 1.5, -1.0).value, kSqrtPi * std::erf(1.0) / 2.0) <= 1e-12);
  CHECK_THROWS_AS(hyp1f1_half(0, 0, 0.5), DomainError);
}

TEST_CASE("general 1F1 reports its error estimate") {
  const auto r = hyp1f1(0.5, 1.5, -30.0);
  CHECK(r.est_rel_error <= 1e-12);
  CHECK(rel_err(r.value, kSqrtPi * std::erf(std::sqrt(30.0)) / (2 * std::sqrt(30.0))) <= 1e-12);
}

TEST_CASE("Kummer identity over the used parameter pairs") {
  for (int m : {0, 2, 4}) {
    for (int k = 0; k <= 5; ++k) {
      const double a = (m + 1) / 2.0 + k, b = (m + 2) / 2.0 + k;
      for (double z = -100.0; z <= 0.0; z += 2.5) {
        const double lhs = hyp1f1(a, b, z).value;
        const double rhs = std::exp(z) * hyp1f1_direct(b - a, b, -z);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(lhs));
      }
    }
  }
}

TEST_CASE("Dawson function") {
  CHECK(dawson(0.0) == 0.0);
  CHECK(rel_err(dawson(1.0), 0.538079506912768419136387420408) <= 1e-12);
  CHECK(rel_err(dawson(std::sqrt(30.0)), 0.0928918332756514588357953929551) <= 1e-12);
  CHECK(rel_err(dawson(0.5), 0.42443638350202229593404235249) <= 1e-12);
  CHECK(rel_err(dawson(3.0), 0.17827103061055828734259949224) <= 1e-12);
  CHECK(rel_err(dawson(10.0), 0.0502538471875985280327484198607) <= 1e-12);

  SUBCASE("both sides of the series seam") {
    CHECK(rel_err(dawson(5.9), 0.0860196819926482398541118385143) <= 1e-12);
    CHECK(rel_err(dawson(6.1), 0.0831163305083516530296254753013) <= 1e-12);
    const double lo = dawson(std::nextafter(6.0, 0.0)), hi = dawson(6.0);
    CHECK(std::abs(lo - hi) <= 1e-13 * hi);
  }

  SUBCASE("ODE residual F' + 2xF = 1") {
    const double h = 1e-5;
    for (double x : {0.5, 1.0, 2.0, 5.0}) {
      const double fp = (dawson(x + h) - dawson(x - h)) / (2 * h);
      CHECK(std::abs(fp + 2 * x * dawson(x) - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("lower incomplete gamma") {
  for (double x : {0.1, 1.0, 7.5, 40.0})
    CHECK(rel_err(lower_inc_gamma(1, x), -std::expm1(-x)) <= 1e-12);
  CHECK(rel_err(lower_inc_gamma(2, 1.0), 1.0 - 2.0 * std::exp(-1.0)) <= 1e-12);
  CHECK(rel_err(lower_inc_gamma(6, 30.0), 119.999997291181504324459007858) <= 1e-12);
  CHECK(rel_err(lower_inc_gamma(3, 2.5), 0.91237376823334096400374506331) <= 1e-12);
  CHECK(rel_err(lower_inc_gamma(20, 10.0), 420203776499544.494851373075774) <= 1e-12);
  for (int n = 1; n <= 12; ++n) {
    const double r = lower_inc_gamma(n, 200.0) / factorial(n - 1);
    CHECK(r >= 1.0 - 1e-12);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("exponential integral alpha") {
  for (double z : {0.5, 3.0, 30.0}) CHECK(rel_err(exp_int_alpha(0, z), std::exp(-z) / z) <= 1e-12);
  CHECK(rel_err(exp_int_alpha(1, 1.0), 2.0 / std::exp(1.0)) <= 1e-12);
  CHECK(rel_err(exp_int_alpha(9, 30.0), 4.37660409676457951764203082697e-15) <= 1e-12);
  for (int n = 0; n <= 12; ++n) {
    double prev = HUGE_VAL;
    for (double z = 0.5; z <= 60.0; z += 0.5) {
      const double v = exp_int_alpha(n, z);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

}  // TEST_SUITE
