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
#include <random>

#include "bingham/errbound.hpp"
#include "bingham/errors.hpp"
#include "bingham/oracle.hpp"
#include "bingham/series.hpp"
#include "test_support.hpp"

using namespace bingham;
using namespace bingham::series;

namespace {
const GmDerivGrid& default_gm() {
  static const GmDerivGrid g = build_gm_grid(30.0, 5, 0.001);
  return g;
}
}  // namespace

TEST_SUITE("series") {

TEST_CASE("far parameters") {
  FarParams p;
  CHECK(p.n1 == 5);
  CHECK(p.d == 30.0);
  CHECK_NOTHROW(p.validate());
  p.n1 = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.d = -1;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("far region against reference values") {
  CHECK(std::abs(z_far(0, 0, -40, -40) - 0.15912181656275023258) <= 6.1e-8);
  CHECK(std::abs(z_far(4, 0, -30, -30) - 0.00018428064655823717379) <= 6.1e-8);
  CHECK(std::abs(z_far(2, 0, -35, -50) - 0.0022061153097021143359) <= 6.1e-8);
  CHECK(z_far(2, 0, -35, -50) == z_far(0, 2, -50, -35));
  CHECK_THROWS_AS(z_far(0, 0, -29.9, -40), DomainError);
  CHECK_THROWS_AS(z_far(0, 0, -40, -10), DomainError);
  CHECK_THROWS_AS(z_far(1, 0, -40, -40), DomainError);
}

TEST_CASE("far region swap symmetry is bitwise") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-200.0, -30.0);
  for (int t = 0; t < 200; ++t) {
    const double b1 = u(rng), b2 = u(rng);
    for (auto [n, m] : {std::pair{0, 0}, {2, 0}, {4, 0}, {2, 2}, {0, 4}})
      CHECK(z_far(n, m, b1, b2) == z_far(m, n, b2, b1));
  }
}

TEST_CASE("far region error stays under the bound") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-200.0, -30.0);
  const oracle::DiagOrder orders[] = {{0, 0}, {2, 0}, {0, 2}, {4, 0}, {0, 4}, {2, 2}};
  for (int t = 0; t < 20; ++t) {
    const double b1 = u(rng), b2 = u(rng);
    const auto z = oracle::z_nm_gauss_legendre_batch(orders, b1, b2);
    for (std::size_t k = 0; k < 6; ++k) {
      const auto [n, m] = orders[k];
      const double bound = errbound::theorem1_bound(30.0, 5, n, m).bound;
      CHECK(std::abs(z_far(n, m, b1, b2) - z[k]) <= bound);
    }
  }
}

TEST_CASE("far approximation decays along the diagonal") {
  double prev = HUGE_VAL;
  for (double b = -30.0; b >= -100.0; b -= 5.0) {
    const double v = z_far(0, 0, b, b);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("g_m derivatives") {
  const double pi = std::numbers::pi;
  CHECK(gm_deriv(0, 0, 0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(gm_deriv(0, 2, 0.0) == doctest::Approx(pi / 4).epsilon(1e-15));
  // analytic 4th and 2nd x1-derivatives of the defining integral, 30 digits
  CHECK(test_support::rel_err(gm_deriv(2, 0, -10.0), 2.98889771381526183102859144317) <= 1e-11);
  CHECK(test_support::rel_err(gm_deriv(1, 2, -5.0), 0.0742397909142995092418384010549) <= 1e-11);

  SUBCASE("finite differences of a quadrature of g_0") {
    auto g0 = [](double x1) {
      const double a = 1.0 - x1 * x1;
      return oracle::adaptive_simpson_1d(
          [a](double t) { return std::exp(-10.0 * a * std::sin(t) * std::sin(t)); }, 0.0,
          std::numbers::pi / 2, 1e-14, 40);
    };
    const double h = 1e-3;
    const double fd4 = (g0(2 * h) - 4 * g0(h) + 6 * g0(0) - 4 * g0(-h) + g0(-2 * h)) / std::pow(h, 4);
    CHECK(std::abs(fd4 - gm_deriv(2, 0, -10.0)) <= 1e-6 * 1e4);  // fd noise ~ eps/h^4
  }
}

TEST_CASE("g_m grid") {
  const auto& g = default_gm();
  CHECK(g.nodes == 30001);
  CHECK(g.values.size() == 30001u * 6u * 3u);
  CHECK(g.at(0, 0, 0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(g.at(5000, 1, 2) == gm_deriv(1, 2, -5.0));
  CHECK_NOTHROW(g.validate());
  CHECK_THROWS_AS(build_gm_grid(30.0, 5, 0.0007), DomainError);

  SUBCASE("interpolation reproduces nodes in both modes") {
    for (std::size_t k : {0u, 1u, 777u, 29999u, 30000u}) {
      const double b2 = -static_cast<double>(k) * 0.001;
      for (auto mode : {GmInterpolation::kLinear, GmInterpolation::kCubic})
        CHECK(std::abs(g.interpolate(3, 4, b2, mode) - g.at(k, 3, 4)) <=
              1e-13 * std::abs(g.at(k, 3, 4)));
    }
  }

  SUBCASE("cubic interpolation tracks the analytic derivative between nodes") {
    for (double b2 : {-0.0004, -3.1415, -17.0009, -29.9996})
      for (int j = 0; j <= 5; ++j)
        CHECK(std::abs(g.interpolate(j, 0, b2, GmInterpolation::kCubic) - gm_deriv(j, 0, b2)) <=
              1e-9 * std::max(1.0, std::abs(gm_deriv(j, 0, b2))));
  }
}

TEST_CASE("mixed region against reference values") {
  const auto& g = default_gm();
  CHECK(std::abs(z_mixed(0, 0, -50, 0, g, 5) - 1.5749609945722419743) <= 6.1e-8);
  CHECK(std::abs(z_mixed(2, 2, -31, -0.5, g, 5) - 0.010817258700910561294) <= 6.1e-8);
  CHECK(std::abs(z_mixed(0, 0, -100, -0.1, g, 5) - 1.0602722099281348779) <= 6.1e-8);
  CHECK(z_mixed(0, 0, -5, -60, g, 5) == z_mixed(0, 0, -60, -5, g, 5));
  CHECK(z_mixed(2, 0, -5, -60, g, 5) == z_mixed(0, 2, -60, -5, g, 5));
  // the linear scheme is close but not within the Z budget everywhere
  CHECK(std::abs(z_mixed(0, 0, -50, 0, g, 5, GmInterpolation::kLinear) - 1.5749609945722419743) <=
        2e-7);
  CHECK_THROWS_AS(z_mixed(0, 0, -10, -10, g, 5), DomainError);
  CHECK_THROWS_AS(z_mixed(0, 0, -40, -40, g, 5), DomainError);
  CHECK_THROWS_AS(z_mixed(0, 0, -40, -1, g, 6), DomainError);
}

TEST_CASE("far and mixed agree across the seam") {
  const auto& g = default_gm();
  for (double b2 : {-31.0, -45.0, -150.0}) {
    const double far = z_far(0, 0, -30.0, b2);
    const double mixed = z_mixed(0, 0, -30.0 + 1e-9, b2, g, 5);
    CHECK(std::abs(far - mixed) <= 1.3e-7);
  }
}

TEST_CASE("step counting") {
  CHECK(exact_step_count(30.0, 0.025) == 1200);
  CHECK(exact_step_count(30.0, 0.001) == 30000);
  CHECK_THROWS_AS(exact_step_count(30.0, 0.07), DomainError);
}

}  // TEST_SUITE
