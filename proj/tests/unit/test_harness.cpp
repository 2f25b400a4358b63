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
#include <set>

#include "bingham/harness.hpp"
#include "test_support.hpp"

using namespace bingham;
using namespace bingham::harness;

TEST_SUITE("harness") {

TEST_CASE("sampling is stratified and reproducible") {
  const auto a = draw_samples(200, 42, 30.0);
  const auto b = draw_samples(200, 42, 30.0);
  const auto c = draw_samples(200, 43, 30.0);
  REQUIRE(a.size() == 600);
  std::size_t counts[3] = {};
  bool any_diff = false;
  std::set<bool> far_first;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].index == i);
    CHECK(a[i].b1 == b[i].b1);
    CHECK(a[i].b2 == b[i].b2);
    any_diff = any_diff || a[i].b1 != c[i].b1;
    CHECK(classify(a[i].b1, a[i].b2, 30.0) == a[i].region);
    ++counts[static_cast<int>(a[i].region)];
    for (double v : {a[i].b1, a[i].b2}) {
      CHECK(v <= 0.0);
      CHECK(v >= -std::pow(10.0, kFarLog10Max) * (1 + 1e-15));
    }
    if (a[i].region == Region::kMixed) far_first.insert(a[i].b1 <= -30.0);
  }
  CHECK(any_diff);
  CHECK(counts[0] == 200);
  CHECK(counts[1] == 200);
  CHECK(counts[2] == 200);
  CHECK(far_first.size() == 2);  // both orientations occur
  CHECK_THROWS_AS(draw_samples(1, 1, 0.0), DomainError);
}

TEST_CASE("uniform generator") {
  Rng r(1);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(lo < 1e-3);
  CHECK(hi > 1 - 1e-3);
}

TEST_CASE("histogram bins") {
  CHECK(histogram_bin(0.0) == 0);
  CHECK(histogram_bin(9.9e-11) == 0);
  CHECK(histogram_bin(1e-10) == 1);
  CHECK(histogram_bin(5e-9) == 2);
  CHECK(histogram_bin(1e-8) == 3);
  CHECK(histogram_bin(1e-7) == 4);
  CHECK(histogram_bin(std::nan("")) == 4);
  CHECK(histogram_label(4) == "[1e-7,inf)");
}

TEST_CASE("verify on a small sweep") {
  const Evaluator ev(test_support::default_tables());
  const auto samples = draw_samples(4, 7, ev.d());
  const auto r = run_verify(ev, samples, 7, {}, 2);
  CHECK(r.samples == 12);
  CHECK(r.per_region[0] == 4);
  std::size_t total = 0;
  for (auto n : r.overall[0].histogram) total += n;
  CHECK(total == 12);
  CHECK(verify_failures(r, {}).empty());
  Tolerances strict;
  strict.ratio = 1e-14;
  CHECK(verify_failures(r, strict).size() == 5);

  // deterministic regardless of worker count
  const auto r1 = run_verify(ev, samples, 7, {}, 1);
  for (std::size_t k = 0; k < kQuantityCount; ++k) {
    CHECK(r1.overall[k].max_error == r.overall[k].max_error);
    CHECK(r1.overall[k].argmax == r.overall[k].argmax);
  }
}

TEST_CASE("oracle failure names the sample") {
  const Evaluator ev(test_support::default_tables());
  oracle::QuadratureSpec spec;
  spec.abs_tol = 1e-30;
  spec.max_depth = 10;
  const auto samples = draw_samples(1, 3, ev.d());
  try {
    run_verify(ev, samples, 3, spec, 1);
    FAIL("expected an oracle failure");
  } catch (const SampleFailure& e) {
    CHECK(e.sample().index == 0);
    CHECK(std::string(e.what()).find("sample 0") != std::string::npos);
  }
}

TEST_CASE("bench") {
  const Evaluator ev(test_support::default_tables());
  CHECK(run_bench(ev, {}).samples == 0);
  const auto r = run_bench(ev, draw_samples(3, 1, ev.d()));
  CHECK(r.samples == 9);
  CHECK(r.approx_median_us > 0.0);
  CHECK(r.oracle_median_us > r.approx_median_us);
  CHECK(r.speedup > 1.0);
}

TEST_CASE("bound check on far samples") {
  const auto r = run_bound_check(draw_far_samples(5, 2, 30.0), 30.0, 5);
  CHECK(r.samples == 5);
  CHECK(r.violations == 0);
  CHECK(r.worst_margin < 1.0);
  CHECK_THROWS_AS(run_bound_check(draw_samples(1, 1, 30.0), 30.0, 5), DomainError);
}

}  // TEST_SUITE
