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
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bingham/errors.hpp"
#include "bingham/evaluator.hpp"
#include "bingham/oracle.hpp"

/// Region-stratified random sweeps of the approximation against the oracle.
namespace bingham::harness {

struct SamplePair {
  std::size_t index = 0;
  Region region = Region::kNear;
  double b1 = 0.0;
  double b2 = 0.0;
};

/// Upper end of log10|b| for far coordinates.
inline constexpr double kFarLog10Max = 2.3;

/// Deterministic uniform in [0, 1) from the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Far coordinate: -10^u with u uniform in [log10 d, kFarLog10Max].
double draw_far(Rng& rng, double d);
/// Near coordinate: uniform in (-d, 0].
double draw_near(Rng& rng, double d);

/// `per_region` far pairs, then mixed, then near; indices are sequential.
std::vector<SamplePair> draw_samples(std::size_t per_region, std::uint64_t seed, double d);
/// Far-region pairs only.
std::vector<SamplePair> draw_far_samples(std::size_t count, std::uint64_t seed, double d);

/// Oracle failure at a specific sample.
class SampleFailure : public Error {
 public:
  SampleFailure(const SamplePair& s, const std::string& why);
  const SamplePair& sample() const noexcept { return sample_; }

 private:
  SamplePair sample_;
};

inline constexpr std::size_t kQuantityCount = 6;
inline constexpr std::size_t kHistogramBins = 5;
/// Bin edges: [0,1e-10), [1e-10,1e-9), [1e-9,1e-8), [1e-8,1e-7), [1e-7,inf).
std::size_t histogram_bin(double abs_error) noexcept;
std::string histogram_label(std::size_t bin);

struct QuantityStats {
  double max_error = 0.0;
  std::size_t argmax = 0;  // sample index
  std::array<std::size_t, kHistogramBins> histogram{};
};

struct VerifyReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::array<std::size_t, 3> per_region{};  // far, mixed, near
  std::array<QuantityStats, kQuantityCount> overall{};
  std::array<std::array<QuantityStats, kQuantityCount>, 3> by_region{};
  std::vector<SamplePair> samples_used;
};

struct Tolerances {
  double z = 6.1e-8;
  double ratio = 5e-8;
};

/// Evaluates Z00 and the five ratios at every sample and compares with the
/// Simpson oracle. Work is sharded over `threads`; aggregation is by sample
/// index, so the report does not depend on scheduling.
VerifyReport run_verify(const Evaluator& ev, const std::vector<SamplePair>& samples,
                        std::uint64_t seed, const oracle::QuadratureSpec& spec = {},
                        unsigned threads = 0);

/// Names of quantities whose maximum exceeds its tolerance; empty means pass.
std::vector<std::string> verify_failures(const VerifyReport& r, const Tolerances& tol);

struct BenchReport {
  std::size_t samples = 0;
  double approx_median_us = 0.0;
  double oracle_median_us = 0.0;
  double approx_total_s = 0.0;
  double oracle_total_s = 0.0;
  double speedup = 0.0;  // oracle_total / approx_total
  double oracle_tol = 0.0;
};

/// Times Z00 plus the five ratios per pair, approximator vs oracle, warm.
BenchReport run_bench(const Evaluator& ev, const std::vector<SamplePair>& samples,
                      double oracle_tol = 5e-8);

struct BoundCheck {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;  // max over samples and orders of error / bound
  double max_error = 0.0;
  SamplePair worst{};
  oracle::DiagOrder worst_order{};
};

/// Measures |z_far - oracle| for each of the six tabulated orders at every
/// sample against the far-region error bound with matching (d, N, n, m).
BoundCheck run_bound_check(const std::vector<SamplePair>& samples, double d, int n1,
                           const oracle::QuadratureSpec& spec = {}, unsigned threads = 0);

}  // namespace bingham::harness
