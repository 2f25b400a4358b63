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

#include "bingham/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "bingham/errbound.hpp"
#include "bingham/series.hpp"

namespace bingham::harness {

namespace {

constexpr std::array<oracle::DiagOrder, kQuantityCount> kOrders{
    {{0, 0}, {2, 0}, {0, 2}, {4, 0}, {0, 4}, {2, 2}}};

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Runs body(i) for i in [0, count) on a pool. The exception from the lowest
// failing index is rethrown after all workers stop.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = count;
  std::exception_ptr failure;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
        next.store(count);
      }
    }
  };
  const unsigned n = worker_count(threads, count);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string describe(const SamplePair& s) {
  std::ostringstream os;
  os.precision(17);
  os << "sample " << s.index << " (" << to_string(s.region) << ", b1=" << s.b1
     << ", b2=" << s.b2 << ")";
  return os.str();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + mid));
  return m;
}

}  // namespace

double draw_far(Rng& rng, double d) {
  const double lo = std::log10(d);
  return -std::pow(10.0, lo + rng.uniform() * (kFarLog10Max - lo));
}

double draw_near(Rng& rng, double d) { return -d * rng.uniform(); }

std::vector<SamplePair> draw_samples(std::size_t per_region, std::uint64_t seed, double d) {
  if (!(d > 0.0) || std::log10(d) >= kFarLog10Max)
    throw DomainError("draw_samples: d must lie in (0, 10^2.3)");
  Rng rng(seed);
  std::vector<SamplePair> out;
  out.reserve(3 * per_region);
  for (std::size_t i = 0; i < per_region; ++i) {
    const double b1 = draw_far(rng, d);
    const double b2 = draw_far(rng, d);
    out.push_back({out.size(), Region::kFar, b1, b2});
  }
  for (std::size_t i = 0; i < per_region; ++i) {
    const double far = draw_far(rng, d);
    const double near = draw_near(rng, d);
    if (rng.uniform() < 0.5)
      out.push_back({out.size(), Region::kMixed, far, near});
    else
      out.push_back({out.size(), Region::kMixed, near, far});
  }
  for (std::size_t i = 0; i < per_region; ++i) {
    const double b1 = draw_near(rng, d);
    const double b2 = draw_near(rng, d);
    out.push_back({out.size(), Region::kNear, b1, b2});
  }
  return out;
}

std::vector<SamplePair> draw_far_samples(std::size_t count, std::uint64_t seed, double d) {
  Rng rng(seed);
  std::vector<SamplePair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double b1 = draw_far(rng, d);
    const double b2 = draw_far(rng, d);
    out.push_back({i, Region::kFar, b1, b2});
  }
  return out;
}

SampleFailure::SampleFailure(const SamplePair& s, const std::string& why)
    : Error("oracle failed at " + describe(s) + ": " + why), sample_(s) {}

std::size_t histogram_bin(double abs_error) noexcept {
  if (!(abs_error < 1e-7)) return 4;  // also catches NaN
  if (abs_error >= 1e-8) return 3;
  if (abs_error >= 1e-9) return 2;
  if (abs_error >= 1e-10) return 1;
  return 0;
}

std::string histogram_label(std::size_t bin) {
  static const char* labels[kHistogramBins] = {"[0,1e-10)", "[1e-10,1e-9)", "[1e-9,1e-8)",
                                               "[1e-8,1e-7)", "[1e-7,inf)"};
  return bin < kHistogramBins ? labels[bin] : "?";
}

VerifyReport run_verify(const Evaluator& ev, const std::vector<SamplePair>& samples,
                        std::uint64_t seed, const oracle::QuadratureSpec& spec,
                        unsigned threads) {
  spec.validate();
  std::vector<std::array<double, kQuantityCount>> errors(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const SamplePair& s = samples[i];
    std::vector<double> z;
    try {
      z = oracle::z_nm_oracle_batch(kOrders, s.b1, s.b2, spec);
    } catch (const ConvergenceError& e) {
      throw SampleFailure(s, e.what());
    }
    const auto q = ev.quantities(s.b1, s.b2);
    errors[i][0] = std::abs(q[0] - z[0]);
    for (std::size_t k = 1; k < kQuantityCount; ++k)
      errors[i][k] = std::abs(q[k] - z[k] / z[0]);
  });

  VerifyReport r;
  r.samples = samples.size();
  r.seed = seed;
  r.samples_used = samples;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto reg = static_cast<std::size_t>(samples[i].region);
    ++r.per_region[reg];
    for (std::size_t k = 0; k < kQuantityCount; ++k) {
      const double e = errors[i][k];
      for (QuantityStats* st : {&r.overall[k], &r.by_region[reg][k]}) {
        if (e > st->max_error || std::isnan(e)) {
          st->max_error = std::isnan(e) ? HUGE_VAL : e;
          st->argmax = samples[i].index;
        }
        ++st->histogram[histogram_bin(e)];
      }
    }
  }
  return r;
}

std::vector<std::string> verify_failures(const VerifyReport& r, const Tolerances& tol) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < kQuantityCount; ++k) {
    const double limit = k == 0 ? tol.z : tol.ratio;
    if (!(r.overall[k].max_error <= limit))
      out.emplace_back(to_string(static_cast<Quantity>(k)));
  }
  return out;
}

BenchReport run_bench(const Evaluator& ev, const std::vector<SamplePair>& samples,
                      double oracle_tol) {
  using clock = std::chrono::steady_clock;
  BenchReport r;
  r.samples = samples.size();
  r.oracle_tol = oracle_tol;
  if (samples.empty()) return r;

  volatile double sink = 0.0;
  for (const auto& s : samples) sink = sink + ev.quantities(s.b1, s.b2)[0];  // warm-up

  std::vector<double> approx_us, oracle_us;
  approx_us.reserve(samples.size());
  oracle_us.reserve(samples.size());
  for (const auto& s : samples) {
    const auto t0 = clock::now();
    const auto q = ev.quantities(s.b1, s.b2);
    const auto t1 = clock::now();
    sink = sink + q[0];
    approx_us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
  }
  oracle::QuadratureSpec spec;
  spec.abs_tol = oracle_tol;
  for (const auto& s : samples) {
    const auto t0 = clock::now();
    const auto z = oracle::z_nm_oracle_batch(kOrders, s.b1, s.b2, spec);
    const auto t1 = clock::now();
    sink = sink + z[0];
    oracle_us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
  }
  for (double v : approx_us) r.approx_total_s += v * 1e-6;
  for (double v : oracle_us) r.oracle_total_s += v * 1e-6;
  r.approx_median_us = median(approx_us);
  r.oracle_median_us = median(oracle_us);
  r.speedup = r.approx_total_s > 0.0 ? r.oracle_total_s / r.approx_total_s : 0.0;
  return r;
}

BoundCheck run_bound_check(const std::vector<SamplePair>& samples, double d, int n1,
                           const oracle::QuadratureSpec& spec, unsigned threads) {
  series::FarParams far;
  far.n1 = n1;
  far.d = d;
  far.validate();
  std::array<double, kQuantityCount> bounds{};
  for (std::size_t k = 0; k < kQuantityCount; ++k)
    bounds[k] = errbound::theorem1_bound(d, n1, kOrders[k].n, kOrders[k].m).bound;

  std::vector<std::array<double, kQuantityCount>> errors(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const SamplePair& s = samples[i];
    if (classify(s.b1, s.b2, d) != Region::kFar)
      throw DomainError("run_bound_check: " + describe(s) + " is not in the far region");
    std::vector<double> z;
    try {
      z = oracle::z_nm_oracle_batch(kOrders, s.b1, s.b2, spec);
    } catch (const ConvergenceError& e) {
      throw SampleFailure(s, e.what());
    }
    for (std::size_t k = 0; k < kQuantityCount; ++k)
      errors[i][k] = std::abs(series::z_far(kOrders[k].n, kOrders[k].m, s.b1, s.b2, far) - z[k]);
  });

  BoundCheck r;
  r.samples = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t k = 0; k < kQuantityCount; ++k) {
      const double e = errors[i][k];
      if (!(e <= bounds[k])) ++r.violations;
      r.max_error = std::max(r.max_error, e);
      const double margin = e / bounds[k];
      if (margin > r.worst_margin) {
        r.worst_margin = margin;
        r.worst = samples[i];
        r.worst_order = kOrders[k];
      }
    }
  }
  return r;
}

}  // namespace bingham::harness
