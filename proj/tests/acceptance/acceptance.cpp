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

// Acceptance gate. Each criterion prints exactly one PASS/FAIL line with the
// measured numbers; `--criterion N` runs one, no argument runs all.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bingham/errbound.hpp"
#include "bingham/errors.hpp"
#include "bingham/evaluator.hpp"
#include "bingham/harness.hpp"
#include "bingham/tables.hpp"

namespace {

using namespace bingham;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::shared_ptr<const MomentTables> g_tables;
std::filesystem::path g_table_path;

const Evaluator& evaluator() {
  static const Evaluator ev(g_tables);
  return ev;
}

// 1. accuracy sweep, 1,000 pairs per region
Outcome accuracy_sweep() {
  const auto& ev = evaluator();
  const auto samples = harness::draw_samples(1000, 42, ev.d());
  const auto r = harness::run_verify(ev, samples, 42);
  double worst_ratio = 0.0;
  for (std::size_t k = 1; k < harness::kQuantityCount; ++k)
    worst_ratio = std::max(worst_ratio, r.overall[k].max_error);
  const double z = r.overall[0].max_error;
  return {z <= 6.1e-8 && worst_ratio <= 5e-8,
          fmt("3000 samples: max |Z00 err| = %.3e (<= 6.1e-8), max ratio err = %.3e (<= 5e-8)", z,
              worst_ratio)};
}

// 2. error bound against the published figures
Outcome bound_reproduction() {
  struct Row {
    double d;
    int N;
    double published;
    double rel_tol;
  };
  const Row rows[] = {{30, 5, 6.038e-8, 1e-3},
                      {13, 5, 4.4e-5, 0.05},
                      {16, 6, 3.6e-6, 0.05},
                      {20, 6, 4.5e-7, 0.05},
                      {26, 6, 4.5e-8, 0.05}};
  bool pass = true;
  std::ostringstream os;
  for (const auto& r : rows) {
    const double b = errbound::theorem1_bound(r.d, r.N, 4, 0).bound;
    const double rel = std::abs(b - r.published) / r.published;
    const bool ok = rel <= r.rel_tol;
    pass = pass && ok;
    os << fmt("(%g,%d)=%.4e vs %.2g [%.1f%%%s] ", r.d, r.N, b, r.published, 100 * rel, ok ? "" : " OVER");
  }
  return {pass, os.str()};
}

// 3. far-region error never exceeds the bound
Outcome bound_soundness() {
  const auto samples = harness::draw_far_samples(500, 7, 30.0);
  const auto r = harness::run_bound_check(samples, 30.0, 5);
  return {r.violations == 0,
          fmt("500 far samples x 6 orders: %zu violations, max err %.3e, worst err/bound %.3f at "
              "(%.3f, %.3f) order (%d,%d)",
              r.violations, r.max_error, r.worst_margin, r.worst.b1, r.worst.b2, r.worst_order.n,
              r.worst_order.m)};
}

// 4. suggested-parameter lookup
Outcome suggestion_table() {
  struct Row {
    double target, d;
    int n1, n2;
  };
  const Row rows[] = {{5e-5, 13, 5, 4}, {5e-6, 16, 6, 5}, {5e-7, 20, 6, 6}, {5e-8, 26, 6, 6}};
  bool pass = true;
  std::ostringstream os;
  for (const auto& r : rows) {
    const auto s = errbound::suggest_params(r.target);
    const bool ok = s.d == r.d && s.n1 == r.n1 && s.n2 == r.n2 && !s.clamped;
    pass = pass && ok;
    os << fmt("%.0e->(%g,%d,%d)%s ", r.target, s.d, s.n1, s.n2, ok ? "" : " MISMATCH");
  }
  return {pass, os.str()};
}

// 5. speed against the oracle
Outcome speedup() {
  const auto& ev = evaluator();
  const auto samples = harness::draw_samples(1000, 5, ev.d());
  const auto r = harness::run_bench(ev, samples, 5e-8);
  return {r.speedup >= 100.0 && r.approx_median_us <= 10.0,
          fmt("3000 samples: speedup %.0fx (>= 100), approximator median %.3f us (<= 10), oracle "
              "median %.1f us",
              r.speedup, r.approx_median_us, r.oracle_median_us)};
}

// 6. property suites
Outcome properties() {
  const auto& ev = evaluator();
  std::vector<std::string> failed;
  std::size_t evaluated = 0;
  double worst_sum = 0.0;

  auto sum_rules = [&](const MomentSet& s) {
    ++evaluated;
    const double x1 = s.at(2, 0, 0), x2 = s.at(0, 2, 0), x3 = s.at(0, 0, 2);
    double e = std::abs(x1 + x2 + x3 - 1.0);
    e = std::max(e, std::abs(s.at(4, 0, 0) + s.at(2, 2, 0) + s.at(2, 0, 2) - x1));
    e = std::max(e, std::abs(s.at(2, 2, 0) + s.at(0, 4, 0) + s.at(0, 2, 2) - x2));
    e = std::max(e, std::abs(s.at(2, 0, 2) + s.at(0, 2, 2) + s.at(0, 0, 4) - x3));
    worst_sum = std::max(worst_sum, e);
    bool odd_zero = s.moments[0] == 1.0;
    for (const auto& m : all_monomials())
      if (m.order() % 2 != 0 && s.at(m.n1, m.n2, m.n3) != 0.0) odd_zero = false;
    if (!odd_zero && (failed.empty() || failed.back() != "odd")) failed.emplace_back("odd");
  };

  // uniform case
  const auto u = ev.moments(BinghamParam{});
  sum_rules(u);
  double uni = 0.0;
  for (const auto& m : all_monomials()) {
    double want = 0.0;
    if (m.order() == 2 && (m.n1 == 2 || m.n2 == 2 || m.n3 == 2)) want = 1.0 / 3;
    if (m.order() == 4) {
      if (m.n1 == 4 || m.n2 == 4 || m.n3 == 4) want = 1.0 / 5;
      else if (m.n1 % 2 == 0 && m.n2 % 2 == 0 && m.n3 % 2 == 0) want = 1.0 / 15;
    }
    if (m.order() == 0) want = 1.0;
    uni = std::max(uni, std::abs(u.at(m.n1, m.n2, m.n3) - want));
  }
  if (uni > 6.1e-8) failed.emplace_back("uniform");

  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> entry(-40.0, 40.0), shift(-50.0, 50.0);

  // shift invariance
  double shift_err = 0.0;
  for (int k = 0; k < 200; ++k) {
    const BinghamParam b(entry(rng), entry(rng), entry(rng), entry(rng), entry(rng), entry(rng));
    const double h = shift(rng);
    const auto s0 = ev.moments(b), s1 = ev.moments(b.shifted(h));
    sum_rules(s0);
    sum_rules(s1);
    shift_err = std::max(shift_err, std::abs(s1.log_z - s0.log_z - h));
    for (std::size_t i = 0; i < kMonomialCount; ++i)
      shift_err = std::max(shift_err, std::abs(s1.moments[i] - s0.moments[i]));
  }
  if (shift_err > 1e-10) failed.emplace_back("shift");

  // rotation equivariance
  double rot_err = 0.0;
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 100; ++k) {
    const BinghamParam b(entry(rng), entry(rng), entry(rng), entry(rng), entry(rng), entry(rng));
    double q[4] = {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    const double w = q[0] / n, x = q[1] / n, y = q[2] / n, z = q[3] / n;
    const Mat3 r{{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
                  {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
                  {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
    const Mat3 m = b.matrix();
    Mat3 rb{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int a = 0; a < 3; ++a)
          for (int c = 0; c < 3; ++c) rb[i][j] += r[i][a] * m[a][c] * r[j][c];
    const auto s = ev.moments(b), sr = ev.moments(BinghamParam::from_matrix(rb));
    sum_rules(s);
    sum_rules(sr);
    const Mat3 mb = s.second_moments(), mr = sr.second_moments();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double want = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int c = 0; c < 3; ++c) want += r[i][a] * mb[a][c] * r[j][c];
        rot_err = std::max(rot_err, std::abs(mr[i][j] - want));
      }
  }
  if (rot_err > 1e-8) failed.emplace_back("rotation");
  if (worst_sum > 1e-9) failed.emplace_back("sum-rules");

  // derivative against central differences; stencils stay inside one region
  double deriv_err = 0.0;
  const double h = 1e-4;
  std::uniform_real_distribution<double> coord(-150.0, 0.0);
  int points = 0;
  while (points < 50) {
    double b1 = coord(rng), b2 = coord(rng);
    if (b1 > b2) std::swap(b1, b2);
    const Region reg = classify(b1, b2, ev.d());
    if (classify(b1 - h, b2, ev.d()) != reg || classify(b1 + h, b2, ev.d()) != reg ||
        b1 + h > 0.0)
      continue;
    ++points;
    const double fd =
        (ev.quantities(b1 + h, b2)[1] - ev.quantities(b1 - h, b2)[1]) / (2 * h);
    deriv_err = std::max(deriv_err, std::abs(ev.moment_derivative(2, 0, Wrt::kB1, b1, b2) - fd));
  }
  if (deriv_err > 1e-5) failed.emplace_back("derivative");

  std::string names;
  for (const auto& f : failed) names += " " + f;
  return {failed.empty(),
          fmt("uniform %.1e, shift %.1e, rotation %.1e, sum rules %.1e over %zu sets, "
              "d(Z20/Z00)/db1 vs FD %.1e%s%s",
              uni, shift_err, rot_err, worst_sum, evaluated, deriv_err,
              names.empty() ? "" : "; failed:", names.c_str())};
}

// 7. table pipeline
Outcome table_pipeline() {
  const auto tiny = generate_tables(TableConfig::tiny());
  std::ostringstream os(std::ios::binary);
  write_tables(tiny, os);
  const std::string bytes = os.str();
  std::istringstream is(bytes, std::ios::binary);
  const auto back = read_tables(is);
  std::ostringstream os2(std::ios::binary);
  write_tables(back, os2);
  const bool round_trip = os2.str() == bytes;

  std::size_t tried = 0, rejected = 0;
  for (std::size_t at = 0; at < bytes.size(); ++at) {
    for (unsigned char flip : {0x01, 0x80}) {
      std::string c = bytes;
      c[at] = static_cast<char>(static_cast<unsigned char>(c[at]) ^ flip);
      std::istringstream cs(c, std::ios::binary);
      ++tried;
      try {
        read_tables(cs);
      } catch (const TableError&) {
        ++rejected;
      }
    }
  }
  const auto size = std::filesystem::file_size(g_table_path);
  const bool size_ok = size >= 40'000'000 && size <= 100'000'000;
  return {round_trip && rejected == tried && size_ok,
          fmt("tiny round trip %s; %zu/%zu single-byte corruptions rejected; default file %.1f MB "
              "(40-100 MB)",
              round_trip ? "bit-exact" : "MISMATCH", rejected, tried, size / 1e6)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  std::string tables;
  app.add_option("--criterion", only, "Run one criterion (1-7)")->check(CLI::Range(1, 7));
  app.add_option("--tables", tables, "Default-config table file (default: $BINGHAM_TABLES)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"accuracy sweep", accuracy_sweep},     {"error bound reproduction", bound_reproduction},
      {"error bound soundness", bound_soundness}, {"parameter suggestions", suggestion_table},
      {"speedup", speedup},                   {"property suites", properties},
      {"table pipeline", table_pipeline},
  };

  try {
    std::optional<std::filesystem::path> flag;
    if (!tables.empty()) flag = tables;
    g_table_path = resolve_table_path(flag);
    g_tables = std::make_shared<const MomentTables>(load_tables(g_table_path));
  } catch (const std::exception& e) {
    std::printf("FAIL  tables unavailable: %s\n", e.what());
    return 1;
  }

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s  criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
