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

// bingham: evaluate Bingham moments, build tables, and check them against the
// quadrature oracle.
//
// Exit codes: 0 ok, 1 tolerance exceeded, 2 usage, 3 table error, 4 oracle failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bingham/errbound.hpp"
#include "bingham/evaluator.hpp"
#include "bingham/harness.hpp"
#include "bingham/oracle.hpp"
#include "bingham/tables.hpp"
#include "json.hpp"

namespace {

using namespace bingham;
using nlohmann::json;

enum Exit : int { kOk = 0, kTolerance = 1, kUsage = 2, kTable = 3, kOracle = 4 };

struct Global {
  std::string tables;
  bool json_out = false;
  unsigned threads = 0;
};

std::shared_ptr<const MomentTables> open_tables(const Global& g) {
  std::optional<std::filesystem::path> flag;
  if (!g.tables.empty()) flag = g.tables;
  return std::make_shared<const MomentTables>(load_tables(resolve_table_path(flag)));
}

std::string mono_key(const Monomial& m) {
  return std::to_string(m.n1) + std::to_string(m.n2) + std::to_string(m.n3);
}

void print_moments(double log_z, const std::array<double, kMonomialCount>& moments, bool as_json) {
  const auto& monos = all_monomials();
  if (as_json) {
    json j;
    j["log_z"] = log_z;
    json mj = json::object();
    for (std::size_t k = 0; k < kMonomialCount; ++k) mj[mono_key(monos[k])] = moments[k];
    j["moments"] = mj;
    std::cout << j.dump() << '\n';
    return;
  }
  std::printf("log_z  %.15g\n", log_z);
  for (std::size_t k = 0; k < kMonomialCount; ++k)
    std::printf("<x1^%d x2^%d x3^%d>  %.15g\n", monos[k].n1, monos[k].n2, monos[k].n3,
                moments[k]);
}

BinghamParam param_from(const std::vector<double>& v) {
  return BinghamParam(v[0], v[1], v[2], v[3], v[4], v[5]);
}

int cmd_eval(const Global& g, const std::vector<double>& entries, bool linear_gm) {
  EvalParams p;
  if (linear_gm) p.gm_interpolation = series::GmInterpolation::kLinear;
  Evaluator ev(open_tables(g), p);
  const MomentSet m = ev.moments(param_from(entries));
  print_moments(m.log_z, m.moments, g.json_out);
  return kOk;
}

int cmd_oracle(const Global& g, const std::vector<double>& entries, double tol) {
  oracle::QuadratureSpec spec;
  spec.abs_tol = tol;
  const auto o = oracle::general_oracle_all(param_from(entries), spec);
  std::array<double, kMonomialCount> moments{};
  for (std::size_t k = 0; k < kMonomialCount; ++k) moments[k] = o.shifted[k] / o.shifted[0];
  print_moments(std::log(o.shifted[0]) + o.shift, moments, g.json_out);
  return kOk;
}

struct GenOptions {
  std::string out;
  bool tiny = false;
  bool simpson = false;
  double d = 30.0, dz00 = 0.025, dratio = 0.1, gm_step = 0.001, quad_tol = 1e-11;
  int n2 = 5;
};

int cmd_gen_tables(const Global& g, const GenOptions& o) {
  TableConfig c = o.tiny ? TableConfig::tiny() : TableConfig{};
  if (!o.tiny) {
    c.d = o.d;
    c.dz00 = o.dz00;
    c.dratio = o.dratio;
    c.gm_step = o.gm_step;
    c.n2 = o.n2;
    c.quad.abs_tol = o.quad_tol;
  }
  if (o.simpson) c.integrator = NodeIntegrator::kAdaptiveSimpson;
  try {
    c.validate();
  } catch (const DomainError& e) {
    std::cerr << "gen-tables: " << e.what() << '\n';
    return kUsage;
  }
  std::string last;
  auto progress = [&](std::string_view section, std::size_t done, std::size_t total) {
    if (g.json_out) return;
    if (section != last || done == total) {
      std::fprintf(stderr, "%.*s %zu/%zu\n", static_cast<int>(section.size()), section.data(),
                   done, total);
      last = section;
    }
  };
  const MomentTables t = generate_tables(c, progress, g.threads);
  const std::uint64_t bytes = save_tables(t, o.out);
  if (g.json_out)
    std::cout << json{{"path", o.out}, {"bytes", bytes}, {"checksum", t.header.checksum}}.dump()
              << '\n';
  else
    std::printf("wrote %s: %llu bytes (%.1f MB)\n", o.out.c_str(),
                static_cast<unsigned long long>(bytes), static_cast<double>(bytes) / 1e6);
  return kOk;
}

constexpr const char* kRegionNames[3] = {"far", "mixed", "near"};

void render_verify(const harness::VerifyReport& r, const harness::Tolerances& tol,
                   const std::vector<std::string>& failures, bool as_json) {
  if (as_json) {
    for (std::size_t k = 0; k < harness::kQuantityCount; ++k) {
      json j{{"kind", "quantity"}, {"quantity", to_string(static_cast<Quantity>(k))}};
      j["max"] = r.overall[k].max_error;
      j["argmax"] = r.overall[k].argmax;
      for (std::size_t reg = 0; reg < 3; ++reg)
        j["max_" + std::string(kRegionNames[reg])] = r.by_region[reg][k].max_error;
      json h = json::object();
      for (std::size_t b = 0; b < harness::kHistogramBins; ++b)
        h[harness::histogram_label(b)] = r.overall[k].histogram[b];
      j["histogram"] = h;
      std::cout << j.dump() << '\n';
    }
    json s{{"kind", "summary"},          {"samples", r.samples},     {"seed", r.seed},
           {"far", r.per_region[0]},     {"mixed", r.per_region[1]}, {"near", r.per_region[2]},
           {"tol_z", tol.z},             {"tol_ratio", tol.ratio},   {"pass", failures.empty()},
           {"failed", failures}};
    std::cout << s.dump() << '\n';
    return;
  }
  std::printf("samples %zu (far %zu, mixed %zu, near %zu), seed %llu\n", r.samples,
              r.per_region[0], r.per_region[1], r.per_region[2],
              static_cast<unsigned long long>(r.seed));
  std::printf("%-8s %12s %12s %12s %12s\n", "", "far", "mixed", "near", "all");
  for (std::size_t k = 0; k < harness::kQuantityCount; ++k) {
    const std::string name(to_string(static_cast<Quantity>(k)));
    std::printf("%-8s %12.3e %12.3e %12.3e %12.3e\n", name.c_str(), r.by_region[0][k].max_error,
                r.by_region[1][k].max_error, r.by_region[2][k].max_error,
                r.overall[k].max_error);
  }
  std::printf("\nabsolute error histogram\n%-8s", "");
  for (std::size_t b = 0; b < harness::kHistogramBins; ++b)
    std::printf(" %13s", harness::histogram_label(b).c_str());
  std::printf("\n");
  for (std::size_t k = 0; k < harness::kQuantityCount; ++k) {
    const std::string name(to_string(static_cast<Quantity>(k)));
    std::printf("%-8s", name.c_str());
    for (std::size_t b = 0; b < harness::kHistogramBins; ++b)
      std::printf(" %13zu", r.overall[k].histogram[b]);
    std::printf("\n");
  }
  if (failures.empty()) {
    std::printf("\nPASS (Z <= %.3g, ratios <= %.3g)\n", tol.z, tol.ratio);
  } else {
    std::printf("\nFAIL:");
    for (const auto& f : failures) std::printf(" %s", f.c_str());
    std::printf(" (Z <= %.3g, ratios <= %.3g)\n", tol.z, tol.ratio);
  }
}

int cmd_verify(const Global& g, std::size_t per_region, std::uint64_t seed,
               const harness::Tolerances& tol, double oracle_tol) {
  Evaluator ev(open_tables(g));
  const auto samples = harness::draw_samples(per_region, seed, ev.d());
  oracle::QuadratureSpec spec;
  spec.abs_tol = oracle_tol;
  const auto report = harness::run_verify(ev, samples, seed, spec, g.threads);
  const auto failures = harness::verify_failures(report, tol);
  render_verify(report, tol, failures, g.json_out);
  return failures.empty() ? kOk : kTolerance;
}

int cmd_bench(const Global& g, std::size_t samples, std::uint64_t seed, double oracle_tol) {
  Evaluator ev(open_tables(g));
  auto pairs = harness::draw_samples((samples + 2) / 3, seed, ev.d());
  pairs.resize(samples);
  const auto r = harness::run_bench(ev, pairs, oracle_tol);
  if (g.json_out) {
    std::cout << json{{"kind", "bench"},
                      {"samples", r.samples},
                      {"approx_median_us", r.approx_median_us},
                      {"oracle_median_us", r.oracle_median_us},
                      {"approx_total_s", r.approx_total_s},
                      {"oracle_total_s", r.oracle_total_s},
                      {"speedup", r.speedup},
                      {"oracle_tol", r.oracle_tol}}
                     .dump()
              << '\n';
  } else {
    std::printf("samples           %zu\n", r.samples);
    std::printf("approx median     %.3f us/call (total %.6f s)\n", r.approx_median_us,
                r.approx_total_s);
    std::printf("oracle median     %.1f us/call (total %.3f s, tol %.1e)\n",
                r.oracle_median_us, r.oracle_total_s, r.oracle_tol);
    std::printf("speedup           %.0fx\n", r.speedup);
  }
  return kOk;
}

int cmd_bound(const Global& g, double d, int N, int n, int m, std::optional<double> suggest) {
  if (suggest) {
    const auto s = errbound::suggest_params(*suggest);
    if (g.json_out) {
      std::cout << json{{"kind", "suggest"}, {"target", *suggest}, {"row_error", s.target},
                        {"d", s.d},          {"N1", s.n1},         {"N2", s.n2},
                        {"clamped", s.clamped}}
                       .dump()
                << '\n';
    } else {
      if (s.clamped)
        std::fprintf(stderr, "warning: target %.3g is outside [5e-8, 5e-5]; using nearest row\n",
                     *suggest);
      std::printf("target %.3g -> d = %g, N1 = %d, N2 = %d (row error %.0e)\n", *suggest, s.d,
                  s.n1, s.n2, s.target);
    }
    return kOk;
  }
  const auto r = errbound::theorem1_bound(d, N, n, m);
  if (g.json_out) {
    std::cout << json{{"kind", "bound"}, {"d", r.d},         {"N", r.N},
                      {"n", r.n},        {"m", r.m},         {"bound", r.bound},
                      {"term1", r.term1}, {"term2", r.term2}, {"term3", r.term3}}
                     .dump()
              << '\n';
  } else {
    std::printf("d = %g, N = %d, n = %d, m = %d\n", r.d, r.N, r.n, r.m);
    std::printf("  dawson term      %.10e\n", r.term1);
    std::printf("  gamma term     - %.10e\n", r.term2);
    std::printf("  tail term      + %.10e\n", r.term3);
    std::printf("  bound            %.6e\n", r.bound);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments of the Bingham distribution on the sphere"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--tables", g.tables, "Table file (default: $BINGHAM_TABLES)");
  app.add_flag("--json", g.json_out, "Emit JSON lines");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

  std::vector<double> entries;
  bool linear_gm = false;
  auto* eval = app.add_subcommand("eval", "Moments for B = (B11 B22 B33 B12 B13 B23)");
  eval->add_option("B", entries, "Six matrix entries")->expected(6)->required();
  eval->add_flag("--linear-gm", linear_gm, "Linear instead of cubic g_m interpolation");

  double oracle_eval_tol = 1e-11;
  auto* orc = app.add_subcommand("oracle", "Moments for B by direct quadrature (slow)");
  orc->add_option("B", entries, "Six matrix entries")->expected(6)->required();
  orc->add_option("--tol", oracle_eval_tol, "Absolute quadrature tolerance")
      ->check(CLI::PositiveNumber);

  GenOptions gen;
  auto* gt = app.add_subcommand("gen-tables", "Build the interpolation tables");
  gt->add_option("-o,--out", gen.out, "Output path")->required();
  gt->add_flag("--tiny", gen.tiny, "Small test configuration");
  gt->add_flag("--simpson", gen.simpson, "Use adaptive Simpson at every node (slow)");
  gt->add_option("--d", gen.d, "Region threshold");
  gt->add_option("--dz00", gen.dz00, "Z00 lattice spacing");
  gt->add_option("--dratio", gen.dratio, "Ratio lattice spacing");
  gt->add_option("--gm-step", gen.gm_step, "g_m derivative grid step");
  gt->add_option("--n2", gen.n2, "Mixed-region truncation order");
  gt->add_option("--quad-tol", gen.quad_tol, "Quadrature tolerance for Simpson nodes");

  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  harness::Tolerances tol;
  double oracle_tol = 1e-11;
  auto* ver = app.add_subcommand("verify", "Random sweep against the oracle");
  ver->add_option("--samples", samples, "Samples per region");
  ver->add_option("--seed", seed, "Random seed");
  ver->add_option("--tol", tol.ratio, "Tolerance on ratio errors");
  ver->add_option("--z-tol", tol.z, "Tolerance on Z00 errors");
  ver->add_option("--oracle-tol", oracle_tol, "Oracle absolute tolerance")
      ->check(CLI::PositiveNumber);

  std::size_t bench_samples = 3000;
  double bench_oracle_tol = 5e-8;
  auto* bench = app.add_subcommand("bench", "Time the approximation against the oracle");
  bench->add_option("--samples", bench_samples, "Total samples, split over regions");
  bench->add_option("--seed", seed, "Random seed");
  bench->add_option("--oracle-tol", bench_oracle_tol, "Oracle absolute tolerance")
      ->check(CLI::PositiveNumber);

  double bd = 30.0;
  int bN = 5, bn = 4, bm = 0;
  std::optional<double> suggest;
  auto* bound = app.add_subcommand("bound", "Far-region error bound");
  bound->add_option("--d", bd, "Region threshold");
  bound->add_option("--N", bN, "Series truncation order");
  bound->add_option("--n", bn, "Exponent of x1 (even)");
  bound->add_option("--m", bm, "Exponent of x2 (even)");
  bound->add_option("--suggest", suggest, "Look up parameters for a target error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*eval) return cmd_eval(g, entries, linear_gm);
    if (*orc) return cmd_oracle(g, entries, oracle_eval_tol);
    if (*gt) return cmd_gen_tables(g, gen);
    if (*ver) return cmd_verify(g, samples, seed, tol, oracle_tol);
    if (*bench) return cmd_bench(g, bench_samples, seed, bench_oracle_tol);
    if (*bound) return cmd_bound(g, bd, bN, bn, bm, suggest);
  } catch (const TableError& e) {
    std::cerr << "table error: " << e.what() << '\n';
    return kTable;
  } catch (const StateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kTable;
  } catch (const harness::SampleFailure& e) {
    std::cerr << e.what() << '\n';
    return kOracle;
  } catch (const ConvergenceError& e) {
    std::cerr << "oracle: " << e.what() << '\n';
    return kOracle;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
