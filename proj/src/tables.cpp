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

#include "bingham/tables.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "bingham/errors.hpp"

namespace bingham {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

class Fnv1a {
 public:
  void update(const unsigned char* p, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= kFnvPrime;
    }
  }
  std::uint64_t digest() const noexcept { return h_; }

 private:
  std::uint64_t h_ = kFnvOffset;
};

void put_u32(unsigned char* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}
void put_u64(unsigned char* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}
void put_f64(unsigned char* p, double v) { put_u64(p, std::bit_cast<std::uint64_t>(v)); }
std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}
std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}
double get_f64(const unsigned char* p) { return std::bit_cast<double>(get_u64(p)); }

// Streams the payload as little-endian binary64 in fixed section order.
template <class Emit>
void for_each_payload_chunk(const MomentTables& t, Emit&& emit) {
  std::vector<unsigned char> buf;
  auto array = [&](const std::vector<double>& a) {
    buf.resize(a.size() * 8);
    for (std::size_t i = 0; i < a.size(); ++i) put_f64(buf.data() + 8 * i, a[i]);
    emit(buf.data(), buf.size());
  };
  auto grid = [&](const HermiteGrid2D& g) {
    array(g.value);
    array(g.d_b1);
    array(g.d_b2);
  };
  grid(t.z00);
  for (const auto& r : t.ratios) grid(r);
  array(t.gm.values);
}

// Guards the header fields the payload checksum does not cover.
std::uint32_t header_check(const unsigned char* b) {
  Fnv1a hash;
  hash.update(b, 60);
  hash.update(b + 64, TableHeader::kSize - 64);
  const std::uint64_t h = hash.digest();
  return static_cast<std::uint32_t>(h ^ (h >> 32));
}

std::array<unsigned char, TableHeader::kSize> encode_header(const TableHeader& h) {
  std::array<unsigned char, TableHeader::kSize> b{};
  std::memcpy(b.data(), h.magic.data(), 4);
  put_u32(b.data() + 4, h.format_version);
  put_f64(b.data() + 8, h.d);
  put_f64(b.data() + 16, h.dz00);
  put_f64(b.data() + 24, h.dratio);
  put_f64(b.data() + 32, h.gm_step);
  put_u32(b.data() + 40, h.n2);
  put_u32(b.data() + 44, h.z00_axis_nodes);
  put_u32(b.data() + 48, h.ratio_axis_nodes);
  put_u32(b.data() + 52, h.gm_nodes);
  put_u32(b.data() + 56, h.section_count);
  put_u64(b.data() + 64, h.payload_bytes);
  put_u64(b.data() + 72, h.checksum);
  put_u32(b.data() + 60, header_check(b.data()));
  return b;
}

TableHeader decode_header(const unsigned char* b) {
  TableHeader h;
  std::memcpy(h.magic.data(), b, 4);
  h.format_version = get_u32(b + 4);
  h.d = get_f64(b + 8);
  h.dz00 = get_f64(b + 16);
  h.dratio = get_f64(b + 24);
  h.gm_step = get_f64(b + 32);
  h.n2 = get_u32(b + 40);
  h.z00_axis_nodes = get_u32(b + 44);
  h.ratio_axis_nodes = get_u32(b + 48);
  h.gm_nodes = get_u32(b + 52);
  h.section_count = get_u32(b + 56);
  h.payload_bytes = get_u64(b + 64);
  h.checksum = get_u64(b + 72);
  return h;
}

HermiteGrid2D empty_grid(Quantity q, double spacing, double extent, std::size_t axis) {
  HermiteGrid2D g;
  g.quantity = q;
  g.spacing = spacing;
  g.extent = extent;
  g.axis_nodes = axis;
  g.value.assign(axis * axis, 0.0);
  g.d_b1.assign(axis * axis, 0.0);
  g.d_b2.assign(axis * axis, 0.0);
  return g;
}

// Evaluates Z_{nm0} for the requested orders at one lattice node.
class NodeEvaluator {
 public:
  NodeEvaluator(const TableConfig& c) : config_(c), rule_(oracle::OctantRule::nodes_for(c.d)) {}

  void operator()(std::span<const oracle::DiagOrder> orders, double b1, double b2,
                  std::span<double> out) const {
    if (config_.integrator == NodeIntegrator::kGaussLegendre) {
      rule_.integrate(orders, b1, b2, out);
      return;
    }
    try {
      const auto v = oracle::z_nm_oracle_batch(orders, b1, b2, config_.quad);
      std::copy(v.begin(), v.end(), out.begin());
    } catch (const ConvergenceError& e) {
      std::ostringstream msg;
      msg << "table generation aborted at node (b1=" << b1 << ", b2=" << b2 << "): " << e.what();
      throw ConvergenceError(msg.str(), e.best_estimate(), e.error_estimate());
    }
  }

 private:
  const TableConfig& config_;
  oracle::OctantRule rule_;
};

// Runs `row(i)` for i in [0, rows) over worker threads; rows are independent.
template <class RowFn>
void parallel_rows(std::size_t rows, unsigned threads, std::string_view section,
                   const ProgressFn& progress, RowFn&& row) {
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex report_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= rows) return;
      try {
        row(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(rows);
        return;
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress && (finished == rows || finished % std::max<std::size_t>(1, rows / 20) == 0)) {
        std::lock_guard lock(report_mutex);
        progress(section, finished, rows);
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

void fill_z00(HermiteGrid2D& g, const NodeEvaluator& eval, unsigned threads,
              const ProgressFn& progress) {
  static constexpr std::array<oracle::DiagOrder, 3> orders{{{0, 0}, {2, 0}, {0, 2}}};
  const std::size_t n = g.axis_nodes;
  parallel_rows(n, threads, "Z00", progress, [&](std::size_t i1) {
    std::array<double, 3> z{};
    for (std::size_t i2 = i1; i2 < n; ++i2) {
      eval(orders, g.coordinate(i1), g.coordinate(i2), z);
      if (i1 == i2) z[2] = z[1];
      // the lattice is symmetric under b1 <-> b2 with the derivatives swapped
      const std::size_t k = g.index(i1, i2);
      const std::size_t km = g.index(i2, i1);
      g.value[k] = g.value[km] = z[0];
      g.d_b1[k] = g.d_b2[km] = z[1];
      g.d_b2[k] = g.d_b1[km] = z[2];
    }
  });
}

void fill_ratios(std::array<HermiteGrid2D, 5>& grids, const NodeEvaluator& eval,
                 unsigned threads, const ProgressFn& progress) {
  enum : std::size_t { k00, k20, k02, k40, k04, k22, k60, k42, k24, k06, kCount };
  static constexpr std::array<oracle::DiagOrder, kCount> orders{
      {{0, 0}, {2, 0}, {0, 2}, {4, 0}, {0, 4}, {2, 2}, {6, 0}, {4, 2}, {2, 4}, {0, 6}}};
  // numerator, numerator raised in b1, numerator raised in b2
  static constexpr std::array<std::array<std::size_t, 3>, 5> terms{
      {{k20, k40, k22}, {k02, k22, k04}, {k40, k60, k42}, {k04, k24, k06}, {k22, k42, k24}}};
  // grid index of the quantity obtained by swapping b1 and b2
  static constexpr std::array<std::size_t, 5> mirror{1, 0, 3, 2, 4};
  const std::size_t n = grids[0].axis_nodes;
  parallel_rows(n, threads, "ratios", progress, [&](std::size_t i1) {
    std::array<double, kCount> z{};
    for (std::size_t i2 = i1; i2 < n; ++i2) {
      eval(orders, grids[0].coordinate(i1), grids[0].coordinate(i2), z);
      if (i1 == i2) {
        z[k02] = z[k20];
        z[k04] = z[k40];
        z[k24] = z[k42];
        z[k06] = z[k60];
      }
      const double z0 = z[k00];
      const std::size_t k = grids[0].index(i1, i2);
      const std::size_t km = grids[0].index(i2, i1);
      for (std::size_t q = 0; q < 5; ++q) {
        const double num = z[terms[q][0]];
        const double r = num / z0;
        const double dr1 = (z[terms[q][1]] * z0 - num * z[k20]) / (z0 * z0);
        const double dr2 = (z[terms[q][2]] * z0 - num * z[k02]) / (z0 * z0);
        grids[q].value[k] = r;
        grids[q].d_b1[k] = dr1;
        grids[q].d_b2[k] = dr2;
        HermiteGrid2D& m = grids[mirror[q]];
        m.value[km] = r;
        m.d_b1[km] = dr2;
        m.d_b2[km] = dr1;
      }
    }
  });
}

}  // namespace

std::uint64_t TableHeader::expected_payload_bytes() const noexcept {
  const std::uint64_t z = static_cast<std::uint64_t>(z00_axis_nodes) * z00_axis_nodes * 3;
  const std::uint64_t r = static_cast<std::uint64_t>(ratio_axis_nodes) * ratio_axis_nodes * 3 * 5;
  const std::uint64_t g = static_cast<std::uint64_t>(gm_nodes) * (n2 + 1) * 3;
  return 8 * (z + r + g);
}

TableConfig TableConfig::tiny() {
  TableConfig c;
  c.d = 1.0;
  c.dz00 = 0.5;
  c.dratio = 0.5;
  c.gm_step = 0.25;
  return c;
}

void TableConfig::validate() const {
  if (!(d > 0.0)) throw DomainError("table config: d must be > 0");
  if (n2 < 0 || n2 > 20) throw DomainError("table config: N2 must be in [0, 20]");
  series::exact_step_count(d, dz00);
  series::exact_step_count(d, dratio);
  series::exact_step_count(d, gm_step);
  quad.validate();
  if (quad.abs_tol > 1e-11) throw DomainError("table config: quadrature abs_tol must be <= 1e-11");
}

const HermiteGrid2D& MomentTables::grid(Quantity q) const {
  if (q == Quantity::kZ00) return z00;
  return ratios[static_cast<std::size_t>(q) - 1];
}

void MomentTables::validate() const {
  const TableHeader& h = header;
  if (h.magic != TableHeader::kMagic || h.format_version != TableHeader::kFormatVersion ||
      h.section_count != TableHeader::kSectionCount)
    throw StateError("tables: bad header identity");
  if (z00.axis_nodes != h.z00_axis_nodes || z00.spacing != h.dz00 || z00.extent != h.d ||
      z00.quantity != Quantity::kZ00)
    throw StateError("tables: Z00 grid disagrees with header");
  for (std::size_t q = 0; q < ratios.size(); ++q) {
    const auto& r = ratios[q];
    if (r.axis_nodes != h.ratio_axis_nodes || r.spacing != h.dratio || r.extent != h.d ||
        r.quantity != kRatioQuantities[q])
      throw StateError("tables: ratio grid disagrees with header");
    r.validate();
  }
  z00.validate();
  if (gm.nodes != h.gm_nodes || gm.step != h.gm_step || gm.d != h.d ||
      gm.max_order != static_cast<int>(h.n2))
    throw StateError("tables: gm grid disagrees with header");
  gm.validate();
  if (series::exact_step_count(h.d, h.dz00) + 1 != h.z00_axis_nodes ||
      series::exact_step_count(h.d, h.dratio) + 1 != h.ratio_axis_nodes ||
      series::exact_step_count(h.d, h.gm_step) + 1 != h.gm_nodes)
    throw StateError("tables: node counts disagree with spacings");
}

MomentTables generate_tables(const TableConfig& config, const ProgressFn& progress,
                             unsigned threads) {
  config.validate();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t z_axis = series::exact_step_count(config.d, config.dz00) + 1;
  const std::size_t r_axis = series::exact_step_count(config.d, config.dratio) + 1;

  MomentTables t;
  const NodeEvaluator eval(config);
  t.z00 = empty_grid(Quantity::kZ00, config.dz00, config.d, z_axis);
  fill_z00(t.z00, eval, threads, progress);
  for (std::size_t q = 0; q < 5; ++q)
    t.ratios[q] = empty_grid(kRatioQuantities[q], config.dratio, config.d, r_axis);
  fill_ratios(t.ratios, eval, threads, progress);
  t.gm = series::build_gm_grid(config.d, config.n2, config.gm_step);
  if (progress) progress("gm", t.gm.nodes, t.gm.nodes);

  TableHeader& h = t.header;
  h.d = config.d;
  h.dz00 = config.dz00;
  h.dratio = config.dratio;
  h.gm_step = config.gm_step;
  h.n2 = static_cast<std::uint32_t>(config.n2);
  h.z00_axis_nodes = static_cast<std::uint32_t>(z_axis);
  h.ratio_axis_nodes = static_cast<std::uint32_t>(r_axis);
  h.gm_nodes = static_cast<std::uint32_t>(t.gm.nodes);
  h.payload_bytes = h.expected_payload_bytes();
  h.checksum = payload_checksum(t);
  t.validate();
  return t;
}

std::uint64_t payload_checksum(const MomentTables& t) {
  Fnv1a hash;
  for_each_payload_chunk(t, [&](const unsigned char* p, std::size_t n) { hash.update(p, n); });
  return hash.digest();
}

std::uint64_t write_tables(const MomentTables& t, std::ostream& sink) {
  t.validate();
  TableHeader h = t.header;
  h.payload_bytes = h.expected_payload_bytes();
  h.checksum = payload_checksum(t);
  const auto head = encode_header(h);
  sink.write(reinterpret_cast<const char*>(head.data()), head.size());
  std::uint64_t written = head.size();
  for_each_payload_chunk(t, [&](const unsigned char* p, std::size_t n) {
    sink.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n));
    written += n;
  });
  if (!sink) throw TableError(TableErrorKind::kIo, "write failed");
  return written;
}

MomentTables read_tables(std::istream& source) {
  std::array<unsigned char, TableHeader::kSize> head{};
  source.read(reinterpret_cast<char*>(head.data()), head.size());
  if (source.gcount() != static_cast<std::streamsize>(head.size()))
    throw TableError(TableErrorKind::kTruncated, "stream ends inside the header");
  const TableHeader h = decode_header(head.data());
  if (h.magic != TableHeader::kMagic) throw TableError(TableErrorKind::kBadMagic, "not a table file");
  if (h.format_version != TableHeader::kFormatVersion)
    throw TableError(TableErrorKind::kUnsupportedVersion,
                     "format version " + std::to_string(h.format_version));
  if (get_u32(head.data() + 60) != header_check(head.data()))
    throw TableError(TableErrorKind::kChecksumMismatch, "header check does not match");

  // geometry must be self-consistent before any allocation
  try {
    if (h.section_count != TableHeader::kSectionCount || h.n2 > 20 ||
        series::exact_step_count(h.d, h.dz00) + 1 != h.z00_axis_nodes ||
        series::exact_step_count(h.d, h.dratio) + 1 != h.ratio_axis_nodes ||
        series::exact_step_count(h.d, h.gm_step) + 1 != h.gm_nodes ||
        h.payload_bytes != h.expected_payload_bytes())
      throw TableError(TableErrorKind::kInconsistentCounts, "header counts disagree");
  } catch (const DomainError& e) {
    throw TableError(TableErrorKind::kInconsistentCounts, e.what());
  }

  std::vector<unsigned char> payload(h.payload_bytes);
  source.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (source.gcount() != static_cast<std::streamsize>(payload.size()))
    throw TableError(TableErrorKind::kTruncated, "stream ends inside the payload");
  if (source.peek() != std::char_traits<char>::eof())
    throw TableError(TableErrorKind::kInconsistentCounts, "trailing bytes after the payload");
  Fnv1a hash;
  hash.update(payload.data(), payload.size());
  if (hash.digest() != h.checksum)
    throw TableError(TableErrorKind::kChecksumMismatch, "payload checksum does not match header");

  MomentTables t;
  t.header = h;
  const unsigned char* p = payload.data();
  auto array = [&](std::vector<double>& a) {
    for (double& v : a) {
      v = get_f64(p);
      p += 8;
    }
  };
  auto grid = [&](HermiteGrid2D& g) {
    array(g.value);
    array(g.d_b1);
    array(g.d_b2);
  };
  t.z00 = empty_grid(Quantity::kZ00, h.dz00, h.d, h.z00_axis_nodes);
  grid(t.z00);
  for (std::size_t q = 0; q < 5; ++q) {
    t.ratios[q] = empty_grid(kRatioQuantities[q], h.dratio, h.d, h.ratio_axis_nodes);
    grid(t.ratios[q]);
  }
  t.gm.step = h.gm_step;
  t.gm.d = h.d;
  t.gm.max_order = static_cast<int>(h.n2);
  t.gm.nodes = h.gm_nodes;
  t.gm.values.resize(static_cast<std::size_t>(h.gm_nodes) * (h.n2 + 1) * 3);
  array(t.gm.values);
  try {
    t.validate();
  } catch (const StateError& e) {
    throw TableError(TableErrorKind::kInconsistentCounts, e.what());
  }
  return t;
}

std::uint64_t save_tables(const MomentTables& t, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".partial");
  std::uint64_t n = 0;
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw TableError(TableErrorKind::kIo, "cannot open " + tmp.string());
    n = write_tables(t, out);
    out.flush();
    if (!out) throw TableError(TableErrorKind::kIo, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  return n;
}

MomentTables load_tables(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableError(TableErrorKind::kIo, "cannot open " + path.string());
  return read_tables(in);
}

std::filesystem::path resolve_table_path(const std::optional<std::filesystem::path>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("BINGHAM_TABLES"); env && *env) return env;
  throw StateError("no table file: pass --tables PATH or set BINGHAM_TABLES");
}

}  // namespace bingham
