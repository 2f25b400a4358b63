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
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "bingham/grid_interp.hpp"
#include "bingham/oracle.hpp"
#include "bingham/series.hpp"

namespace bingham {

/// Fixed 80-byte little-endian file header.
///
///   offset  size  field
///        0     4  magic "BMOM"
///        4     4  format_version (u32) = 1
///        8     8  d (f64)
///       16     8  dz00 (f64)
///       24     8  dratio (f64)
///       32     8  gm_step (f64)
///       40     4  n2 (u32)
///       44     4  z00_axis_nodes (u32)
///       48     4  ratio_axis_nodes (u32)
///       52     4  gm_nodes (u32)
///       56     4  section_count (u32) = 7
///       60     4  header_check (u32), FNV-1a of the other 76 header bytes, folded
///       64     8  payload_bytes (u64)
///       72     8  checksum (u64), FNV-1a over the payload bytes
///
/// The payload follows: the Z00 section, the five ratio sections in the
/// order Z20, Z02, Z40, Z04, Z22 (each as row-major value, d/db1, d/db2
/// arrays), then the gm section (row-major over node, derivative order,
/// m/2). All reals are IEEE-754 binary64.
struct TableHeader {
  static constexpr std::array<char, 4> kMagic{'B', 'M', 'O', 'M'};
  static constexpr std::uint32_t kFormatVersion = 1;
  static constexpr std::uint32_t kSectionCount = 7;
  static constexpr std::size_t kSize = 80;

  std::array<char, 4> magic = kMagic;
  std::uint32_t format_version = kFormatVersion;
  double d = 0.0;
  double dz00 = 0.0;
  double dratio = 0.0;
  double gm_step = 0.0;
  std::uint32_t n2 = 0;
  std::uint32_t z00_axis_nodes = 0;
  std::uint32_t ratio_axis_nodes = 0;
  std::uint32_t gm_nodes = 0;
  std::uint32_t section_count = kSectionCount;
  std::uint64_t payload_bytes = 0;
  std::uint64_t checksum = 0;

  /// Payload size implied by the node counts.
  std::uint64_t expected_payload_bytes() const noexcept;
};

/// Node integration used while generating tables.
enum class NodeIntegrator {
  kGaussLegendre,    // tensor-product rule, spectrally accurate, fast
  kAdaptiveSimpson,  // the reference oracle at TableConfig::quad
};

struct TableConfig {
  double d = 30.0;
  int n2 = 5;
  double dz00 = 0.025;
  double dratio = 0.1;
  double gm_step = 0.001;
  oracle::QuadratureSpec quad{};
  NodeIntegrator integrator = NodeIntegrator::kGaussLegendre;

  /// 3x3 lattices on [-1, 0]^2; small enough for unit tests.
  static TableConfig tiny();

  /// Throws DomainError when spacings do not divide d or tolerances are loose.
  void validate() const;
};

struct MomentTables {
  TableHeader header;
  HermiteGrid2D z00;
  std::array<HermiteGrid2D, 5> ratios;  // order of kRatioQuantities
  series::GmDerivGrid gm;

  const HermiteGrid2D& grid(Quantity q) const;
  /// Throws StateError if the header and the arrays disagree.
  void validate() const;
};

/// Receives (section name, done, total) as generation proceeds.
using ProgressFn = std::function<void(std::string_view, std::size_t, std::size_t)>;

/// Builds every table section. Deterministic for a given config regardless
/// of `threads` (0 picks the hardware concurrency).
MomentTables generate_tables(const TableConfig& config, const ProgressFn& progress = {},
                             unsigned threads = 0);

/// FNV-1a 64-bit hash over the serialized payload.
std::uint64_t payload_checksum(const MomentTables& t);

/// Serializes header and payload; returns the number of bytes written.
std::uint64_t write_tables(const MomentTables& t, std::ostream& sink);

/// Parses and validates; throws TableError on any defect.
MomentTables read_tables(std::istream& source);

std::uint64_t save_tables(const MomentTables& t, const std::filesystem::path& path);
MomentTables load_tables(const std::filesystem::path& path);

/// Table path from an explicit flag, else the BINGHAM_TABLES environment
/// variable; throws StateError when neither is set.
std::filesystem::path resolve_table_path(const std::optional<std::filesystem::path>& flag);

}  // namespace bingham
