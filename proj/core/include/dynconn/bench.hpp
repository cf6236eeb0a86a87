#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dynconn/memory_model.hpp"
#include "dynconn/structures.hpp"
#include "dynconn/workload.hpp"

namespace dynconn {

struct BenchRow {
  std::string structure;
  std::string dataset;
  int u_r = 0;
  std::string op_class;  // insert, delete or query
  std::uint64_t count = 0;
  std::uint64_t total_ns = 0;
  double mean_ns = 0;
  std::uint64_t p99_ns = 0;
  std::size_t memory_bytes = 0;
  int max_height = 0;
  std::uint64_t seed = 0;
  std::string status;  // ok or timeout

  bool operator==(const BenchRow&) const = default;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

struct BenchOptions {
  std::string dataset_label;
  StructureOptions structure;
  double timeout_secs = 0;  // 0 disables the budget
  MemoryModel memory;
};

// Replays ops on a fresh structure, timing every update and every query at
// the testing points. Emits the insert row always, delete and query rows
// when they occurred.
BenchReport run_benchmark(const Workload& workload, StructureKind kind, const BenchOptions& options);

const std::vector<std::string>& csv_columns();
std::string format_csv(const BenchReport& report, bool header = true);
// Appending skips the header when the file is non-empty. Throws IoError.
void emit_csv(const BenchReport& report, const std::string& path, bool append = false);
// Throws InvalidArgument.
BenchReport parse_csv(std::string_view text);

}  // namespace dynconn
