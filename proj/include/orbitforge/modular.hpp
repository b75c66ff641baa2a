#pragma once

// Functional graphs of the maps over Z_M: every residue has exactly one
// successor f(x) mod M, so each component is a cycle with trees hanging off it.

#include "orbitforge/maps.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitforge {

struct FunctionalGraphSummary {
  std::uint64_t modulus = 0;
  std::uint64_t node_count = 0;
  std::uint64_t cycle_count = 0;
  std::vector<std::uint64_t> cycle_lengths;  ///< sorted ascending
  std::uint64_t max_cycle_length = 0;
  std::uint64_t max_tail_length = 0;
  std::uint64_t nodes_on_cycles = 0;

  friend bool operator==(const FunctionalGraphSummary&, const FunctionalGraphSummary&) = default;
};

/// Largest modulus the in-memory successor table accepts.
inline constexpr std::uint64_t max_table_modulus = 0xFFFFFFFFull;

/// Successor table x -> f(x) mod M built with machine-word modular arithmetic,
/// split across `workers` threads.
std::vector<std::uint32_t> successor_table(const IntegerMap& f, std::uint64_t modulus, unsigned workers = 1);

/// Peels in-degree-zero nodes, measures the cycles left behind, then walks the
/// reversed trees outward from the cycles for tail depths. O(M) time and memory.
/// Throws std::domain_error when M < 2 or M > max_table_modulus.
FunctionalGraphSummary functional_graph(const IntegerMap& f, std::uint64_t modulus, unsigned workers = 1);

/// Independent small-modulus oracle: iterates each residue with exact Int
/// arithmetic until it repeats. Intended for M <= 10000.
FunctionalGraphSummary naive_graph_oracle(const IntegerMap& f, std::uint64_t modulus);

struct ScanRow {
  std::uint64_t modulus = 0;
  std::uint64_t max_cycle_length = 0;
  std::uint64_t cycle_count = 0;
  std::uint64_t nodes_on_cycles = 0;
  std::uint64_t max_tail_length = 0;
  std::chrono::nanoseconds elapsed{0};

  /// Equality ignores timing.
  friend bool operator==(const ScanRow& a, const ScanRow& b) {
    return a.modulus == b.modulus && a.max_cycle_length == b.max_cycle_length && a.cycle_count == b.cycle_count &&
           a.nodes_on_cycles == b.nodes_on_cycles && a.max_tail_length == b.max_tail_length;
  }
};

/// Raised for unreadable, unwritable or malformed checkpoint files.
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScanOptions {
  std::uint64_t first = 2;
  std::uint64_t last = 2;
  std::uint64_t stride = 1;
  unsigned workers = 1;
  /// When set, completed moduli are appended here and skipped on rerun.
  std::optional<std::filesystem::path> checkpoint;
  /// Stop after computing this many new rows (used to simulate interruption).
  std::optional<std::size_t> max_new_rows;
};

/// One row per modulus in first, first + stride, ... <= last, in modulus order.
std::vector<ScanRow> max_cycle_scan(const IntegerMap& f, const ScanOptions& opts);

/// Checkpoint record: "m k M max_cycle cycle_count nodes_on_cycles max_tail"
/// for power maps, "quad a b c M max_cycle cycle_count nodes_on_cycles
/// max_tail" for quadratics.
std::string checkpoint_line(const IntegerMap& f, const ScanRow& row);

/// Parses a checkpoint file, keeping only records for `f`. Records for other
/// maps are ignored. Throws CheckpointError on malformed lines.
std::vector<ScanRow> load_checkpoint(const std::filesystem::path& path, const IntegerMap& f);

inline constexpr const char* scan_csv_header = "modulus,max_cycle_length,cycle_count,nodes_on_cycles,max_tail_length";

std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace orbitforge
