#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cordial/tree.hpp"

namespace cordial {

enum class ScanMethod { Backtrack, Constructive };

const char* to_string(ScanMethod m);
ScanMethod scan_method_from_string(const std::string& s);

class CheckpointCorrupt : public std::runtime_error {
 public:
  CheckpointCorrupt(const std::string& path, int line, const std::string& why)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + why), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct ScanOptions {
  int k = 6;
  int n_min = 1;
  int n_max = 12;
  ScanMethod method = ScanMethod::Backtrack;
  int jobs = 1;                // 0 picks the hardware concurrency
  std::string checkpoint;      // empty disables checkpointing
  int cap = 18;
};

/// Aggregate for one order n. Every field is a sum over trees, so the result
/// does not depend on the worker count.
struct ScanRow {
  int n = 0;
  std::uint64_t trees = 0;
  std::uint64_t cordial = 0;
  std::uint64_t unsat = 0;
  std::uint64_t fallback_steps = 0;  // constructive only
  std::uint64_t total_steps = 0;     // constructive only
  double seconds = 0.0;
  bool resumed = false;
};

struct UnsatInstance {
  int n = 0;
  std::uint64_t index = 0;  // position in enumeration order
  std::string edges;        // "u-v u-v ..."
};

struct ScanReport {
  int k = 0;
  int n_min = 0;
  int n_max = 0;
  ScanMethod method = ScanMethod::Backtrack;
  std::vector<ScanRow> rows;
  std::vector<UnsatInstance> unsat;
  double wall_seconds = 0.0;

  std::uint64_t trees() const;
  std::uint64_t cordial_count() const;
  std::uint64_t fallback_steps() const;
  std::uint64_t total_steps() const;
};

/// Checks every free tree with n_min <= n <= n_max. With a checkpoint path,
/// finished orders are appended to the file and skipped on the next run.
/// Throws CheckpointCorrupt on a malformed complete line or a header that
/// belongs to a different scan.
ScanReport scan(const ScanOptions& opt);

/// One-line edge list, "0-1 1-2 ...".
std::string compact_edges(const Tree& t);

}  // namespace cordial
