#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cordial/catalog.hpp"
#include "cordial/labeling.hpp"

namespace cordial {

inline constexpr int kTableModulus = 6;

enum class EntryKind { MajorityWeight, NoMajority, MinorityLabel, MinorityLabels, MinorityWeight, Subtree };

const char* to_string(EntryKind kind);

struct TableEntry {
  int list = 0;
  ShapeId shape{};
  std::vector<int> labels;  // roots first, then printed order; empty for Subtree
  EntryKind kind{};
  std::vector<int> params;  // weight, label or label pair
  std::optional<ShapeId> reference;  // Subtree only
  int line = 0;                      // 1-based line in the source text
};

class TableParseError : public std::runtime_error {
 public:
  TableParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// One failed check, located by list, shape and entry text.
struct TableIssue {
  int line = 0;
  int list = 0;
  std::string shape;
  std::string entry;
  std::string message;
};

class TranscriptionError : public std::runtime_error {
 public:
  explicit TranscriptionError(std::vector<TableIssue> issues);
  const std::vector<TableIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<TableIssue> issues_;
};

struct ValidationReport {
  int entries_checked = 0;
  int entries_valid = 0;
  int closure_checked = 0;
  std::vector<TableIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// What a piece labeling has to achieve. Root labels are fixed; the profile
/// is checked by recomputation on the labeled piece.
struct Requirement {
  enum class Kind {
    MajorityWeight,  // labels distinct; weight w exactly twice, the rest at most once
    NoMajority,      // labels distinct; weights distinct
    MinorityLabel,   // labels distinct and avoid x; weights distinct
    Balances,        // labels distinct; w once or twice, the rest at most once
  };
  Kind kind = Kind::NoMajority;
  int value = 0;
  std::vector<int> roots;

  static Requirement majority(int w, std::vector<int> roots = {0}) { return {Kind::MajorityWeight, w, std::move(roots)}; }
  static Requirement no_majority(std::vector<int> roots = {0}) { return {Kind::NoMajority, 0, std::move(roots)}; }
  static Requirement minority_label(int x, std::vector<int> roots = {0}) { return {Kind::MinorityLabel, x, std::move(roots)}; }
  static Requirement balances(int w, std::vector<int> roots = {0}) { return {Kind::Balances, w, std::move(roots)}; }
};

bool satisfies(const RootedForest& forest, const Labeling& f, const Requirement& req);

/// Labeling of the shape's own catalog forest described by printed labels.
Labeling entry_labeling(const Shape& s, const std::vector<int>& labels);

struct LookupResult {
  TableEntry source;      // the stored entry used
  int rotation = 0;       // applied after negation
  bool negated = false;
  TableEntry entry;       // transformed entry (shape of the stored entry)
  ShapeId target{};       // shape the labeling is for
  Labeling labeling;      // over the target's catalog forest
};

class Tables {
 public:
  static Tables parse(std::string_view text);
  static const Tables& builtin();

  std::string serialize() const;
  const std::vector<TableEntry>& entries() const noexcept { return entries_; }
  std::vector<const TableEntry*> entries_for(ShapeId shape) const;

  /// Declared kind of every entry against recomputation, reference
  /// resolution, and closure: every (root difference, weight) request on a
  /// two-root shape, and every request on single-root shapes, is reachable
  /// by rotation and negation of a valid entry.
  ValidationReport validate_all() const;
  void validate_or_throw() const;

  /// First valid entry, rotated and then negated if needed, whose labeling
  /// meets the requirement. Reference shapes resolve to their larger shape
  /// with one leaf deleted.
  std::optional<LookupResult> lookup(ShapeId shape, const Requirement& req) const;

 private:
  struct Line {
    std::variant<std::string, std::size_t> content;  // raw text or entry index
  };
  std::vector<Line> lines_;
  std::vector<TableEntry> entries_;
};

/// Whether the entry's declared kind holds on its shape. Empty string if so.
std::string check_entry(const TableEntry& e);

std::string format_entry(const TableEntry& e);

enum class ApplyErrorKind { ShapeMismatch, RootCountMismatch };

class ApplyError : public std::runtime_error {
 public:
  ApplyError(ApplyErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ApplyErrorKind kind() const noexcept { return kind_; }

 private:
  ApplyErrorKind kind_;
};

/// Labels the piece through an isomorphism with the entry's shape.
Labeling apply_entry(const TableEntry& entry, const RootedForest& piece);

/// Transfers a lookup labeling onto an isomorphic piece.
Labeling apply_lookup(const LookupResult& r, const RootedForest& piece);

/// Forest with the given flat leaf removed, and the labeling restricted.
std::pair<RootedForest, Labeling> delete_leaf(const RootedForest& forest, const Labeling& f, int leaf);

}  // namespace cordial
