#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cordial/builder.hpp"
#include "cordial/labeling.hpp"
#include "cordial/scan.hpp"
#include "cordial/tree.hpp"

namespace cordial {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

enum class TreeFormat { Edges, Graph6 };

TreeFormat tree_format_from_string(const std::string& s);

/// A parsed tree plus the input name of every vertex. Numeric input keeps its
/// ids and names[v] == to_string(v); symbolic input ("u1 u2") is numbered in
/// order of first appearance.
struct ParsedTree {
  Tree tree = Tree::path(1);
  std::vector<std::string> names;
  bool renamed = false;
};

/// Edge-list text. Either a vertex count line followed by `u v` lines with
/// 0-based ids, or `a b` lines with arbitrary tokens. `#` starts a comment.
ParsedTree parse_edge_list(const std::string& text);
std::string format_edge_list(const Tree& t);

/// graph6 (no header), for any order up to 258047.
std::string to_graph6(const Tree& t);
Tree from_graph6(const std::string& line);

ParsedTree parse_tree(const std::string& text, TreeFormat format);
std::string format_tree(const Tree& t, TreeFormat format);

/// Labeling text: `vertex label` per line, `#` comments. Vertex tokens are
/// resolved through `names` when the tree was read with symbolic names.
Labeling parse_labeling(const std::string& text, const ParsedTree& tree, int k);
std::string format_labeling(const Labeling& f, const std::vector<std::string>& names = {});

struct TraceSummary {
  int steps = 0;
  int fallback_steps = 0;
  std::map<std::string, int> strategies;
};

TraceSummary summarize(const BuildTrace& trace);

/// Result of one label or verify run. Reports carry the tree, so a report
/// file can be checked on its own.
struct RunReport {
  static constexpr int kSchemaVersion = 1;

  std::string input;
  std::string method;
  int k = 0;
  Tree tree = Tree::path(1);
  Labeling labeling;
  BalanceReport balance;
  std::optional<TraceSummary> trace;
  std::optional<double> seconds;
};

RunReport make_report(const std::string& input, const std::string& method, const Tree& t, const Labeling& f);

std::string report_to_json(const RunReport& r, int indent = 2);

class ReportMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a report and recomputes its verdict and counts; throws
/// ReportMismatch when the stored values disagree with the recomputation.
RunReport report_from_json(const std::string& text);

/// Graphviz description, vertices in id order, labels as "id:label" and edge
/// weights on the edges.
std::string export_dot(const Tree& t, const Labeling& f);

std::string scan_csv(const ScanReport& r, bool timing = false);
std::string scan_json(const ScanReport& r, bool timing = false);

std::string read_file(const std::string& path);
/// Writes through a temporary file and a rename.
void write_file(const std::string& path, const std::string& text);

}  // namespace cordial
