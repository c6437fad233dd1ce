#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cordial/labeling.hpp"
#include "cordial/splitter.hpp"
#include "cordial/tables.hpp"
#include "cordial/tree.hpp"

namespace cordial {

enum class Strategy { Base, LeafExtend, Split6, Split5, Fallback };

const char* to_string(Strategy s);

/// One recursion step of the six-cordial construction.
struct BuildStep {
  int size = 0;
  int residue = 0;  // size mod 6
  Strategy strategy = Strategy::Base;
  std::string split_case;  // for split steps
  std::string shape;       // catalog token, when the piece has one
  std::string route;       // how the piece was labeled (grace, table entry, search)
  std::string fallback;    // why the construction left the standard route
  std::string instance;    // edge list of the tree, kept for fallback steps
  bool verified = false;
};

struct BuildTrace {
  std::vector<BuildStep> steps;
  int fallback_count() const;
};

class BuildError : public std::runtime_error {
 public:
  enum class Kind { NoBalancedLabel, RootLabelMismatch, Unsatisfiable };
  BuildError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A six-cordial labeling of t; always verified before it is returned.
std::pair<Labeling, BuildTrace> label_six_cordial(const Tree& t);

/// Label for a new leaf hung at `attach_at`: the smallest residue keeping both
/// the label counts and the weight counts balanced.
int attach_leaf_balanced(const Tree& t, const Labeling& f, Vertex attach_at);

/// Order in which the construction strips leaves: the largest-id leaf among
/// those farthest from the center, recomputed after every removal. Returns
/// the removed vertices (original ids) in removal order.
std::vector<Vertex> leaf_strip_order(const Tree& t, int count);

struct Pasted {
  Tree tree;
  Labeling labeling;
};

/// Joins t0 and the pieces. The result numbers t0's vertices first, then the
/// piece vertices in flat order.
Pasted paste(const Tree& t0, const Labeling& f0, const RootedForest& pieces, const Labeling& fp,
             const std::vector<Vertex>& attach);

/// Counts already present on the rest of the tree. A piece labeling fits when
/// the roots match and the combined counts are balanced.
struct PieceConstraint {
  std::vector<int> roots;
  std::vector<int> base_label_counts;
  std::vector<int> base_weight_counts;
};

/// Exhaustive search over the piece's labelings (at most 6^6 for the pieces
/// used here). Throws Unsatisfiable when none fits.
Labeling fallback_search(const RootedForest& piece, const PieceConstraint& c, int k = kTableModulus);
Labeling fallback_search(const RootedForest& piece, const Requirement& req, int k = kTableModulus);

}  // namespace cordial
