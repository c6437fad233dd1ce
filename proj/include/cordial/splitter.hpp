#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cordial/catalog.hpp"
#include "cordial/tree.hpp"

namespace cordial {

enum class SplitCase {
  SixVertexTree,   // case (i), target 6
  FiveVertexTree,  // case (i), target 5
  CatalogTree,     // case (ii): one root, target - 1 vertices
  CatalogForest,   // case (iii): two roots, target vertices
};

const char* to_string(SplitCase c);

/// Consecutive longest-path indices (i, i+1) where the part behind v_i is too
/// small and the part behind v_{i+1} is too large for the target.
struct CriticalPair {
  int index = 0;
  int deficient = 0;  // vertices behind v_i
  int excessive = 0;  // vertices behind v_{i+1}
};

struct SplitResult {
  Tree t0 = Tree::path(1);
  std::vector<Vertex> t0_original;     // t0 vertex -> input vertex
  RootedForest pieces;
  std::vector<Vertex> piece_original;  // flat piece vertex -> input vertex
  std::vector<Vertex> attach;          // piece root -> t0 vertex
  SplitCase case_tag = SplitCase::SixVertexTree;
  std::optional<ShapeId> shape;        // catalog match, when there is one
  std::optional<CriticalPair> critical;
};

class SplitError : public std::runtime_error {
 public:
  enum class Kind { InvalidBranchSelection, SplitNotFound };
  SplitError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// One piece root: the vertex and the neighbors whose branches move into the piece.
struct BranchSelection {
  Vertex v;
  std::vector<Vertex> branches;
};

/// Moves the selected branches into rooted pieces; everything else stays in t0.
SplitResult split_at(const Tree& t, Vertex v, const std::vector<Vertex>& branches);
SplitResult split_at(const Tree& t, const std::vector<BranchSelection>& selections);

/// Size of the branch at v that contains neighbor w.
int branch_size(const Tree& t, Vertex v, Vertex w);

/// Critical pair on the longest path for the given target, if any.
std::optional<CriticalPair> critical_pair(const Tree& t, const PathInfo& path, int target);

/// Split off a rooted tree on exactly `target` vertices, if one exists.
std::optional<SplitResult> find_exact_split(const Tree& t, int target);

/// Six-vertex tree, else a T' family tree, else an F family forest.
SplitResult find_split6(const Tree& t);

/// Five-vertex tree, else a T'' family tree, else the forest F'.
SplitResult find_split5(const Tree& t);

/// Rebuilds the tree from a split (roots identified with their t0 vertices).
Tree reassemble(const SplitResult& s);

}  // namespace cordial
