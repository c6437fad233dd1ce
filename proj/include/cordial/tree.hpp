#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cordial {

using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class TreeErrorKind { Empty, VertexOutOfRange, SelfLoop, DuplicateEdge, CycleDetected, Disconnected };

const char* to_string(TreeErrorKind kind);

class TreeError : public std::runtime_error {
 public:
  TreeError(TreeErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  TreeErrorKind kind() const noexcept { return kind_; }

 private:
  TreeErrorKind kind_;
};

// Finite simple tree on vertices 0..n-1. Immutable once built.
class Tree {
 public:
  static Tree from_edge_list(int n, std::span<const std::pair<int, int>> pairs);
  static Tree from_edge_list(int n, std::initializer_list<std::pair<int, int>> pairs) {
    return from_edge_list(n, std::span<const std::pair<int, int>>(pairs.begin(), pairs.size()));
  }
  static Tree path(int n);
  static Tree star(int leaves);

  int order() const noexcept { return static_cast<int>(adjacency_.size()); }
  int size() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
  bool is_leaf(Vertex v) const { return degree(v) == 1; }

  // Distances from source; every vertex is reachable.
  std::vector<int> distances_from(Vertex source) const;

 private:
  Tree() = default;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
};

struct PathInfo {
  std::vector<Vertex> vertices;
  int length() const noexcept { return vertices.empty() ? 0 : static_cast<int>(vertices.size()) - 1; }
};

/// A longest path. Double BFS from vertex 0, smallest id among the farthest
/// vertices at each stage; the walk from the first endpoint takes the
/// smallest-id neighbor that still reaches full length, so the vertex
/// sequence is the lexicographically least among longest paths from that
/// endpoint.
PathInfo longest_path(const Tree& t);

/// True iff deleting every leaf leaves a path (or at most one vertex).
bool is_caterpillar(const Tree& t);

/// Center of the tree (one or two vertices, ascending).
std::vector<Vertex> center(const Tree& t);

/// Isomorphism-invariant code of a free tree (AHU code rooted at the center).
std::string free_canonical_form(const Tree& t);

/// AHU code of the subtree hanging from `child` when the edge to `parent` is cut.
std::string branch_code(const Tree& t, Vertex parent, Vertex child);

// ---------------------------------------------------------------------------
// Rooted structures. The root is external: it carries no vertex id and is not
// counted in order(). Vertices are listed so that every parent precedes its
// children; kRoot marks children of the root.

class RootedTree {
 public:
  static constexpr int kRoot = -1;

  RootedTree() = default;
  explicit RootedTree(std::vector<int> parent);

  int order() const noexcept { return static_cast<int>(parent_.size()); }
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& parents() const noexcept { return parent_; }
  const std::vector<int>& children(int v) const { return children_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& root_children() const noexcept { return root_children_; }
  int root_degree() const noexcept { return static_cast<int>(root_children_.size()); }
  int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }

  /// AHU code, root included.
  std::string canonical_form() const;
  std::string subtree_code(int v) const;

  /// Vertices in canonical level order: breadth first from the root, children
  /// sorted by subtree code, ties by smaller index.
  std::vector<int> canonical_order() const;

  /// Copy relabeled into canonical level order.
  RootedTree canonical() const;

  /// Tree on order()+1 vertices; the root becomes vertex order().
  Tree with_root() const;

  /// Same structure with vertex v (a leaf) removed.
  RootedTree without_vertex(int v) const;

  bool is_leaf(int v) const { return children(v).empty(); }

  friend bool operator==(const RootedTree& a, const RootedTree& b) { return a.parent_ == b.parent_; }

 private:
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> root_children_;
  std::vector<int> depth_;
};

/// Ordered list of rooted trees. Flat vertex indexing concatenates components.
class RootedForest {
 public:
  RootedForest() = default;
  explicit RootedForest(std::vector<RootedTree> components);
  RootedForest(RootedTree single) : RootedForest(std::vector<RootedTree>{std::move(single)}) {}  // NOLINT

  int root_count() const noexcept { return static_cast<int>(components_.size()); }
  int order() const noexcept { return order_; }
  const std::vector<RootedTree>& components() const noexcept { return components_; }
  const RootedTree& component(int i) const { return components_[static_cast<std::size_t>(i)]; }
  int offset(int component) const { return offsets_[static_cast<std::size_t>(component)]; }

  struct Endpoint {
    bool is_root;
    int index;  // root index or flat vertex index
  };
  /// Parent of flat vertex v.
  Endpoint parent_of(int v) const;
  int component_of(int v) const;
  int depth(int v) const;

  /// Edges as (parent endpoint, child flat vertex).
  std::vector<std::pair<Endpoint, int>> edges() const;

  /// Flat vertices sorted by (depth, component, local index).
  std::vector<int> level_order() const;

  /// Component codes joined with '|'.
  std::string canonical_form() const;

 private:
  std::vector<RootedTree> components_;
  std::vector<int> offsets_;
  int order_ = 0;
};

/// Root-preserving isomorphism a -> b (map[v_a] = v_b) or empty when the two
/// rooted trees are not isomorphic.
std::vector<int> rooted_isomorphism(const RootedTree& a, const RootedTree& b);

/// Component-wise isomorphism on flat indices; empty when not isomorphic.
std::vector<int> forest_isomorphism(const RootedForest& a, const RootedForest& b);

/// Edge list text used in error messages and bug reports.
std::string serialize_edges(const Tree& t);

}  // namespace cordial
