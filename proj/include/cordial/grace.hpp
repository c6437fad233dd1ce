#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cordial/labeling.hpp"
#include "cordial/tree.hpp"

namespace cordial {

enum class GraceErrorKind { NotACaterpillar, PreconditionViolated };

const char* to_string(GraceErrorKind kind);

class GraceError : public std::runtime_error {
 public:
  GraceError(GraceErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  GraceErrorKind kind() const noexcept { return kind_; }

 private:
  GraceErrorKind kind_;
};

/// Non-crossing two-row drawing of a caterpillar. Labeling part_a top to
/// bottom and then part_b top to bottom with consecutive integers makes the
/// edge sums consecutive as well.
struct BipartiteLayout {
  std::vector<Vertex> part_a;
  std::vector<Vertex> part_b;
};

/// Walks the spine (the longest path, reversed when `reverse`), appending each
/// spine vertex to its own part and its leaves to the other part.
BipartiteLayout layout(const Tree& t, bool reverse = false);

/// Same walk along a caller-supplied spine, which must be a longest path.
BipartiteLayout layout_along(const Tree& t, const std::vector<Vertex>& spine);

/// Labels start, start+1, ... down part_a then part_b (or part_b first when
/// `b_first`), reduced mod k.
Labeling label_layout(const BipartiteLayout& l, int n, int k, int start, bool b_first = false);

Labeling grace_label(const Tree& t, int k, int start, bool reverse = false);

/// True when the root, viewed as a vertex, sits next to an end of a longest
/// path of the whole rooted tree and the whole thing is a caterpillar.
bool rooted_grace_applicable(const RootedTree& rt);

/// Root labeled 0 and every edge weight distinct. Requires rt.order() == k.
Labeling rooted_grace_label(const RootedTree& rt, int k);

/// The same construction without the order check. Weights stay distinct
/// whenever rt.order() <= k.
Labeling rooted_grace_sequence(const RootedTree& rt, int k);

/// Root degree 1. The body (everything but the root) is labeled by Grace so
/// the root's neighbor gets label w; root label 0, so the pendant weight is w.
Labeling grace_with_root_neighbor(const RootedTree& rt, int k, int w, bool reverse = false);

}  // namespace cordial
