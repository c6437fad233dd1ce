#include "cordial/grace.hpp"

#include <algorithm>

namespace cordial {

const char* to_string(GraceErrorKind kind) {
  switch (kind) {
    case GraceErrorKind::NotACaterpillar: return "NotACaterpillar";
    case GraceErrorKind::PreconditionViolated: return "PreconditionViolated";
  }
  return "Unknown";
}

BipartiteLayout layout_along(const Tree& t, const std::vector<Vertex>& spine) {
  if (!is_caterpillar(t)) throw GraceError(GraceErrorKind::NotACaterpillar, "not a caterpillar: " + serialize_edges(t));
  std::vector<bool> on_spine(static_cast<std::size_t>(t.order()), false);
  for (Vertex v : spine) on_spine[static_cast<std::size_t>(v)] = true;

  BipartiteLayout l;
  for (std::size_t i = 0; i < spine.size(); ++i) {
    auto& own = i % 2 == 0 ? l.part_a : l.part_b;
    auto& other = i % 2 == 0 ? l.part_b : l.part_a;
    own.push_back(spine[i]);
    for (Vertex w : t.neighbors(spine[i])) {
      if (!on_spine[static_cast<std::size_t>(w)]) other.push_back(w);
    }
  }
  if (l.part_a.size() + l.part_b.size() != static_cast<std::size_t>(t.order())) {
    throw GraceError(GraceErrorKind::PreconditionViolated, "spine is not a longest path");
  }
  return l;
}

BipartiteLayout layout(const Tree& t, bool reverse) {
  auto spine = longest_path(t).vertices;
  if (reverse) std::reverse(spine.begin(), spine.end());
  return layout_along(t, spine);
}

Labeling label_layout(const BipartiteLayout& l, int n, int k, int start, bool b_first) {
  Labeling f{k, std::vector<int>(static_cast<std::size_t>(n), 0), {}};
  int next = start;
  const auto& first = b_first ? l.part_b : l.part_a;
  const auto& second = b_first ? l.part_a : l.part_b;
  for (Vertex v : first) f.values[static_cast<std::size_t>(v)] = mod(next++, k);
  for (Vertex v : second) f.values[static_cast<std::size_t>(v)] = mod(next++, k);
  return f;
}

Labeling grace_label(const Tree& t, int k, int start, bool reverse) {
  return label_layout(layout(t, reverse), t.order(), k, start);
}

namespace {

// Spine of rt.with_root() that starts at a leaf neighbor of the root, or empty.
std::vector<Vertex> rooted_spine(const RootedTree& rt) {
  const Tree whole = rt.with_root();
  const Vertex root = rt.order();
  if (!is_caterpillar(whole)) return {};
  const int diameter = longest_path(whole).length();
  for (Vertex x : whole.neighbors(root)) {
    if (!whole.is_leaf(x)) continue;
    const auto dist = whole.distances_from(x);
    const auto far = std::max_element(dist.begin(), dist.end());
    if (*far != diameter) continue;
    std::vector<Vertex> spine{static_cast<Vertex>(far - dist.begin())};
    while (spine.back() != x) {
      for (Vertex w : whole.neighbors(spine.back())) {
        if (dist[static_cast<std::size_t>(w)] + 1 == dist[static_cast<std::size_t>(spine.back())]) {
          spine.push_back(w);
          break;
        }
      }
    }
    std::reverse(spine.begin(), spine.end());
    return spine;
  }
  return {};
}

}  // namespace

bool rooted_grace_applicable(const RootedTree& rt) { return rt.order() >= 1 && !rooted_spine(rt).empty(); }

Labeling rooted_grace_sequence(const RootedTree& rt, int k) {
  const auto spine = rooted_spine(rt);
  if (spine.empty()) {
    throw GraceError(GraceErrorKind::PreconditionViolated, "root is not next to an end of a longest path");
  }
  // spine[0] is a leaf, so the root is the first entry of part_b; labeling
  // part_b first gives the root 0.
  const Tree whole = rt.with_root();
  const auto l = layout_along(whole, spine);
  const Labeling all = label_layout(l, whole.order(), k, 0, true);
  Labeling f{k, std::vector<int>(all.values.begin(), all.values.end() - 1), {all.values.back()}};
  return f;
}

Labeling rooted_grace_label(const RootedTree& rt, int k) {
  if (rt.order() != k) {
    throw GraceError(GraceErrorKind::PreconditionViolated,
                     "rooted tree has " + std::to_string(rt.order()) + " vertices, expected " + std::to_string(k));
  }
  return rooted_grace_sequence(rt, k);
}

Labeling grace_with_root_neighbor(const RootedTree& rt, int k, int w, bool reverse) {
  if (rt.root_degree() != 1) throw GraceError(GraceErrorKind::PreconditionViolated, "root degree must be 1");
  // the body is the rooted tree with the root's child as vertex 0
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < rt.order(); ++v) {
    if (rt.parent(v) != RootedTree::kRoot) edges.emplace_back(rt.parent(v), v);
  }
  const Tree body = Tree::from_edge_list(rt.order(), edges);
  if (!is_caterpillar(body)) throw GraceError(GraceErrorKind::PreconditionViolated, "body is not a caterpillar");
  const Vertex neighbor = rt.root_children().front();
  const Labeling base = grace_label(body, k, 0, reverse);
  Labeling f = grace_label(body, k, w - base.values[static_cast<std::size_t>(neighbor)], reverse);
  f.root_values = {0};
  return f;
}

}  // namespace cordial
