#include "cordial/tree.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace cordial {

const char* to_string(TreeErrorKind kind) {
  switch (kind) {
    case TreeErrorKind::Empty: return "Empty";
    case TreeErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case TreeErrorKind::SelfLoop: return "SelfLoop";
    case TreeErrorKind::DuplicateEdge: return "DuplicateEdge";
    case TreeErrorKind::CycleDetected: return "CycleDetected";
    case TreeErrorKind::Disconnected: return "Disconnected";
  }
  return "Unknown";
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

std::string rooted_code_at(const Tree& t, Vertex v, Vertex from) {
  std::vector<std::string> parts;
  for (Vertex w : t.neighbors(v)) {
    if (w != from) parts.push_back(rooted_code_at(t, w, v));
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ')';
  return out;
}

}  // namespace

Tree Tree::from_edge_list(int n, std::span<const std::pair<int, int>> pairs) {
  if (n < 1) throw TreeError(TreeErrorKind::Empty, "tree must have at least one vertex");
  Tree t;
  t.adjacency_.resize(static_cast<std::size_t>(n));
  std::set<std::pair<int, int>> seen;
  DisjointSets sets(n);
  for (auto [u, v] : pairs) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw TreeError(TreeErrorKind::VertexOutOfRange,
                      "edge (" + std::to_string(u) + "," + std::to_string(v) + ") references a vertex outside 0.." +
                          std::to_string(n - 1));
    }
    if (u == v) throw TreeError(TreeErrorKind::SelfLoop, "self-loop at vertex " + std::to_string(u));
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw TreeError(TreeErrorKind::DuplicateEdge,
                      "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    if (!sets.unite(u, v)) {
      throw TreeError(TreeErrorKind::CycleDetected,
                      "edge (" + std::to_string(u) + "," + std::to_string(v) + ") closes a cycle");
    }
    t.adjacency_[static_cast<std::size_t>(u)].push_back(v);
    t.adjacency_[static_cast<std::size_t>(v)].push_back(u);
    t.edges_.push_back({u, v});
  }
  if (static_cast<int>(t.edges_.size()) != n - 1) {
    throw TreeError(TreeErrorKind::Disconnected, std::to_string(n) + " vertices but only " +
                                                     std::to_string(t.edges_.size()) + " edges");
  }
  for (auto& adj : t.adjacency_) std::sort(adj.begin(), adj.end());
  return t;
}

Tree Tree::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return from_edge_list(n, e);
}

Tree Tree::star(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return from_edge_list(leaves + 1, e);
}

std::vector<int> Tree::distances_from(Vertex source) const {
  std::vector<int> dist(static_cast<std::size_t>(order()), -1);
  std::queue<Vertex> q;
  dist[static_cast<std::size_t>(source)] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : neighbors(v)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

PathInfo longest_path(const Tree& t) {
  auto farthest = [](const std::vector<int>& dist) {
    return static_cast<Vertex>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  };
  const Vertex a = farthest(t.distances_from(0));
  const auto dist = t.distances_from(a);
  const int diameter = *std::max_element(dist.begin(), dist.end());

  // reach[v]: deepest distance from a found in the subtree of v (rooted at a)
  std::vector<Vertex> order(static_cast<std::size_t>(t.order()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Vertex x, Vertex y) { return dist[static_cast<std::size_t>(x)] > dist[static_cast<std::size_t>(y)]; });
  std::vector<int> reach(dist);
  for (Vertex v : order) {
    for (Vertex w : t.neighbors(v)) {
      if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(v)] - 1) {
        reach[static_cast<std::size_t>(w)] = std::max(reach[static_cast<std::size_t>(w)], reach[static_cast<std::size_t>(v)]);
      }
    }
  }

  PathInfo p;
  Vertex cur = a;
  p.vertices.push_back(cur);
  while (dist[static_cast<std::size_t>(cur)] < diameter) {
    for (Vertex w : t.neighbors(cur)) {  // neighbors are sorted ascending
      if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(cur)] + 1 &&
          reach[static_cast<std::size_t>(w)] == diameter) {
        cur = w;
        break;
      }
    }
    p.vertices.push_back(cur);
  }
  return p;
}

bool is_caterpillar(const Tree& t) {
  if (t.order() <= 2) return true;
  for (Vertex v = 0; v < t.order(); ++v) {
    if (t.is_leaf(v)) continue;
    int internal = 0;
    for (Vertex w : t.neighbors(v)) internal += t.is_leaf(w) ? 0 : 1;
    if (internal > 2) return false;
  }
  return true;
}

std::vector<Vertex> center(const Tree& t) {
  const int n = t.order();
  if (n <= 2) {
    std::vector<Vertex> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = t.degree(v);
    if (deg[static_cast<std::size_t>(v)] == 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<Vertex> next;
    for (Vertex v : layer) {
      for (Vertex w : t.neighbors(v)) {
        if (--deg[static_cast<std::size_t>(w)] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::string free_canonical_form(const Tree& t) {
  std::string best;
  for (Vertex c : center(t)) {
    std::string code = rooted_code_at(t, c, -1);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

std::string branch_code(const Tree& t, Vertex parent, Vertex child) { return rooted_code_at(t, child, parent); }

std::string serialize_edges(const Tree& t) {
  std::ostringstream os;
  os << t.order() << '\n';
  for (const auto& e : t.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

RootedTree::RootedTree(std::vector<int> parent) : parent_(std::move(parent)) {
  const std::size_t n = parent_.size();
  children_.assign(n, {});
  depth_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int p = parent_[i];
    if (p == kRoot) {
      root_children_.push_back(static_cast<int>(i));
      depth_[i] = 1;
    } else if (p >= 0 && static_cast<std::size_t>(p) < i) {
      children_[static_cast<std::size_t>(p)].push_back(static_cast<int>(i));
      depth_[i] = depth_[static_cast<std::size_t>(p)] + 1;
    } else {
      throw std::invalid_argument("rooted tree: parent of vertex " + std::to_string(i) + " must precede it");
    }
  }
}

namespace {

std::vector<std::string> all_codes(const RootedTree& rt) {
  std::vector<std::string> codes(static_cast<std::size_t>(rt.order()));
  for (int v = rt.order() - 1; v >= 0; --v) {
    std::vector<std::string> parts;
    for (int c : rt.children(v)) parts.push_back(codes[static_cast<std::size_t>(c)]);
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& s : parts) out += s;
    out += ')';
    codes[static_cast<std::size_t>(v)] = std::move(out);
  }
  return codes;
}

}  // namespace

std::string RootedTree::subtree_code(int v) const { return all_codes(*this)[static_cast<std::size_t>(v)]; }

std::string RootedTree::canonical_form() const {
  const auto codes = all_codes(*this);
  std::vector<std::string> parts;
  for (int c : root_children_) parts.push_back(codes[static_cast<std::size_t>(c)]);
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& s : parts) out += s;
  out += ')';
  return out;
}

std::vector<int> RootedTree::canonical_order() const {
  const auto codes = all_codes(*this);
  auto sorted = [&](std::vector<int> vs) {
    std::sort(vs.begin(), vs.end(), [&](int a, int b) {
      const auto& ca = codes[static_cast<std::size_t>(a)];
      const auto& cb = codes[static_cast<std::size_t>(b)];
      return ca != cb ? ca < cb : a < b;
    });
    return vs;
  };
  std::vector<int> out = sorted(root_children_);
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int c : sorted(children(out[head]))) out.push_back(c);
  }
  return out;
}

RootedTree RootedTree::canonical() const {
  const auto order = canonical_order();
  std::vector<int> position(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<int> parent(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int p = parent_[static_cast<std::size_t>(order[i])];
    parent[i] = p == kRoot ? kRoot : position[static_cast<std::size_t>(p)];
  }
  return RootedTree(std::move(parent));
}

Tree RootedTree::with_root() const {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < order(); ++v) e.emplace_back(parent(v) == kRoot ? order() : parent(v), v);
  return Tree::from_edge_list(order() + 1, e);
}

RootedTree RootedTree::without_vertex(int v) const {
  if (!is_leaf(v)) throw std::invalid_argument("without_vertex: vertex is not a leaf");
  std::vector<int> parent;
  for (int u = 0; u < order(); ++u) {
    if (u == v) continue;
    const int p = parent_[static_cast<std::size_t>(u)];
    parent.push_back(p == kRoot ? kRoot : (p > v ? p - 1 : p));
  }
  return RootedTree(std::move(parent));
}

RootedForest::RootedForest(std::vector<RootedTree> components) : components_(std::move(components)) {
  for (const auto& c : components_) {
    offsets_.push_back(order_);
    order_ += c.order();
  }
}

int RootedForest::component_of(int v) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

RootedForest::Endpoint RootedForest::parent_of(int v) const {
  const int c = component_of(v);
  const int local = v - offset(c);
  const int p = component(c).parent(local);
  if (p == RootedTree::kRoot) return {true, c};
  return {false, offset(c) + p};
}

int RootedForest::depth(int v) const {
  const int c = component_of(v);
  return component(c).depth(v - offset(c));
}

std::vector<std::pair<RootedForest::Endpoint, int>> RootedForest::edges() const {
  std::vector<std::pair<Endpoint, int>> out;
  for (int v = 0; v < order_; ++v) out.emplace_back(parent_of(v), v);
  return out;
}

std::vector<int> RootedForest::level_order() const {
  std::vector<int> vs(static_cast<std::size_t>(order_));
  std::iota(vs.begin(), vs.end(), 0);
  std::stable_sort(vs.begin(), vs.end(), [&](int a, int b) { return depth(a) < depth(b); });
  return vs;
}

std::string RootedForest::canonical_form() const {
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += '|';
    out += components_[i].canonical_form();
  }
  return out;
}

std::vector<int> rooted_isomorphism(const RootedTree& a, const RootedTree& b) {
  if (a.order() != b.order() || a.canonical_form() != b.canonical_form()) return {};
  const auto oa = a.canonical_order();
  const auto ob = b.canonical_order();
  std::vector<int> map(oa.size());
  for (std::size_t i = 0; i < oa.size(); ++i) map[static_cast<std::size_t>(oa[i])] = ob[i];
  return map;
}

std::vector<int> forest_isomorphism(const RootedForest& a, const RootedForest& b) {
  if (a.root_count() != b.root_count() || a.order() != b.order()) return {};
  std::vector<int> map(static_cast<std::size_t>(a.order()));
  for (int c = 0; c < a.root_count(); ++c) {
    if (a.component(c).order() == 0 && b.component(c).order() == 0) continue;
    auto m = rooted_isomorphism(a.component(c), b.component(c));
    if (m.empty()) return {};
    for (std::size_t i = 0; i < m.size(); ++i) {
      map[static_cast<std::size_t>(a.offset(c)) + i] = b.offset(c) + m[i];
    }
  }
  return map;
}

}  // namespace cordial
