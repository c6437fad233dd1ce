#include "cordial/splitter.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace cordial {

const char* to_string(SplitCase c) {
  switch (c) {
    case SplitCase::SixVertexTree: return "six-vertex";
    case SplitCase::FiveVertexTree: return "five-vertex";
    case SplitCase::CatalogTree: return "catalog-tree";
    case SplitCase::CatalogForest: return "catalog-forest";
  }
  return "unknown";
}

namespace {

using Invalid = SplitError;

// Vertices of the branch at v through w, parents before children.
std::vector<std::pair<Vertex, Vertex>> branch_bfs(const Tree& t, Vertex v, Vertex w) {
  std::vector<std::pair<Vertex, Vertex>> out{{w, v}};  // (vertex, parent)
  for (std::size_t head = 0; head < out.size(); ++head) {
    const auto [x, parent] = out[head];
    for (Vertex y : t.neighbors(x)) {
      if (y != parent) out.emplace_back(y, x);
    }
  }
  return out;
}

struct Branch {
  Vertex neighbor;
  int size;
  std::string code;
};

std::vector<Branch> branches_at(const Tree& t, Vertex v) {
  std::vector<Branch> out;
  for (Vertex w : t.neighbors(v)) out.push_back({w, branch_size(t, v, w), branch_code(t, v, w)});
  return out;
}

// First subset of `items` (in include-first order) whose sizes sum to target.
std::optional<std::vector<Vertex>> subset_with_sum(const std::vector<Branch>& items, int target) {
  std::set<std::pair<std::size_t, int>> dead;
  std::vector<Vertex> chosen;
  auto go = [&](auto&& self, std::size_t i, int left) -> bool {
    if (left == 0) return true;
    if (i == items.size() || left < 0 || dead.count({i, left})) return false;
    chosen.push_back(items[i].neighbor);
    if (self(self, i + 1, left - items[i].size)) return true;
    chosen.pop_back();
    if (self(self, i + 1, left)) return true;
    dead.insert({i, left});
    return false;
  };
  if (go(go, 0, target)) return chosen;
  return std::nullopt;
}

// Branches whose codes form the root-children multiset of `component`, picked
// from the available ones in order. Empty optional when not contained.
std::optional<std::vector<Vertex>> match_children(const RootedTree& component, const std::vector<Branch>& available) {
  std::vector<std::string> need;
  for (int c : component.root_children()) need.push_back(component.subtree_code(c));
  std::vector<bool> used(available.size(), false);
  std::vector<Vertex> out;
  for (const auto& code : need) {
    bool found = false;
    for (std::size_t i = 0; i < available.size() && !found; ++i) {
      if (!used[i] && available[i].code == code) {
        used[i] = true;
        out.push_back(available[i].neighbor);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return out;
}

// Path vertices in path order, then the rest by id.
std::vector<Vertex> scan_order(const Tree& t, const PathInfo& path) {
  std::vector<Vertex> order = path.vertices;
  std::vector<bool> on(static_cast<std::size_t>(t.order()), false);
  for (Vertex v : order) on[static_cast<std::size_t>(v)] = true;
  for (Vertex v = 0; v < t.order(); ++v) {
    if (!on[static_cast<std::size_t>(v)]) order.push_back(v);
  }
  return order;
}

std::optional<SplitResult> find_catalog_tree(const Tree& t, const PathInfo& path, ShapeFamily family) {
  const auto members = family_members(family);
  for (Vertex v : scan_order(t, path)) {
    const auto avail = branches_at(t, v);
    for (ShapeId id : members) {
      const auto pick = match_children(shape(id).forest.component(0), avail);
      if (!pick) continue;
      auto s = split_at(t, v, *pick);
      s.case_tag = SplitCase::CatalogTree;
      s.shape = id;
      return s;
    }
  }
  return std::nullopt;
}

std::optional<SplitResult> find_catalog_forest(const Tree& t, const PathInfo& path, ShapeFamily family) {
  const auto members = family_members(family);
  const auto order = scan_order(t, path);
  std::vector<std::vector<Branch>> at(static_cast<std::size_t>(t.order()));
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(t.order()));
  for (Vertex v = 0; v < t.order(); ++v) {
    at[static_cast<std::size_t>(v)] = branches_at(t, v);
    dist[static_cast<std::size_t>(v)] = t.distances_from(v);
  }
  // branches at a that do not contain b
  auto away_from = [&](Vertex a, Vertex b) {
    auto bs = at[static_cast<std::size_t>(a)];
    const auto& db = dist[static_cast<std::size_t>(b)];
    std::erase_if(bs, [&](const Branch& x) { return db[static_cast<std::size_t>(x.neighbor)] < db[static_cast<std::size_t>(a)]; });
    return bs;
  };
  for (Vertex v : order) {
    for (Vertex u : order) {
      if (u == v) continue;
      const auto avail_v = away_from(v, u);
      const auto avail_u = away_from(u, v);
      for (ShapeId id : members) {
        const auto& f = shape(id).forest;
        const auto pick_v = match_children(f.component(0), avail_v);
        if (!pick_v) continue;
        const auto pick_u = match_children(f.component(1), avail_u);
        if (!pick_u) continue;
        auto s = split_at(t, {{v, *pick_v}, {u, *pick_u}});
        s.case_tag = SplitCase::CatalogForest;
        s.shape = id;
        return s;
      }
    }
  }
  return std::nullopt;
}

SplitResult find_split(const Tree& t, int target) {
  if (auto s = find_exact_split(t, target)) return *s;
  const PathInfo path = longest_path(t);
  const auto crit = critical_pair(t, path, target);
  std::optional<SplitResult> s =
      find_catalog_tree(t, path, target == 6 ? ShapeFamily::TPrime : ShapeFamily::TDoublePrime);
  if (!s) s = find_catalog_forest(t, path, target == 6 ? ShapeFamily::Forest : ShapeFamily::ForestPrime);
  if (!s) {
    throw SplitError(SplitError::Kind::SplitNotFound,
                     "no split with target " + std::to_string(target) + " for tree:\n" + serialize_edges(t));
  }
  s->critical = crit;
  return *s;
}

}  // namespace

int branch_size(const Tree& t, Vertex v, Vertex w) { return static_cast<int>(branch_bfs(t, v, w).size()); }

SplitResult split_at(const Tree& t, Vertex v, const std::vector<Vertex>& branches) {
  return split_at(t, std::vector<BranchSelection>{{v, branches}});
}

SplitResult split_at(const Tree& t, const std::vector<BranchSelection>& selections) {
  const int n = t.order();
  std::vector<int> owner(static_cast<std::size_t>(n), -1);  // piece index or -1 for t0
  std::vector<RootedTree> comps;
  SplitResult s;
  for (std::size_t c = 0; c < selections.size(); ++c) {
    const auto& sel = selections[c];
    if (sel.v < 0 || sel.v >= n) throw Invalid(Invalid::Kind::InvalidBranchSelection, "split vertex out of range");
    if (sel.branches.empty()) throw Invalid(Invalid::Kind::InvalidBranchSelection, "no branches selected");
    if (owner[static_cast<std::size_t>(sel.v)] != -1) {
      throw Invalid(Invalid::Kind::InvalidBranchSelection, "split vertex lies inside another piece");
    }
    std::set<Vertex> seen;
    std::vector<std::pair<Vertex, Vertex>> members;
    for (Vertex w : sel.branches) {
      const auto nb = t.neighbors(sel.v);
      if (std::find(nb.begin(), nb.end(), w) == nb.end() || !seen.insert(w).second) {
        throw Invalid(Invalid::Kind::InvalidBranchSelection,
                      "vertex " + std::to_string(w) + " is not a distinct neighbor of " + std::to_string(sel.v));
      }
      for (const auto& m : branch_bfs(t, sel.v, w)) members.push_back(m);
    }
    std::map<Vertex, int> local;
    std::vector<int> parent;
    for (const auto& [x, p] : members) {
      if (owner[static_cast<std::size_t>(x)] != -1) {
        throw Invalid(Invalid::Kind::InvalidBranchSelection, "pieces overlap at vertex " + std::to_string(x));
      }
      owner[static_cast<std::size_t>(x)] = static_cast<int>(c);
      local[x] = static_cast<int>(parent.size());
      parent.push_back(p == sel.v ? RootedTree::kRoot : local.at(p));
      s.piece_original.push_back(x);
    }
    comps.emplace_back(std::move(parent));
  }
  for (const auto& sel : selections) {
    if (owner[static_cast<std::size_t>(sel.v)] != -1) {
      throw Invalid(Invalid::Kind::InvalidBranchSelection, "split vertex lies inside another piece");
    }
  }
  std::vector<int> t0_id(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    if (owner[static_cast<std::size_t>(v)] == -1) {
      t0_id[static_cast<std::size_t>(v)] = static_cast<int>(s.t0_original.size());
      s.t0_original.push_back(v);
    }
  }
  std::vector<std::pair<int, int>> e;
  for (const auto& edge : t.edges()) {
    const int a = t0_id[static_cast<std::size_t>(edge.u)];
    const int b = t0_id[static_cast<std::size_t>(edge.v)];
    if (a >= 0 && b >= 0) e.emplace_back(a, b);
  }
  s.t0 = Tree::from_edge_list(static_cast<int>(s.t0_original.size()), e);
  for (const auto& sel : selections) s.attach.push_back(t0_id[static_cast<std::size_t>(sel.v)]);
  s.pieces = RootedForest(std::move(comps));
  return s;
}

std::optional<CriticalPair> critical_pair(const Tree& t, const PathInfo& path, int target) {
  const auto& p = path.vertices;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const int behind = branch_size(t, p[i], p[i - 1]);
    const int next = branch_size(t, p[i + 1], p[i]);
    if (behind < target && target < next) return CriticalPair{static_cast<int>(i), behind, next};
  }
  return std::nullopt;
}

std::optional<SplitResult> find_exact_split(const Tree& t, int target) {
  const PathInfo path = longest_path(t);
  const auto& p = path.vertices;
  auto finish = [&](Vertex v, const std::vector<Vertex>& pick) {
    auto s = split_at(t, v, pick);
    s.case_tag = target == 6 ? SplitCase::SixVertexTree : SplitCase::FiveVertexTree;
    s.shape = classify_piece(s.pieces, target == 6 ? ShapeFamily::SixVertex : ShapeFamily::FiveVertex);
    return s;
  };
  auto ordered = [](std::vector<Branch> bs, Vertex last) {
    std::stable_sort(bs.begin(), bs.end(), [&](const Branch& a, const Branch& b) {
      if ((a.neighbor == last) != (b.neighbor == last)) return b.neighbor == last;
      return a.code != b.code ? a.code < b.code : a.neighbor < b.neighbor;
    });
    return bs;
  };
  // along the path: off-path branches first, then the branch behind v_i
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    auto bs = branches_at(t, p[i]);
    std::erase_if(bs, [&](const Branch& b) { return b.neighbor == p[i + 1]; });
    if (auto pick = subset_with_sum(ordered(std::move(bs), p[i - 1]), target)) return finish(p[i], *pick);
  }
  for (Vertex v : scan_order(t, path)) {
    if (auto pick = subset_with_sum(ordered(branches_at(t, v), -1), target)) return finish(v, *pick);
  }
  return std::nullopt;
}

SplitResult find_split6(const Tree& t) { return find_split(t, 6); }
SplitResult find_split5(const Tree& t) { return find_split(t, 5); }

Tree reassemble(const SplitResult& s) {
  const int n = static_cast<int>(s.t0_original.size() + s.piece_original.size());
  std::vector<std::pair<int, int>> e;
  const int base = s.t0.order();
  for (const auto& edge : s.t0.edges()) e.emplace_back(edge.u, edge.v);
  for (const auto& [p, v] : s.pieces.edges()) {
    const int a = p.is_root ? s.attach[static_cast<std::size_t>(p.index)] : base + p.index;
    e.emplace_back(a, base + v);
  }
  return Tree::from_edge_list(n, e);
}

}  // namespace cordial
