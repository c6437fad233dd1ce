#include "cordial/oracle.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <unordered_set>

namespace cordial {

namespace {

// Level sequences: layout[i] is the depth of vertex i in a preorder walk.
using Layout = std::vector<int>;

std::optional<Layout> next_rooted_tree(const Layout& pred, std::optional<std::size_t> start = std::nullopt) {
  std::size_t p;
  if (start) {
    p = *start;
  } else {
    p = pred.size() - 1;
    while (pred[p] == 1) --p;
  }
  if (p == 0) return std::nullopt;
  std::size_t q = p - 1;
  while (pred[q] != pred[p] - 1) --q;
  Layout result = pred;
  for (std::size_t i = p; i < result.size(); ++i) result[i] = result[i - p + q];
  return result;
}

std::pair<Layout, Layout> split_tree(const Layout& layout) {
  bool one_found = false;
  std::size_t m = layout.size();
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i] == 1) {
      if (one_found) {
        m = i;
        break;
      }
      one_found = true;
    }
  }
  Layout left, rest{0};
  for (std::size_t i = 1; i < m; ++i) left.push_back(layout[i] - 1);
  for (std::size_t i = m; i < layout.size(); ++i) rest.push_back(layout[i]);
  return {left, rest};
}

std::optional<Layout> next_tree(const Layout& candidate) {
  auto [left, rest] = split_tree(candidate);
  const int lh = *std::max_element(left.begin(), left.end());
  const int rh = *std::max_element(rest.begin(), rest.end());
  bool valid = rh >= lh;
  if (valid && rh == lh) {
    if (left.size() > rest.size()) valid = false;
    else if (left.size() == rest.size() && left > rest) valid = false;
  }
  if (valid) return candidate;
  const std::size_t p = left.size();
  auto next = next_rooted_tree(candidate, p);
  if (next && candidate[p] > 2) {
    const auto new_left = split_tree(*next).first;
    const int nlh = *std::max_element(new_left.begin(), new_left.end());
    for (int i = 0; i < nlh + 1; ++i) (*next)[next->size() - static_cast<std::size_t>(nlh + 1) + static_cast<std::size_t>(i)] = i + 1;
  }
  return next;
}

Tree layout_to_tree(const Layout& layout) {
  std::vector<std::pair<int, int>> e;
  std::vector<int> stack;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (!stack.empty()) {
      while (layout[static_cast<std::size_t>(stack.back())] >= layout[i]) stack.pop_back();
      e.emplace_back(static_cast<int>(i), stack.back());
    }
    stack.push_back(static_cast<int>(i));
  }
  return Tree::from_edge_list(static_cast<int>(layout.size()), e);
}

std::uint64_t factorial(int m) {
  std::uint64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Automorphisms fixing v (rooted at v, coming from `from`), with the code.
std::pair<std::string, std::uint64_t> rooted_aut(const Tree& t, Vertex v, Vertex from) {
  std::vector<std::pair<std::string, std::uint64_t>> kids;
  for (Vertex w : t.neighbors(v)) {
    if (w != from) kids.push_back(rooted_aut(t, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::uint64_t aut = 1;
  std::string code = "(";
  for (std::size_t i = 0; i < kids.size();) {
    std::size_t j = i;
    while (j < kids.size() && kids[j].first == kids[i].first) {
      aut *= kids[j].second;
      code += kids[j].first;
      ++j;
    }
    aut *= factorial(static_cast<int>(j - i));
    i = j;
  }
  code += ')';
  return {code, aut};
}

}  // namespace

void for_each_free_tree(int n, const std::function<void(const Tree&)>& visit, int cap) {
  if (n < 1 || n > cap) throw CapExceeded(n, cap);
  if (n == 1) {
    visit(Tree::path(1));
    return;
  }
  if (n == 2) {
    visit(Tree::path(2));
    return;
  }
  Layout layout;
  for (int i = 0; i <= n / 2; ++i) layout.push_back(i);
  for (int i = 1; i < (n + 1) / 2; ++i) layout.push_back(i);
  std::optional<Layout> cur = layout;
  while (cur) {
    cur = next_tree(*cur);
    if (cur) {
      visit(layout_to_tree(*cur));
      cur = next_rooted_tree(*cur);
    }
  }
}

std::vector<Tree> enumerate_free_trees(int n, int cap) {
  std::vector<Tree> out;
  for_each_free_tree(n, [&](const Tree& t) { out.push_back(t); }, cap);
  return out;
}

Tree tree_from_prufer(int n, const std::vector<int>& seq) {
  if (n == 1) return Tree::path(1);
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int x : seq) ++degree[static_cast<std::size_t>(x)];
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < n; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
  }
  std::vector<std::pair<int, int>> e;
  for (int x : seq) {
    const int leaf = leaves.top();
    leaves.pop();
    e.emplace_back(leaf, x);
    if (--degree[static_cast<std::size_t>(x)] == 1) leaves.push(x);
  }
  const int a = leaves.top();
  leaves.pop();
  e.emplace_back(a, leaves.top());
  return Tree::from_edge_list(n, e);
}

std::uint64_t count_free_trees_by_prufer(int n) {
  if (n <= 2) return 1;
  std::unordered_set<std::string> seen;
  std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
  while (true) {
    seen.insert(free_canonical_form(tree_from_prufer(n, seq)));
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return seen.size();
}

std::uint64_t count_free_trees_by_leaf_extension(int n) {
  std::set<std::string> level{free_canonical_form(Tree::path(1))};
  std::vector<Tree> trees{Tree::path(1)};
  for (int m = 2; m <= n; ++m) {
    std::map<std::string, Tree> next;
    for (const auto& t : trees) {
      std::vector<std::pair<int, int>> e;
      for (const auto& edge : t.edges()) e.emplace_back(edge.u, edge.v);
      for (Vertex v = 0; v < t.order(); ++v) {
        auto grown = e;
        grown.emplace_back(v, t.order());
        Tree g = Tree::from_edge_list(m, grown);
        next.emplace(free_canonical_form(g), std::move(g));
      }
    }
    trees.clear();
    for (auto& [code, t] : next) trees.push_back(std::move(t));
  }
  return trees.size();
}

std::uint64_t automorphism_count(const Tree& t) {
  const auto c = center(t);
  if (c.size() == 1) return rooted_aut(t, c[0], -1).second;
  // bicentral: root at the central edge
  const auto a = rooted_aut(t, c[0], c[1]);
  const auto b = rooted_aut(t, c[1], c[0]);
  return a.second * b.second * (a.first == b.first ? 2 : 1);
}

Tree random_tree(int n, std::uint64_t seed) {
  if (n <= 2) return Tree::path(std::max(n, 1));
  std::mt19937_64 gen(seed);
  std::vector<int> seq(static_cast<std::size_t>(n - 2));
  for (int& x : seq) x = static_cast<int>(gen() % static_cast<std::uint64_t>(n));
  return tree_from_prufer(n, seq);
}

Vertex centroid(const Tree& t) {
  const int n = t.order();
  // subtree sizes with the tree rooted at 0
  std::vector<int> parent(static_cast<std::size_t>(n), -1), order{0}, size(static_cast<std::size_t>(n), 1);
  for (std::size_t h = 0; h < order.size(); ++h) {
    for (Vertex w : t.neighbors(order[h])) {
      if (w != parent[static_cast<std::size_t>(order[h])]) {
        parent[static_cast<std::size_t>(w)] = order[h];
        order.push_back(w);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (parent[static_cast<std::size_t>(*it)] >= 0) size[static_cast<std::size_t>(parent[static_cast<std::size_t>(*it)])] += size[static_cast<std::size_t>(*it)];
  }
  Vertex best = 0;
  int best_max = n + 1;
  for (Vertex v = 0; v < n; ++v) {
    int largest = n - size[static_cast<std::size_t>(v)];
    for (Vertex w : t.neighbors(v)) {
      if (w != parent[static_cast<std::size_t>(v)]) largest = std::max(largest, size[static_cast<std::size_t>(w)]);
    }
    if (largest < best_max) {
      best_max = largest;
      best = v;
    }
  }
  return best;
}

namespace {

// Count caps for m items over k classes: every class at most q+1 and at most
// r classes at q+1, where m = qk + r.
struct Caps {
  int q, r;
  Caps(int m, int k) : q(m / k), r(m % k) {}
  // Adding one to a class at `count` keeps the caps satisfiable.
  bool admits(int count, int full) const {
    if (count + 1 < q + 1) return true;
    if (count + 1 == q + 1) return r > 0 ? full < r : count + 1 <= q;
    return false;
  }
};

}  // namespace

std::optional<Labeling> backtrack_k_cordial(const Tree& t, int k, bool prune, BacktrackStats* stats) {
  const int n = t.order();
  std::vector<Vertex> order{centroid(t)};
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  seen[static_cast<std::size_t>(order[0])] = true;
  for (std::size_t h = 0; h < order.size(); ++h) {
    for (Vertex w : t.neighbors(order[h])) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        parent[static_cast<std::size_t>(w)] = order[h];
        order.push_back(w);
      }
    }
  }
  const Caps lcap(n, k), wcap(n - 1, k);
  std::vector<int> lc(static_cast<std::size_t>(k), 0), wc(static_cast<std::size_t>(k), 0);
  int lfull = 0, wfull = 0;  // classes at q+1
  Labeling f{k, std::vector<int>(static_cast<std::size_t>(n), 0), {}};
  std::uint64_t nodes = 0;

  auto go = [&](auto&& self, std::size_t i) -> bool {
    ++nodes;
    if (i == order.size()) return prune || verify_cordial(t, f).cordial;
    const Vertex v = order[i];
    const Vertex p = parent[static_cast<std::size_t>(v)];
    for (int a = 0; a < k; ++a) {
      const int w = p < 0 ? -1 : mod(a + f.values[static_cast<std::size_t>(p)], k);
      if (prune) {
        if (!lcap.admits(lc[static_cast<std::size_t>(a)], lfull)) continue;
        if (w >= 0 && !wcap.admits(wc[static_cast<std::size_t>(w)], wfull)) continue;
      }
      f.values[static_cast<std::size_t>(v)] = a;
      if (++lc[static_cast<std::size_t>(a)] == lcap.q + 1) ++lfull;
      if (w >= 0 && ++wc[static_cast<std::size_t>(w)] == wcap.q + 1) ++wfull;
      const bool found = self(self, i + 1);
      if (w >= 0 && wc[static_cast<std::size_t>(w)]-- == wcap.q + 1) --wfull;
      if (lc[static_cast<std::size_t>(a)]-- == lcap.q + 1) --lfull;
      if (found) return true;
    }
    return false;
  };
  const bool ok = go(go, 0);
  if (stats) stats->nodes = nodes;
  if (!ok) return std::nullopt;
  return f;
}

}  // namespace cordial
