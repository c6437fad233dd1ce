#include "cordial/builder.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "cordial/grace.hpp"
#include "cordial/oracle.hpp"

namespace cordial {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Base: return "base";
    case Strategy::LeafExtend: return "leaf-extend";
    case Strategy::Split6: return "split6";
    case Strategy::Split5: return "split5";
    case Strategy::Fallback: return "fallback";
  }
  return "unknown";
}

int BuildTrace::fallback_count() const {
  return static_cast<int>(
      std::count_if(steps.begin(), steps.end(), [](const BuildStep& s) { return s.strategy == Strategy::Fallback; }));
}

namespace {

constexpr int K = kTableModulus;

struct Induced {
  Tree tree = Tree::path(1);
  std::vector<Vertex> original;  // new id -> old id
};

Induced induced(const Tree& t, const std::vector<bool>& keep) {
  Induced out;
  std::vector<int> id(static_cast<std::size_t>(t.order()), -1);
  for (Vertex v = 0; v < t.order(); ++v) {
    if (keep[static_cast<std::size_t>(v)]) {
      id[static_cast<std::size_t>(v)] = static_cast<int>(out.original.size());
      out.original.push_back(v);
    }
  }
  std::vector<std::pair<int, int>> e;
  for (const auto& edge : t.edges()) {
    const int a = id[static_cast<std::size_t>(edge.u)], b = id[static_cast<std::size_t>(edge.v)];
    if (a >= 0 && b >= 0) e.emplace_back(a, b);
  }
  out.tree = Tree::from_edge_list(static_cast<int>(out.original.size()), e);
  return out;
}

// Smallest residue whose count sits strictly below the maximum.
int minority_weight(const Tree& t, const Labeling& f) {
  const auto r = verify_cordial(t, f);
  return r.minority_weights.empty() ? 0 : r.minority_weights.front();
}

int majority_label(const Labeling& f) {
  const auto c = label_counts(f);
  const auto lo = *std::min_element(c.begin(), c.end());
  for (int a = 0; a < f.k; ++a) {
    if (c[static_cast<std::size_t>(a)] > lo) return a;
  }
  return 0;
}

std::vector<int> root_labels(const SplitResult& s, const Labeling& f0) {
  std::vector<int> out;
  for (Vertex v : s.attach) out.push_back(f0.values[static_cast<std::size_t>(v)]);
  return out;
}

// The labeling the construction prescribes for the piece, if it applies.
std::optional<Labeling> standard_piece_labeling(const SplitResult& s, const Labeling& f0, std::string& route) {
  const auto& tables = Tables::builtin();
  const RootedForest& piece = s.pieces;
  const auto roots = root_labels(s, f0);

  auto from_table = [&](ShapeId id, const Requirement& req) -> std::optional<Labeling> {
    const auto r = tables.lookup(id, req);
    if (!r) return std::nullopt;
    route = "table " + format_entry(r->source) + (r->negated ? " negated" : "") + " rotated " + std::to_string(r->rotation);
    return apply_lookup(*r, piece);
  };

  switch (s.case_tag) {
    case SplitCase::SixVertexTree:
    case SplitCase::FiveVertexTree: {
      const int w = minority_weight(s.t0, f0);
      const int c = roots[0];
      const auto req = Requirement::balances(w, roots);
      const RootedTree& rt = piece.component(0);
      if (rt.root_degree() == 1) {
        // neighbor label w - c, so the pendant edge carries w
        for (bool rev : {false, true}) {
          try {
            auto g = rotate(grace_with_root_neighbor(rt, K, mod(w - 2 * c, K), rev), c);
            if (satisfies(piece, g, req)) {
              route = "grace with root neighbor";
              return g;
            }
          } catch (const GraceError&) {
          }
        }
      }
      if (rooted_grace_applicable(rt)) {
        const Labeling g0 = rooted_grace_sequence(rt, K);
        for (bool neg : {false, true}) {
          auto g = rotate(neg ? negate(g0) : g0, c);
          if (satisfies(piece, g, req)) {
            route = neg ? "rooted grace negated" : "rooted grace";
            return g;
          }
        }
      }
      if (s.shape) return from_table(*s.shape, req);
      return std::nullopt;
    }
    case SplitCase::CatalogTree:
      return from_table(*s.shape, Requirement::minority_label(majority_label(f0), roots));
    case SplitCase::CatalogForest:
      return from_table(*s.shape, Requirement::balances(minority_weight(s.t0, f0), roots));
  }
  return std::nullopt;
}

PieceConstraint constraint_for(const SplitResult& s, const Labeling& f0) {
  return {root_labels(s, f0), label_counts(f0), weight_counts(s.t0, f0)};
}

// Pastes and maps back to the ids of the tree that was split.
std::optional<Labeling> assemble(const Tree& t, const SplitResult& s, const Labeling& f0, const Labeling& fp) {
  const Pasted p = paste(s.t0, f0, s.pieces, fp, s.attach);
  Labeling f{K, std::vector<int>(static_cast<std::size_t>(t.order()), 0), {}};
  const int m = s.t0.order();
  for (Vertex v = 0; v < p.tree.order(); ++v) {
    const Vertex orig = v < m ? s.t0_original[static_cast<std::size_t>(v)] : s.piece_original[static_cast<std::size_t>(v - m)];
    f.values[static_cast<std::size_t>(orig)] = p.labeling.values[static_cast<std::size_t>(v)];
  }
  if (!verify_cordial(t, f).cordial) return std::nullopt;
  return f;
}

// Rotations and negations of a labeling, identity first.
std::vector<Labeling> transforms(const Labeling& f) {
  std::vector<Labeling> out;
  for (bool neg : {false, true}) {
    for (int a = 0; a < K; ++a) out.push_back(rotate(neg ? negate(f) : f, a));
  }
  return out;
}

class Builder {
 public:
  explicit Builder(BuildTrace& trace) : trace_(trace) {}

  Labeling build(const Tree& t) {
    const std::size_t idx = trace_.steps.size();
    trace_.steps.push_back({t.order(), t.order() % K, Strategy::Base, {}, {}, {}, {}, {}, false});
    Labeling f = dispatch(t, idx);
    step(idx).verified = verify_cordial(t, f).cordial;
    if (!step(idx).verified) {
      // cannot happen unless a verified stage was skipped
      f = *backtrack_k_cordial(t, K);
      mark_fallback(idx, t, "final verification failed");
      step(idx).verified = true;
    }
    return f;
  }

 private:
  BuildStep& step(std::size_t i) { return trace_.steps[i]; }

  void mark_fallback(std::size_t idx, const Tree& t, const std::string& why) {
    step(idx).strategy = Strategy::Fallback;
    if (!step(idx).fallback.empty()) step(idx).fallback += "; ";
    step(idx).fallback += why;
    step(idx).instance = serialize_edges(t);
  }

  Labeling dispatch(const Tree& t, std::size_t idx) {
    const int n = t.order();
    if (n <= K) {
      step(idx).route = "grace";
      return grace_label(t, K, 0);
    }
    const int r = n % K;
    if (r >= 1 && r <= 4) return leaf_extend(t, idx, r);
    return split(t, idx, r == 0 ? 6 : 5);
  }

  Labeling leaf_extend(const Tree& t, std::size_t idx, int count) {
    step(idx).strategy = Strategy::LeafExtend;
    const auto removed = leaf_strip_order(t, count);
    std::vector<bool> keep(static_cast<std::size_t>(t.order()), true);
    for (Vertex v : removed) keep[static_cast<std::size_t>(v)] = false;
    const Induced core = induced(t, keep);
    Labeling inner = build(core.tree);

    // grow back one leaf at a time, most recently removed first
    std::vector<Vertex> present = core.original;
    std::vector<int> labels = inner.values;
    for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
      std::vector<bool> now(static_cast<std::size_t>(t.order()), false);
      for (Vertex v : present) now[static_cast<std::size_t>(v)] = true;
      const Induced cur = induced(t, now);
      Labeling fc{K, labels, {}};
      Vertex anchor = -1;
      for (Vertex w : t.neighbors(*it)) {
        if (now[static_cast<std::size_t>(w)]) anchor = w;
      }
      const auto pos = std::find(cur.original.begin(), cur.original.end(), anchor) - cur.original.begin();
      const int x = attach_leaf_balanced(cur.tree, fc, static_cast<Vertex>(pos));
      // keep `present` sorted so it matches the induced ids
      const auto at = std::lower_bound(present.begin(), present.end(), *it);
      labels.insert(labels.begin() + (at - present.begin()), x);
      present.insert(at, *it);
    }
    step(idx).route = "attach " + std::to_string(count) + " leaves";
    return Labeling{K, labels, {}};
  }

  Labeling split(const Tree& t, std::size_t idx, int target) {
    step(idx).strategy = target == 6 ? Strategy::Split6 : Strategy::Split5;
    std::optional<SplitResult> s;
    try {
      s = target == 6 ? find_split6(t) : find_split5(t);
    } catch (const SplitError& e) {
      mark_fallback(idx, t, "no split of the required kind");
    }
    if (s) {
      step(idx).split_case = to_string(s->case_tag);
      if (s->shape) step(idx).shape = shape(*s->shape).token;
      const Labeling f0 = build(s->t0);
      std::string route;
      if (auto fp = standard_piece_labeling(*s, f0, route)) {
        if (auto f = assemble(t, *s, f0, *fp)) {
          step(idx).route = route;
          return *f;
        }
      }
      mark_fallback(idx, t, "standard piece labeling unavailable");
      if (auto f = search_piece(t, *s, f0, idx)) return *f;
    }
    // peel the last `target` leaves instead and search that forest
    {
      const auto removed = leaf_strip_order(t, target);
      std::vector<bool> in_piece(static_cast<std::size_t>(t.order()), false);
      for (Vertex v : removed) in_piece[static_cast<std::size_t>(v)] = true;
      std::vector<BranchSelection> sel;
      for (Vertex v = 0; v < t.order(); ++v) {
        if (in_piece[static_cast<std::size_t>(v)]) continue;
        BranchSelection b{v, {}};
        for (Vertex w : t.neighbors(v)) {
          if (in_piece[static_cast<std::size_t>(w)]) b.branches.push_back(w);
        }
        if (!b.branches.empty()) sel.push_back(std::move(b));
      }
      const SplitResult peel = split_at(t, sel);
      const Labeling f0 = build(peel.t0);
      mark_fallback(idx, t, "peel split");
      if (auto f = search_piece(t, peel, f0, idx)) return *f;
    }
    mark_fallback(idx, t, "whole-tree search");
    step(idx).route = "whole-tree search";
    return *backtrack_k_cordial(t, K);
  }

  std::optional<Labeling> search_piece(const Tree& t, const SplitResult& s, const Labeling& f0, std::size_t idx) {
    int variant = 0;
    for (const Labeling& g0 : transforms(f0)) {
      try {
        const Labeling fp = fallback_search(s.pieces, constraint_for(s, g0));
        if (auto f = assemble(t, s, g0, fp)) {
          step(idx).route = variant == 0 ? "piece search" : "piece search, rest transformed";
          return f;
        }
      } catch (const BuildError&) {
      }
      ++variant;
    }
    return std::nullopt;
  }

  BuildTrace& trace_;
};

// Fixed-total balance: final counts are q or q+1 with exactly r at q+1.
struct Caps {
  int q, r;
  Caps(int total, int k) : q(total / k), r(total % k) {}
  bool fits(const std::vector<int>& c) const {
    int full = 0;
    for (int x : c) {
      if (x > q + 1 || (x == q + 1 && r == 0)) return false;
      full += x == q + 1 ? 1 : 0;
    }
    return full <= r;
  }
};

template <class Accept, class Prune>
std::optional<Labeling> search(const RootedForest& piece, const std::vector<int>& roots, int k, Accept accept,
                               Prune prune) {
  Labeling f{k, std::vector<int>(static_cast<std::size_t>(piece.order()), 0), roots};
  std::vector<std::pair<RootedForest::Endpoint, int>> edges = piece.edges();
  auto go = [&](auto&& self, int v) -> bool {
    if (v == piece.order()) return accept(f);
    const auto p = edges[static_cast<std::size_t>(v)].first;
    for (int a = 0; a < k; ++a) {
      f.values[static_cast<std::size_t>(v)] = a;
      const int pl = p.is_root ? f.root_values[static_cast<std::size_t>(p.index)] : f.values[static_cast<std::size_t>(p.index)];
      if (prune(a, mod(a + pl, k), +1)) {
        const bool ok = self(self, v + 1);
        prune(a, mod(a + pl, k), -1);
        if (ok) return true;
      } else {
        prune(a, mod(a + pl, k), -1);
      }
    }
    return false;
  };
  if (go(go, 0)) return f;
  return std::nullopt;
}

}  // namespace

std::pair<Labeling, BuildTrace> label_six_cordial(const Tree& t) {
  BuildTrace trace;
  Builder b(trace);
  Labeling f = b.build(t);
  return {std::move(f), std::move(trace)};
}

int attach_leaf_balanced(const Tree& t, const Labeling& f, Vertex attach_at) {
  auto lc = label_counts(f);
  auto wc = weight_counts(t, f);
  const int anchor = f.values[static_cast<std::size_t>(attach_at)];
  for (int x = 0; x < f.k; ++x) {
    const int w = mod(x + anchor, f.k);
    ++lc[static_cast<std::size_t>(x)];
    ++wc[static_cast<std::size_t>(w)];
    const bool ok = balanced(lc) && balanced(wc);
    --lc[static_cast<std::size_t>(x)];
    --wc[static_cast<std::size_t>(w)];
    if (ok) return x;
  }
  throw BuildError(BuildError::Kind::NoBalancedLabel,
                   "no balanced label for a leaf at vertex " + std::to_string(attach_at) + " of:\n" + serialize_edges(t));
}

std::vector<Vertex> leaf_strip_order(const Tree& t, int count) {
  std::vector<bool> keep(static_cast<std::size_t>(t.order()), true);
  std::vector<Vertex> removed;
  for (int i = 0; i < count; ++i) {
    const Induced cur = induced(t, keep);
    const auto c = center(cur.tree);
    auto d = cur.tree.distances_from(c.front());
    if (c.size() == 2) {
      const auto d2 = cur.tree.distances_from(c.back());
      for (std::size_t v = 0; v < d.size(); ++v) d[v] = std::min(d[v], d2[v]);
    }
    Vertex best = -1;
    for (Vertex v = 0; v < cur.tree.order(); ++v) {
      if (cur.tree.order() > 1 && !cur.tree.is_leaf(v)) continue;
      if (best < 0 || d[static_cast<std::size_t>(v)] >= d[static_cast<std::size_t>(best)]) best = v;
    }
    const Vertex orig = cur.original[static_cast<std::size_t>(best)];
    keep[static_cast<std::size_t>(orig)] = false;
    removed.push_back(orig);
  }
  return removed;
}

Pasted paste(const Tree& t0, const Labeling& f0, const RootedForest& pieces, const Labeling& fp,
             const std::vector<Vertex>& attach) {
  if (static_cast<int>(attach.size()) != pieces.root_count() || fp.root_values.size() != attach.size()) {
    throw BuildError(BuildError::Kind::RootLabelMismatch, "one attachment vertex and root label per piece root");
  }
  for (std::size_t i = 0; i < attach.size(); ++i) {
    const int expected = f0.values[static_cast<std::size_t>(attach[i])];
    if (fp.root_values[i] != expected) {
      throw BuildError(BuildError::Kind::RootLabelMismatch,
                       "root " + std::to_string(i) + " labeled " + std::to_string(fp.root_values[i]) +
                           " but its vertex carries " + std::to_string(expected));
    }
  }
  const int m = t0.order();
  std::vector<std::pair<int, int>> e;
  for (const auto& edge : t0.edges()) e.emplace_back(edge.u, edge.v);
  for (const auto& [p, v] : pieces.edges()) e.emplace_back(p.is_root ? attach[static_cast<std::size_t>(p.index)] : m + p.index, m + v);
  Labeling f{f0.k, f0.values, {}};
  f.values.insert(f.values.end(), fp.values.begin(), fp.values.end());
  return {Tree::from_edge_list(m + pieces.order(), e), std::move(f)};
}

Labeling fallback_search(const RootedForest& piece, const PieceConstraint& c, int k) {
  const int label_total = std::accumulate(c.base_label_counts.begin(), c.base_label_counts.end(), 0) + piece.order();
  const int weight_total = std::accumulate(c.base_weight_counts.begin(), c.base_weight_counts.end(), 0) + piece.order();
  const Caps lcap(label_total, k), wcap(weight_total, k);
  std::vector<int> lc = c.base_label_counts, wc = c.base_weight_counts;
  lc.resize(static_cast<std::size_t>(k), 0);
  wc.resize(static_cast<std::size_t>(k), 0);
  auto prune = [&](int a, int w, int delta) {
    lc[static_cast<std::size_t>(a)] += delta;
    wc[static_cast<std::size_t>(w)] += delta;
    return delta < 0 || (lc[static_cast<std::size_t>(a)] <= lcap.q + (lcap.r > 0 ? 1 : 0) &&
                         wc[static_cast<std::size_t>(w)] <= wcap.q + (wcap.r > 0 ? 1 : 0));
  };
  auto accept = [&](const Labeling&) { return lcap.fits(lc) && wcap.fits(wc); };
  if (auto f = search(piece, c.roots, k, accept, prune)) return *f;
  throw BuildError(BuildError::Kind::Unsatisfiable, "no labeling of the piece balances the rest of the tree");
}

Labeling fallback_search(const RootedForest& piece, const Requirement& req, int k) {
  auto prune = [](int, int, int) { return true; };
  auto accept = [&](const Labeling& f) { return satisfies(piece, f, req); };
  const auto roots = req.roots.empty() ? std::vector<int>(static_cast<std::size_t>(piece.root_count()), 0) : req.roots;
  if (auto f = search(piece, roots, k, accept, prune)) return *f;
  throw BuildError(BuildError::Kind::Unsatisfiable, "no labeling of the piece meets the requirement");
}

}  // namespace cordial
