#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "cordial/builder.hpp"
#include "cordial/catalog.hpp"
#include "cordial/grace.hpp"
#include "cordial/oracle.hpp"

using namespace cordial;

namespace {

bool has_strategy(const BuildTrace& tr, Strategy s) {
  return std::any_of(tr.steps.begin(), tr.steps.end(), [&](const BuildStep& st) { return st.strategy == s; });
}

// Tree minus the listed vertices (which must leave it connected), with the
// old -> new id map.
std::pair<Tree, std::vector<int>> without(const Tree& t, const std::vector<Vertex>& gone) {
  std::vector<int> id(static_cast<std::size_t>(t.order()), -1);
  int next = 0;
  for (Vertex v = 0; v < t.order(); ++v) {
    if (std::find(gone.begin(), gone.end(), v) == gone.end()) id[static_cast<std::size_t>(v)] = next++;
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : t.edges()) {
    const int a = id[static_cast<std::size_t>(e.u)];
    const int b = id[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) pairs.emplace_back(a, b);
  }
  return {Tree::from_edge_list(next, pairs), id};
}

}  // namespace

TEST_CASE("small trees are labeled directly") {
  for (int n = 1; n <= 6; ++n) {
    for_each_free_tree(n, [](const Tree& t) {
      const auto [f, tr] = label_six_cordial(t);
      REQUIRE(verify_cordial(t, f, 6).cordial);
      REQUIRE(tr.steps.size() == 1);
      REQUIRE(tr.steps[0].strategy == Strategy::Base);
      REQUIRE(tr.steps[0].verified);
    });
  }
}

TEST_CASE("P12 goes through a six-vertex split") {
  const Tree p12 = Tree::path(12);
  const auto [f, tr] = label_six_cordial(p12);
  CHECK(verify_cordial(p12, f).cordial);
  REQUIRE_FALSE(tr.steps.empty());
  CHECK(tr.steps.front().strategy == Strategy::Split6);
  CHECK(tr.steps.front().split_case == to_string(SplitCase::SixVertexTree));
  CHECK(tr.fallback_count() == 0);
}

TEST_CASE("every tree on 10 vertices") {
  int count = 0;
  for_each_free_tree(10, [&](const Tree& t) {
    ++count;
    const auto [f, tr] = label_six_cordial(t);
    REQUIRE(verify_cordial(t, f).cordial);
    REQUIRE(has_strategy(tr, Strategy::LeafExtend));
    for (const auto& st : tr.steps) REQUIRE(st.verified);
  });
  CHECK(count == 106);
}

TEST_CASE("soundness on all trees up to 14") {
  for (int n = 1; n <= 14; ++n) {
    for_each_free_tree(n, [](const Tree& t) {
      const auto [f, tr] = label_six_cordial(t);
      REQUIRE(verify_cordial(t, f, 6).cordial);
      for (const auto& st : tr.steps) {
        REQUIRE(st.verified);
        REQUIRE(st.residue == st.size % 6);
        if (st.strategy == Strategy::Fallback) REQUIRE_FALSE(st.instance.empty());
      }
    });
  }
}

TEST_CASE("soundness on seeded random trees") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 1 + static_cast<int>((seed * 37) % 200);
    const Tree t = random_tree(n, seed);
    const auto [f, tr] = label_six_cordial(t);
    REQUIRE(verify_cordial(t, f, 6).cordial);
  }
}

TEST_CASE("determinism") {
  const Tree t = random_tree(97, 4);
  const auto [f1, tr1] = label_six_cordial(t);
  const auto [f2, tr2] = label_six_cordial(t);
  CHECK(f1 == f2);
  REQUIRE(tr1.steps.size() == tr2.steps.size());
  for (std::size_t i = 0; i < tr1.steps.size(); ++i) {
    CHECK(tr1.steps[i].strategy == tr2.steps[i].strategy);
    CHECK(tr1.steps[i].route == tr2.steps[i].route);
    CHECK(tr1.steps[i].shape == tr2.steps[i].shape);
  }
}

TEST_CASE("attach_leaf_balanced") {
  // j = 0: P6 uses every label once, so the smallest label works.
  const Tree p6 = Tree::path(6);
  const auto f6 = grace_label(p6, 6, 0);
  const int x = attach_leaf_balanced(p6, f6, 5);
  const Tree p7 = Tree::path(7);
  Labeling f7 = f6;
  f7.values.push_back(x);
  CHECK(verify_cordial(p7, f7).cordial);

  // Corrupted counts: nothing fits.
  const Tree star = Tree::star(3);
  CHECK_THROWS_AS((void)attach_leaf_balanced(star, Labeling{6, {0, 0, 0, 0}, {}}, 0), BuildError);
}

TEST_CASE("leaf strip and re-attach stays cordial at every size") {
  // Strip down to a multiple of six, as the builder does for n = 1..4 mod 6.
  for (int n : {7, 8, 9, 10, 13, 14}) {
    for_each_free_tree(n, [&](const Tree& t) {
      const int r = n % 6;
      const auto order = leaf_strip_order(t, r);
      REQUIRE(static_cast<int>(order.size()) == r);
      std::vector<Vertex> gone(order.begin(), order.end());
      auto [base, id] = without(t, gone);
      auto [f, tr] = label_six_cordial(base);
      REQUIRE(verify_cordial(base, f).cordial);
      // Add the leaves back in reverse order.
      for (std::size_t i = order.size(); i-- > 0;) {
        gone.pop_back();
        const Vertex leaf = order[i];
        Vertex anchor = -1;
        for (Vertex w : t.neighbors(leaf)) {
          if (std::find(gone.begin(), gone.end(), w) == gone.end()) anchor = w;
        }
        REQUIRE(anchor >= 0);
        const int label = attach_leaf_balanced(base, f, id[static_cast<std::size_t>(anchor)]);
        auto [bigger, id2] = without(t, gone);
        Labeling g{6, std::vector<int>(static_cast<std::size_t>(bigger.order()), -1), {}};
        for (Vertex v = 0; v < t.order(); ++v) {
          if (id[static_cast<std::size_t>(v)] >= 0) {
            g.values[static_cast<std::size_t>(id2[static_cast<std::size_t>(v)])] = f.values[static_cast<std::size_t>(id[static_cast<std::size_t>(v)])];
          }
        }
        g.values[static_cast<std::size_t>(id2[static_cast<std::size_t>(leaf)])] = label;
        REQUIRE(verify_cordial(bigger, g).cordial);
        base = bigger;
        id = id2;
        f = g;
      }
    });
  }
}

TEST_CASE("paste, case (i): six-vertex piece carrying the missing weight twice") {
  const Tree t0 = Tree::path(6);
  const auto f0 = grace_label(t0, 6, 0);
  const auto r0 = verify_cordial(t0, f0);
  const int w = r0.minority_weights.front();
  REQUIRE(r0.weight_counts[static_cast<std::size_t>(w)] == 0);

  const Vertex v = 2;
  const auto& d = shape(ShapeId::D);
  const auto hit = Tables::builtin().lookup(ShapeId::D, Requirement::majority(w, {f0.values[v]}));
  REQUIRE(hit.has_value());
  const auto fp = apply_lookup(*hit, d.forest);
  const auto pasted = paste(t0, f0, d.forest, fp, {v});
  CHECK(pasted.tree.order() == 12);
  CHECK(verify_cordial(pasted.tree, pasted.labeling).cordial);
}

TEST_CASE("paste, case (ii): five-vertex piece avoiding the majority label") {
  const Tree t0 = Tree::path(7);
  const auto f0 = grace_label(t0, 6, 0);
  const auto r0 = verify_cordial(t0, f0);
  REQUIRE(r0.majority_labels.size() == 1);
  const int l = r0.majority_labels.front();
  const Vertex v = 3;
  const auto& tp = shape(ShapeId::Tp);
  const auto hit = Tables::builtin().lookup(ShapeId::Tp, Requirement::minority_label(l, {f0.values[v]}));
  REQUIRE(hit.has_value());
  const auto fp = apply_lookup(*hit, tp.forest);
  const auto pasted = paste(t0, f0, tp.forest, fp, {v});
  CHECK(pasted.tree.order() == 12);
  CHECK(verify_cordial(pasted.tree, pasted.labeling).cordial);
}

TEST_CASE("paste rejects a root label that differs from its vertex") {
  const Tree t0 = Tree::path(6);
  const auto f0 = grace_label(t0, 6, 0);
  const RootedForest piece({RootedTree({RootedTree::kRoot})});
  const Labeling fp{6, {1}, {mod(f0.values[0] + 1, 6)}};
  try {
    (void)paste(t0, f0, piece, fp, {0});
    FAIL("expected BuildError");
  } catch (const BuildError& e) {
    CHECK(e.kind() == BuildError::Kind::RootLabelMismatch);
  }
}

TEST_CASE("fallback_search") {
  // Shape a, root 0, weight 2 twice.
  const auto& a = shape(ShapeId::A);
  const auto f = fallback_search(a.forest, Requirement::majority(2));
  CHECK(satisfies(a.forest, f, Requirement::majority(2)));

  // Root above the centre of a spider with three legs of length 2: the whole
  // piece is not a caterpillar, search still balances it.
  const RootedForest spider({RootedTree({RootedTree::kRoot, 0, 1, 1, 2, 3})});
  CHECK_FALSE(is_caterpillar(spider.component(0).with_root()));
  for (int w = 0; w < 6; ++w) {
    const auto g = fallback_search(spider, Requirement::balances(w));
    CHECK(satisfies(spider, g, Requirement::balances(w)));
  }

  // Six edges cannot carry seven distinct weights; here the rest of the tree
  // already holds five copies of label 0 and nothing else.
  PieceConstraint impossible{{0}, {5, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}};
  try {
    (void)fallback_search(a.forest, impossible);
    FAIL("expected BuildError");
  } catch (const BuildError& e) {
    CHECK(e.kind() == BuildError::Kind::Unsatisfiable);
  }
}

TEST_CASE("fallback steps are recorded with the instance") {
  // The first tree at 12 vertices whose piece has no table route.
  bool seen = false;
  for_each_free_tree(12, [&](const Tree& t) {
    if (seen) return;
    const auto [f, tr] = label_six_cordial(t);
    for (const auto& st : tr.steps) {
      if (st.strategy != Strategy::Fallback) continue;
      seen = true;
      CHECK_FALSE(st.fallback.empty());
      CHECK_FALSE(st.instance.empty());
      CHECK(st.verified);
    }
  });
  CHECK(seen);
}
