#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "cordial/grace.hpp"
#include "cordial/oracle.hpp"

using namespace cordial;

namespace {

// The tree with `root` removed to the outside; others numbered in BFS order.
RootedTree rooted_at(const Tree& t, Vertex root) {
  std::vector<int> id(static_cast<std::size_t>(t.order()), -2);
  std::vector<int> parent;
  std::vector<Vertex> queue{root};
  id[static_cast<std::size_t>(root)] = RootedTree::kRoot;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Vertex w : t.neighbors(queue[i])) {
      if (id[static_cast<std::size_t>(w)] != -2) continue;
      id[static_cast<std::size_t>(w)] = static_cast<int>(parent.size());
      parent.push_back(id[static_cast<std::size_t>(queue[i])]);
      queue.push_back(w);
    }
  }
  return RootedTree(parent);
}

std::vector<int> rooted_weight_counts(const RootedTree& rt, const Labeling& f) {
  return weight_counts(RootedForest({rt}), f);
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Tree spider222() { return Tree::from_edge_list(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}}); }

}  // namespace

TEST_CASE("layout of P4 follows the spine") {
  const auto l = layout(Tree::path(4), true);
  CHECK(l.part_a == std::vector<Vertex>{0, 2});
  CHECK(l.part_b == std::vector<Vertex>{1, 3});
  const auto r = layout(Tree::path(4));
  CHECK(r.part_a == std::vector<Vertex>{3, 1});
  CHECK(r.part_b == std::vector<Vertex>{2, 0});
}

TEST_CASE("layout rejects non-caterpillars") {
  try {
    (void)layout(spider222());
    FAIL("expected GraceError");
  } catch (const GraceError& e) {
    CHECK(e.kind() == GraceErrorKind::NotACaterpillar);
  }
  CHECK_THROWS_AS((void)grace_label(spider222(), 6, 0), GraceError);
}

TEST_CASE("grace_label basics") {
  const auto p6 = grace_label(Tree::path(6), 6, 0);
  CHECK(sorted(p6.values) == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(verify_cordial(Tree::path(6), p6).cordial);

  const auto single = grace_label(Tree::from_edge_list(1, {}), 6, 4);
  CHECK(single.values == std::vector<int>{4});
}

TEST_CASE("layouts are non-crossing on all caterpillars up to 12") {
  for (int n = 2; n <= 12; ++n) {
    for_each_free_tree(n, [](const Tree& t) {
      if (!is_caterpillar(t)) return;
      for (bool reverse : {false, true}) {
        const auto l = layout(t, reverse);
        REQUIRE(static_cast<int>(l.part_a.size() + l.part_b.size()) == t.order());
        std::vector<int> pos(static_cast<std::size_t>(t.order()), -1);
        std::vector<int> side(static_cast<std::size_t>(t.order()), -1);
        for (std::size_t i = 0; i < l.part_a.size(); ++i) {
          pos[static_cast<std::size_t>(l.part_a[i])] = static_cast<int>(i);
          side[static_cast<std::size_t>(l.part_a[i])] = 0;
        }
        for (std::size_t i = 0; i < l.part_b.size(); ++i) {
          pos[static_cast<std::size_t>(l.part_b[i])] = static_cast<int>(i);
          side[static_cast<std::size_t>(l.part_b[i])] = 1;
        }
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : t.edges()) {
          REQUIRE(side[static_cast<std::size_t>(e.u)] != side[static_cast<std::size_t>(e.v)]);
          const Vertex a = side[static_cast<std::size_t>(e.u)] == 0 ? e.u : e.v;
          const Vertex b = a == e.u ? e.v : e.u;
          edges.emplace_back(pos[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(b)]);
        }
        for (const auto& [i, j] : edges) {
          for (const auto& [i2, j2] : edges) REQUIRE_FALSE((i < i2 && j > j2));
        }
      }
    });
  }
}

TEST_CASE("grace labels every caterpillar up to 12 cordially for k = 2..8") {
  int caterpillars = 0;
  for (int n = 1; n <= 12; ++n) {
    for_each_free_tree(n, [&](const Tree& t) {
      if (!is_caterpillar(t)) return;
      ++caterpillars;
      for (int k = 2; k <= 8; ++k) {
        for (bool reverse : {false, true}) {
          REQUIRE(verify_cordial(t, grace_label(t, k, 0, reverse)).cordial);
          REQUIRE(verify_cordial(t, grace_label(t, k, 3, reverse)).cordial);
        }
      }
    });
  }
  // Caterpillars on n vertices: 2^(n-4) + 2^((n-4)/2) for n >= 3.
  CHECK(caterpillars == 1 + 1 + 1 + 2 + 3 + 6 + 10 + 20 + 36 + 72 + 136 + 272);
}

TEST_CASE("rooted grace on the worked example") {
  // Root u4 with children u3 (three further vertices) and the leaf u8.
  const RootedTree rt({RootedTree::kRoot, RootedTree::kRoot, 0, 0, 0, 2});
  REQUIRE(rooted_grace_applicable(rt));
  const auto f = rooted_grace_label(rt, 6);
  CHECK(f.root_values == std::vector<int>{0});
  CHECK(sorted(f.values) == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(rooted_weight_counts(rt, f) == std::vector<int>{1, 1, 1, 1, 1, 1});
}

TEST_CASE("rooted grace on a path hanging next to its end") {
  // Root adjacent to the leaf end of P6 plus the leaf itself: P7 rooted at v1.
  const RootedTree rt = rooted_at(Tree::path(7), 1);
  REQUIRE(rooted_grace_applicable(rt));
  const auto f = rooted_grace_label(rt, 6);
  CHECK(rooted_weight_counts(rt, f) == std::vector<int>{1, 1, 1, 1, 1, 1});
  const auto g = rotate(f, 2);
  CHECK(rooted_weight_counts(rt, g) == std::vector<int>{1, 1, 1, 1, 1, 1});
}

TEST_CASE("rooted grace: every qualifying rooted six-vertex caterpillar") {
  int qualifying = 0;
  for_each_free_tree(7, [&](const Tree& t) {
    for (Vertex r = 0; r < t.order(); ++r) {
      const auto rt = rooted_at(t, r);
      if (!rooted_grace_applicable(rt)) continue;
      ++qualifying;
      const auto f = rooted_grace_label(rt, 6);
      REQUIRE(f.root_values == std::vector<int>{0});
      REQUIRE(sorted(f.values) == std::vector<int>{0, 1, 2, 3, 4, 5});
      REQUIRE(rooted_weight_counts(rt, f) == std::vector<int>{1, 1, 1, 1, 1, 1});
    }
  });
  CHECK(qualifying > 0);
}

TEST_CASE("rooted grace preconditions") {
  const RootedTree small({RootedTree::kRoot, 0});
  CHECK_THROWS_AS((void)rooted_grace_label(small, 6), GraceError);
  // Root in the middle of P7: not next to an end.
  const RootedTree middle = rooted_at(Tree::path(7), 3);
  CHECK_FALSE(rooted_grace_applicable(middle));
  try {
    (void)rooted_grace_label(middle, 6);
    FAIL("expected GraceError");
  } catch (const GraceError& e) {
    CHECK(e.kind() == GraceErrorKind::PreconditionViolated);
  }
}

TEST_CASE("grace_with_root_neighbor puts w on the pendant edge") {
  // Root above one end of P6.
  const RootedTree rt({RootedTree::kRoot, 0, 1, 2, 3, 4});
  for (int w = 0; w < 6; ++w) {
    const auto f = grace_with_root_neighbor(rt, 6, w);
    CHECK(f.root_values == std::vector<int>{0});
    CHECK(f.values[0] == w);
    CHECK(sorted(f.values) == std::vector<int>{0, 1, 2, 3, 4, 5});
    // Body weights are five consecutive residues; w is the one repeated or added.
    const auto counts = rooted_weight_counts(rt, f);
    CHECK(*std::max_element(counts.begin(), counts.end()) <= 2);
    CHECK(counts[static_cast<std::size_t>(w)] >= 1);
  }

  // Six-vertex caterpillar bodies, each w.
  for_each_free_tree(6, [](const Tree& body) {
    for (Vertex attach = 0; attach < body.order(); ++attach) {
      std::vector<std::pair<int, int>> pairs;
      for (const auto& e : body.edges()) pairs.emplace_back(e.u, e.v);
      pairs.emplace_back(attach, 6);
      const auto rt = rooted_at(Tree::from_edge_list(7, pairs), 6);
      for (int w = 0; w < 6; ++w) {
        const auto f = grace_with_root_neighbor(rt, 6, w);
        REQUIRE(f.values[0] == w);
        const auto counts = rooted_weight_counts(rt, f);
        REQUIRE(counts[static_cast<std::size_t>(w)] >= 1);
      }
    }
  });

  const RootedTree wide({RootedTree::kRoot, RootedTree::kRoot});
  CHECK_THROWS_AS((void)grace_with_root_neighbor(wide, 6, 0), GraceError);
  // Body is the spider(2,2,2).
  const RootedTree spider({RootedTree::kRoot, 0, 0, 0, 1, 2, 3});
  CHECK_THROWS_AS((void)grace_with_root_neighbor(spider, 6, 0), GraceError);
}
