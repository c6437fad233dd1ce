#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "cordial/catalog.hpp"
#include "cordial/oracle.hpp"
#include "cordial/splitter.hpp"

using namespace cordial;

namespace {

// "a-b c-d ..." with n = edges + 1.
Tree tree_of(const std::string& edges) {
  std::vector<std::pair<int, int>> pairs;
  std::istringstream is(edges);
  for (std::string tok; is >> tok;) {
    const auto dash = tok.find('-');
    pairs.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
  }
  return Tree::from_edge_list(static_cast<int>(pairs.size()) + 1, pairs);
}

// Center v = 0 with legs 0-1-4, 0-2-5, 0-3-6 and the path 7-8-0-9-10.
Tree three_legs() {
  return Tree::from_edge_list(11, {{0, 1}, {1, 4}, {0, 2}, {2, 5}, {0, 3}, {3, 6}, {7, 8}, {8, 0}, {0, 9}, {9, 10}});
}

// Structural checks shared by every split.
void check_split(const Tree& t, const SplitResult& s) {
  REQUIRE(s.t0.order() + s.pieces.order() == t.order());
  REQUIRE(static_cast<int>(s.attach.size()) == s.pieces.root_count());
  REQUIRE(static_cast<int>(s.t0_original.size()) == s.t0.order());
  REQUIRE(static_cast<int>(s.piece_original.size()) == s.pieces.order());
  std::vector<int> seen(static_cast<std::size_t>(t.order()), 0);
  for (Vertex v : s.t0_original) ++seen[static_cast<std::size_t>(v)];
  for (Vertex v : s.piece_original) ++seen[static_cast<std::size_t>(v)];
  for (int c : seen) REQUIRE(c == 1);
  REQUIRE(free_canonical_form(reassemble(s)) == free_canonical_form(t));
}

void check_case(const SplitResult& s, int target) {
  switch (s.case_tag) {
    case SplitCase::SixVertexTree:
    case SplitCase::FiveVertexTree:
      REQUIRE(s.pieces.root_count() == 1);
      REQUIRE(s.pieces.order() == target);
      break;
    case SplitCase::CatalogTree: {
      REQUIRE(s.shape.has_value());
      REQUIRE(s.pieces.root_count() == 1);
      REQUIRE(s.pieces.order() == target - 1);
      const auto family = target == 6 ? ShapeFamily::TPrime : ShapeFamily::TDoublePrime;
      REQUIRE(shape(*s.shape).family == family);
      REQUIRE(classify_piece(s.pieces, family) == s.shape);
      break;
    }
    case SplitCase::CatalogForest: {
      REQUIRE(s.shape.has_value());
      REQUIRE(s.pieces.root_count() == 2);
      REQUIRE(s.pieces.order() == target);
      const auto family = target == 6 ? ShapeFamily::Forest : ShapeFamily::ForestPrime;
      REQUIRE(classify_piece(s.pieces, family) == s.shape);
      break;
    }
  }
}

}  // namespace

TEST_CASE("split_at with three legs") {
  const Tree t = three_legs();
  const auto s = split_at(t, 0, {1, 2, 3});
  check_split(t, s);
  CHECK(s.pieces.order() == 6);
  CHECK(s.pieces.component(0).root_degree() == 3);
  CHECK(s.t0.order() == 5);
  CHECK(longest_path(s.t0).length() == 4);
  CHECK(s.t0_original[static_cast<std::size_t>(s.attach[0])] == 0);

  const auto two = split_at(t, 0, {1, 2});
  check_split(t, two);
  CHECK(two.pieces.order() == 4);
  CHECK(two.t0.order() == 7);

  const auto leaf = split_at(t, 1, {4});
  check_split(t, leaf);
  CHECK(leaf.pieces.order() == 1);
}

TEST_CASE("split_at rejects bad selections") {
  const Tree t = three_legs();
  auto kind_of = [&](Vertex v, std::vector<Vertex> b) {
    try {
      (void)split_at(t, v, b);
    } catch (const SplitError& e) {
      return e.kind();
    }
    FAIL("expected SplitError");
    return SplitError::Kind::SplitNotFound;
  };
  CHECK(kind_of(0, {}) == SplitError::Kind::InvalidBranchSelection);
  CHECK(kind_of(0, {4}) == SplitError::Kind::InvalidBranchSelection);
  CHECK(kind_of(0, {1, 1}) == SplitError::Kind::InvalidBranchSelection);
  CHECK(kind_of(11, {1}) == SplitError::Kind::InvalidBranchSelection);

  // Taking every branch leaves t0 as the split vertex alone.
  const auto all = split_at(t, 0, {1, 2, 3, 8, 9});
  check_split(t, all);
  CHECK(all.t0.order() == 1);
}

TEST_CASE("branch_size") {
  const Tree t = three_legs();
  CHECK(branch_size(t, 0, 1) == 2);
  CHECK(branch_size(t, 0, 8) == 2);
  CHECK(branch_size(t, 1, 0) == 9);
}

TEST_CASE("paths split off a rooted path") {
  const Tree p12 = Tree::path(12);
  const auto s = find_split6(p12);
  check_split(p12, s);
  CHECK(s.case_tag == SplitCase::SixVertexTree);
  CHECK(s.pieces.order() == 6);
  CHECK(s.pieces.component(0).root_degree() == 1);
  CHECK(s.t0.order() == 6);

  const Tree p11 = Tree::path(11);
  const auto s5 = find_split5(p11);
  check_split(p11, s5);
  CHECK(s5.case_tag == SplitCase::FiveVertexTree);
  CHECK(s5.pieces.order() == 5);
}

TEST_CASE("catalog splits on critical-pair instances") {
  // (4,5) critical pair: two legs of length 4 at one end of the path.
  const auto f = find_split6(tree_of("1-0 2-1 3-2 4-3 5-0 6-5 7-6 8-7 9-0 10-9 11-10"));
  CHECK(f.case_tag == SplitCase::CatalogForest);
  CHECK(f.shape == ShapeId::F);
  REQUIRE(f.critical.has_value());
  CHECK(f.critical->index == 4);

  const auto f2 = find_split6(tree_of("1-0 2-1 3-2 4-2 5-0 6-5 7-6 8-6 9-0 10-9 11-10"));
  CHECK(f2.case_tag == SplitCase::CatalogForest);
  CHECK(f2.shape == ShapeId::F2);
  CHECK(f2.critical->index == 3);

  const auto tpp = find_split5(tree_of("1-0 2-1 3-2 4-1 5-4 6-1 7-6 8-0 9-8 10-9"));
  CHECK(tpp.case_tag == SplitCase::CatalogTree);
  CHECK(tpp.shape == ShapeId::Tpp);
  CHECK(tpp.critical->index == 2);

  const auto tppp = find_split5(tree_of("1-0 2-1 3-2 4-2 5-2 6-1 7-6 8-0 9-8 10-9"));
  CHECK(tppp.shape == ShapeId::Tppp);
  CHECK(tppp.critical->index == 2);

  const auto fp = find_split5(tree_of("1-0 2-1 3-2 4-3 5-0 6-5 7-6 8-7 9-0 10-9"));
  CHECK(fp.case_tag == SplitCase::CatalogForest);
  CHECK(fp.shape == ShapeId::Fp);
  CHECK(fp.critical->index == 4);
}

TEST_CASE("trees with no split of the required kind") {
  // Two cherries at v2 plus a pendant 3-path: no 5-vertex piece, no T'' family
  // member and no F'. The search reports it instead of guessing.
  const Tree t = tree_of("1-0 2-1 3-2 4-2 5-1 6-5 7-5 8-0 9-8 10-9");
  try {
    (void)find_split5(t);
    FAIL("expected SplitNotFound");
  } catch (const SplitError& e) {
    CHECK(e.kind() == SplitError::Kind::SplitNotFound);
    CHECK(std::string(e.what()).find("\n1 0\n") != std::string::npos);
  }
  const auto cp = critical_pair(t, longest_path(t), 5);
  REQUIRE(cp.has_value());
  CHECK(cp->index == 2);
  CHECK_FALSE(find_exact_split(t, 5).has_value());
}

TEST_CASE("exhaustive split checks at 11 and 12 vertices") {
  // Counts of trees without any split of the three kinds (confirmed by an
  // independent brute force over every vertex, branch subset and root pair).
  for (int n : {11, 12}) {
    int missing = 0;
    int total = 0;
    const int target = n % 6 == 0 ? 6 : 5;
    for_each_free_tree(n, [&](const Tree& t) {
      ++total;
      try {
        const auto s = target == 6 ? find_split6(t) : find_split5(t);
        check_split(t, s);
        check_case(s, target);
        if (s.case_tag == SplitCase::CatalogTree || s.case_tag == SplitCase::CatalogForest) {
          REQUIRE_FALSE(find_exact_split(t, target).has_value());
        }
      } catch (const SplitError& e) {
        REQUIRE(e.kind() == SplitError::Kind::SplitNotFound);
        ++missing;
      }
    });
    CHECK(total == (n == 11 ? 235 : 551));
    CHECK(missing == (n == 11 ? 3 : 6));
  }
}

TEST_CASE("classify_piece") {
  // Root with legs of lengths 2 and 4.
  const RootedForest a({RootedTree({RootedTree::kRoot, RootedTree::kRoot, 0, 1, 3, 4})});
  CHECK(classify_piece(a, ShapeFamily::SixVertex) == ShapeId::A);
  // Root degree 4: two leaves and two legs of length 2.
  const RootedForest h({RootedTree({RootedTree::kRoot, RootedTree::kRoot, RootedTree::kRoot, RootedTree::kRoot, 0, 1})});
  CHECK(classify_piece(h, ShapeFamily::SixVertex) == ShapeId::H);
  const RootedForest p6({RootedTree({RootedTree::kRoot, 0, 1, 2, 3, 4})});
  CHECK_FALSE(classify_piece(p6, ShapeFamily::SixVertex).has_value());
  CHECK(catalog_collision().empty());
  for (const auto& s : all_shapes()) CHECK(classify_piece(s.forest, s.family) == s.id);
}
