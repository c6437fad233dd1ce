#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cordial/builder.hpp"
#include "cordial/oracle.hpp"
#include "cordial/scan.hpp"

using namespace cordial;
namespace fs = std::filesystem;

namespace {

const std::vector<std::uint64_t> kTreeCounts = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551};

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

fs::path temp_file(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("cordial-test-" + name);
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_counts(const ScanReport& a, const ScanReport& b) {
  if (a.rows.size() != b.rows.size() || a.unsat.size() != b.unsat.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (x.n != y.n || x.trees != y.trees || x.cordial != y.cordial || x.unsat != y.unsat ||
        x.fallback_steps != y.fallback_steps || x.total_steps != y.total_steps)
      return false;
  }
  for (std::size_t i = 0; i < a.unsat.size(); ++i) {
    if (a.unsat[i].edges != b.unsat[i].edges || a.unsat[i].index != b.unsat[i].index) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("free tree counts up to 12") {
  for (int n = 1; n <= 12; ++n) {
    std::uint64_t count = 0;
    std::set<std::string> forms;
    for_each_free_tree(n, [&](const Tree& t) {
      ++count;
      REQUIRE(t.order() == n);
      forms.insert(free_canonical_form(t));
    });
    CHECK(count == kTreeCounts[static_cast<std::size_t>(n - 1)]);
    CHECK(forms.size() == count);
  }
}

TEST_CASE("independent counts agree with the enumerator") {
  for (int n = 1; n <= 8; ++n) CHECK(count_free_trees_by_prufer(n) == kTreeCounts[static_cast<std::size_t>(n - 1)]);
  for (int n = 1; n <= 12; ++n) {
    CHECK(count_free_trees_by_leaf_extension(n) == kTreeCounts[static_cast<std::size_t>(n - 1)]);
  }
}

TEST_CASE("orbit sizes add up to the number of labeled trees") {
  // Each free tree accounts for n!/|Aut| labeled trees.
  for (int n = 2; n <= 12; ++n) {
    std::uint64_t total = 0;
    for_each_free_tree(n, [&](const Tree& t) {
      const auto aut = automorphism_count(t);
      REQUIRE(factorial(n) % aut == 0);
      total += factorial(n) / aut;
    });
    CHECK(total == ipow(static_cast<std::uint64_t>(n), n - 2));
  }
  CHECK(automorphism_count(Tree::star(5)) == 120);
  CHECK(automorphism_count(Tree::path(5)) == 2);
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(for_each_free_tree(19, [](const Tree&) {}), CapExceeded);
  CHECK_THROWS_AS((void)enumerate_free_trees(9, 8), CapExceeded);
  CHECK(enumerate_free_trees(9, 9).size() == 47);
}

TEST_CASE("prufer decoding") {
  const Tree t = tree_from_prufer(4, {3, 3});
  CHECK(t.degree(3) == 3);
  const Tree p = tree_from_prufer(4, {1, 2});
  CHECK(longest_path(p).length() == 3);
  CHECK(tree_from_prufer(2, {}).order() == 2);
}

TEST_CASE("random_tree") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Tree t = random_tree(2, seed);
    CHECK(t.order() == 2);
    CHECK(t.edges().size() == 1);
  }
  CHECK(compact_edges(random_tree(9, 2024)) == "0-1 2-4 3-5 5-7 7-1 1-6 6-4 4-8");
  CHECK(compact_edges(random_tree(50, 11)) == compact_edges(random_tree(50, 11)));

  // Uniform over labeled trees: 12 labeled paths and 4 labeled stars on four vertices.
  int paths = 0;
  int stars = 0;
  for (std::uint64_t seed = 0; seed < 100000; ++seed) {
    const Tree t = random_tree(4, seed);
    (longest_path(t).length() == 3 ? paths : stars)++;
  }
  const double ratio = static_cast<double>(paths) / stars;
  CHECK(ratio > 2.85);
  CHECK(ratio < 3.15);
}

TEST_CASE("backtracking finds labelings where they exist") {
  const Tree k2 = Tree::path(2);
  const auto f = backtrack_k_cordial(k2, 2);
  REQUIRE(f.has_value());
  CHECK(verify_cordial(k2, *f).cordial);

  for (int n = 1; n <= 10; ++n) {
    for_each_free_tree(n, [](const Tree& t) {
      for (int k = 2; k <= 5; ++k) {
        const auto g = backtrack_k_cordial(t, k);
        REQUIRE(g.has_value());
        REQUIRE(verify_cordial(t, *g, k).cordial);
      }
    });
  }
  for (int n = 1; n <= 12; ++n) {
    for_each_free_tree(n, [](const Tree& t) {
      const auto g = backtrack_k_cordial(t, 6);
      REQUIRE(g.has_value());
      REQUIRE(verify_cordial(t, *g, 6).cordial);
    });
  }
}

TEST_CASE("pruning does not change verdicts") {
  for (int n = 1; n <= 8; ++n) {
    for_each_free_tree(n, [](const Tree& t) {
      for (int k = 2; k <= 6; ++k) {
        BacktrackStats with;
        BacktrackStats without;
        const auto a = backtrack_k_cordial(t, k, true, &with);
        const auto b = backtrack_k_cordial(t, k, false, &without);
        REQUIRE(a.has_value() == b.has_value());
        REQUIRE(with.nodes <= without.nodes);
      }
    });
  }
}

TEST_CASE("the builder and the search agree up to 12") {
  for (int n = 1; n <= 12; ++n) {
    for_each_free_tree(n, [](const Tree& t) {
      const auto [f, tr] = label_six_cordial(t);
      REQUIRE(verify_cordial(t, f, 6).cordial);
      REQUIRE(backtrack_k_cordial(t, 6).has_value());
    });
  }
}

TEST_CASE("centroid") {
  CHECK(centroid(Tree::path(5)) == 2);
  CHECK(centroid(Tree::path(4)) == 1);
  CHECK(centroid(Tree::star(6)) == 0);
}

TEST_CASE("scan totals") {
  for (int k : {2, 6}) {
    ScanOptions opt;
    opt.k = k;
    opt.n_max = 10;
    const auto r = scan(opt);
    REQUIRE(r.rows.size() == 10);
    for (const auto& row : r.rows) {
      CHECK(row.trees == kTreeCounts[static_cast<std::size_t>(row.n - 1)]);
      CHECK(row.cordial == row.trees);
      CHECK(row.unsat == 0);
    }
    CHECK(r.unsat.empty());
  }

  ScanOptions seven;
  seven.k = 7;
  seven.n_max = 8;
  const auto r7 = scan(seven);
  CHECK(r7.trees() == 1 + 1 + 1 + 2 + 3 + 6 + 11 + 23);
  CHECK(r7.cordial_count() + r7.unsat.size() == r7.trees());

  ScanOptions c;
  c.method = ScanMethod::Constructive;
  c.n_max = 12;
  const auto rc = scan(c);
  CHECK(rc.cordial_count() == rc.trees());
  CHECK(rc.total_steps() >= rc.trees());
  CHECK(rc.fallback_steps() > 0);

  c.k = 5;
  CHECK_THROWS_AS((void)scan(c), std::invalid_argument);
}

TEST_CASE("scan does not depend on the worker count") {
  ScanOptions opt;
  opt.method = ScanMethod::Constructive;
  opt.n_max = 12;
  const auto one = scan(opt);
  opt.jobs = 4;
  const auto four = scan(opt);
  CHECK(same_counts(one, four));
}

TEST_CASE("checkpoint resume") {
  const auto path = temp_file("resume.ckpt");
  ScanOptions opt;
  opt.n_max = 9;
  opt.checkpoint = path.string();
  const auto fresh = scan(opt);
  for (const auto& row : fresh.rows) CHECK_FALSE(row.resumed);

  opt.n_max = 10;
  const auto resumed = scan(opt);
  REQUIRE(resumed.rows.size() == 10);
  for (const auto& row : resumed.rows) CHECK(row.resumed == (row.n <= 9));

  ScanOptions plain;
  plain.n_max = 10;
  CHECK(same_counts(resumed, scan(plain)));

  // A torn final line is dropped and that order rerun.
  {
    std::ofstream out(path, std::ios::app);
    out << "11,0,sa";
  }
  opt.n_max = 11;
  const auto torn = scan(opt);
  REQUIRE(torn.rows.size() == 11);
  CHECK_FALSE(torn.rows.back().resumed);
  CHECK(torn.rows.back().trees == 235);
  fs::remove(path);
}

TEST_CASE("corrupt checkpoints are rejected with a line number") {
  const auto path = temp_file("corrupt.ckpt");
  ScanOptions opt;
  opt.n_max = 6;
  opt.checkpoint = path.string();
  (void)scan(opt);

  auto text = slurp(path);
  const auto pos = text.find("\n3,");
  REQUIRE(pos != std::string::npos);
  text.replace(pos + 1, 2, "x,");
  {
    std::ofstream out(path, std::ios::trunc);
    out << text;
  }
  try {
    (void)scan(opt);
    FAIL("expected CheckpointCorrupt");
  } catch (const CheckpointCorrupt& e) {
    CHECK(e.line() > 1);
  }

  fs::remove(path);
  (void)scan(opt);
  ScanOptions other = opt;
  other.k = 5;
  try {
    (void)scan(other);
    FAIL("expected CheckpointCorrupt");
  } catch (const CheckpointCorrupt& e) {
    CHECK(e.line() == 1);
  }
  fs::remove(path);
}
