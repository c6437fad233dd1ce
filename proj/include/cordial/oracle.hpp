#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cordial/labeling.hpp"
#include "cordial/tree.hpp"

namespace cordial {

inline constexpr int kDefaultEnumerationCap = 18;

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(int n, int cap)
      : std::runtime_error("n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(cap)) {}
};

/// Every free tree on n vertices exactly once, in a fixed order (successor
/// generation over canonical level sequences).
void for_each_free_tree(int n, const std::function<void(const Tree&)>& visit, int cap = kDefaultEnumerationCap);
std::vector<Tree> enumerate_free_trees(int n, int cap = kDefaultEnumerationCap);

/// Independent counts used to check the enumerator.
std::uint64_t count_free_trees_by_prufer(int n);          // all n^(n-2) sequences; small n only
std::uint64_t count_free_trees_by_leaf_extension(int n);  // grow from n-1, dedupe by canonical form
/// Size of the automorphism group.
std::uint64_t automorphism_count(const Tree& t);

/// Labeled trees on n vertices from the Prufer sequence.
Tree tree_from_prufer(int n, const std::vector<int>& seq);

/// Uniform labeled tree: random Prufer sequence from a seeded mt19937_64.
Tree random_tree(int n, std::uint64_t seed);

struct BacktrackStats {
  std::uint64_t nodes = 0;
};

/// First k-cordial labeling in search order, or nullopt when none exists.
/// With `prune` off, only complete assignments are checked.
std::optional<Labeling> backtrack_k_cordial(const Tree& t, int k, bool prune = true, BacktrackStats* stats = nullptr);

/// Smallest-id vertex minimizing the largest branch.
Vertex centroid(const Tree& t);

}  // namespace cordial
