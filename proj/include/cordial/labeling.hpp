#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cordial/tree.hpp"

namespace cordial {

/// Vertex labeling by residues mod k. root_values is empty for free trees and
/// holds one residue per root for rooted trees and forests.
struct Labeling {
  int k = 0;
  std::vector<int> values;
  std::vector<int> root_values;

  friend bool operator==(const Labeling&, const Labeling&) = default;
};

enum class LabelingErrorKind { ModulusMismatch, PartialLabeling, ValueOutOfRange };

const char* to_string(LabelingErrorKind kind);

class LabelingError : public std::runtime_error {
 public:
  LabelingError(LabelingErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  LabelingErrorKind kind() const noexcept { return kind_; }

 private:
  LabelingErrorKind kind_;
};

inline int mod(int x, int k) {
  const int r = x % k;
  return r < 0 ? r + k : r;
}

inline int edge_weight(int a, int b, int k) { return mod(a + b, k); }

enum class ViolationKind { Label, Weight, Majority };

struct Violation {
  ViolationKind kind;
  int a;  // residue with the larger count
  int b;
  int count_a;
  int count_b;
};

struct BalanceReport {
  int k = 0;
  std::vector<int> label_counts;
  std::vector<int> weight_counts;
  bool cordial = false;
  std::vector<Violation> violations;
  std::vector<int> minority_weights;  // count strictly below the max; all of Z_k when counts are equal
  std::vector<int> majority_labels;   // count strictly above the min; empty when counts are equal
};

/// Checks |v_a - v_b| <= 1 and |e_a - e_b| <= 1 for all residues.
BalanceReport verify_cordial(const Tree& t, const Labeling& f);
BalanceReport verify_cordial(const Tree& t, const Labeling& f, int expected_k);

/// Rooted-forest balance. Vertex counts exclude roots; root edges count toward
/// weights. Conditions: vertex counts within one; weight counts within one away
/// from ell; 0 <= e_ell - e_i <= 2 for every i.
BalanceReport verify_rooted_cordial(const RootedForest& forest, const Labeling& f, int ell);

/// Counts only; shared by the verifiers and the builder.
std::vector<int> label_counts(const Labeling& f);
std::vector<int> weight_counts(const Tree& t, const Labeling& f);
std::vector<int> weight_counts(const RootedForest& forest, const Labeling& f);

/// max - min <= 1
bool balanced(const std::vector<int>& counts);

Labeling rotate(const Labeling& f, int a);
Labeling negate(const Labeling& f);

}  // namespace cordial
