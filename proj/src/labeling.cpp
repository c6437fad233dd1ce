#include "cordial/labeling.hpp"

#include <algorithm>

namespace cordial {

const char* to_string(LabelingErrorKind kind) {
  switch (kind) {
    case LabelingErrorKind::ModulusMismatch: return "ModulusMismatch";
    case LabelingErrorKind::PartialLabeling: return "PartialLabeling";
    case LabelingErrorKind::ValueOutOfRange: return "ValueOutOfRange";
  }
  return "Unknown";
}

namespace {

void check_values(const Labeling& f, std::size_t vertices, std::size_t roots) {
  if (f.k < 1) throw LabelingError(LabelingErrorKind::ModulusMismatch, "modulus must be positive");
  if (f.values.size() != vertices) {
    throw LabelingError(LabelingErrorKind::PartialLabeling, "labeling covers " + std::to_string(f.values.size()) +
                                                                " of " + std::to_string(vertices) + " vertices");
  }
  if (f.root_values.size() != roots) {
    throw LabelingError(LabelingErrorKind::PartialLabeling, "labeling covers " + std::to_string(f.root_values.size()) +
                                                                " of " + std::to_string(roots) + " roots");
  }
  auto in_range = [&](int x) { return x >= 0 && x < f.k; };
  if (!std::all_of(f.values.begin(), f.values.end(), in_range) ||
      !std::all_of(f.root_values.begin(), f.root_values.end(), in_range)) {
    throw LabelingError(LabelingErrorKind::ValueOutOfRange, "label outside Z_" + std::to_string(f.k));
  }
}

void add_pair_violations(std::vector<Violation>& out, ViolationKind kind, const std::vector<int>& counts,
                         const std::vector<bool>& skip) {
  const int k = static_cast<int>(counts.size());
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (a == b || skip[static_cast<std::size_t>(a)] || skip[static_cast<std::size_t>(b)]) continue;
      if (counts[static_cast<std::size_t>(a)] - counts[static_cast<std::size_t>(b)] > 1) {
        out.push_back({kind, a, b, counts[static_cast<std::size_t>(a)], counts[static_cast<std::size_t>(b)]});
      }
    }
  }
}

void fill_summary(BalanceReport& r) {
  const auto [wmin, wmax] = std::minmax_element(r.weight_counts.begin(), r.weight_counts.end());
  const auto [lmin, lmax] = std::minmax_element(r.label_counts.begin(), r.label_counts.end());
  for (int a = 0; a < r.k; ++a) {
    const auto i = static_cast<std::size_t>(a);
    if (r.weight_counts.empty() || r.weight_counts[i] < *wmax || *wmin == *wmax) r.minority_weights.push_back(a);
    if (!r.label_counts.empty() && r.label_counts[i] > *lmin) r.majority_labels.push_back(a);
  }
}

}  // namespace

std::vector<int> label_counts(const Labeling& f) {
  std::vector<int> c(static_cast<std::size_t>(f.k), 0);
  for (int x : f.values) ++c[static_cast<std::size_t>(x)];
  return c;
}

std::vector<int> weight_counts(const Tree& t, const Labeling& f) {
  std::vector<int> c(static_cast<std::size_t>(f.k), 0);
  for (const auto& e : t.edges()) {
    ++c[static_cast<std::size_t>(
        edge_weight(f.values[static_cast<std::size_t>(e.u)], f.values[static_cast<std::size_t>(e.v)], f.k))];
  }
  return c;
}

std::vector<int> weight_counts(const RootedForest& forest, const Labeling& f) {
  std::vector<int> c(static_cast<std::size_t>(f.k), 0);
  for (const auto& [p, v] : forest.edges()) {
    const int pl = p.is_root ? f.root_values[static_cast<std::size_t>(p.index)] : f.values[static_cast<std::size_t>(p.index)];
    ++c[static_cast<std::size_t>(edge_weight(pl, f.values[static_cast<std::size_t>(v)], f.k))];
  }
  return c;
}

bool balanced(const std::vector<int>& counts) {
  if (counts.empty()) return true;
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  return *hi - *lo <= 1;
}

BalanceReport verify_cordial(const Tree& t, const Labeling& f) {
  check_values(f, static_cast<std::size_t>(t.order()), 0);
  BalanceReport r;
  r.k = f.k;
  r.label_counts = label_counts(f);
  r.weight_counts = weight_counts(t, f);
  const std::vector<bool> none(static_cast<std::size_t>(f.k), false);
  add_pair_violations(r.violations, ViolationKind::Label, r.label_counts, none);
  add_pair_violations(r.violations, ViolationKind::Weight, r.weight_counts, none);
  r.cordial = r.violations.empty();
  fill_summary(r);
  return r;
}

BalanceReport verify_cordial(const Tree& t, const Labeling& f, int expected_k) {
  if (f.k != expected_k) {
    throw LabelingError(LabelingErrorKind::ModulusMismatch,
                        "labeling is mod " + std::to_string(f.k) + ", expected mod " + std::to_string(expected_k));
  }
  return verify_cordial(t, f);
}

BalanceReport verify_rooted_cordial(const RootedForest& forest, const Labeling& f, int ell) {
  check_values(f, static_cast<std::size_t>(forest.order()), static_cast<std::size_t>(forest.root_count()));
  if (ell < 0 || ell >= f.k) throw LabelingError(LabelingErrorKind::ValueOutOfRange, "ell outside Z_k");
  BalanceReport r;
  r.k = f.k;
  r.label_counts = label_counts(f);
  r.weight_counts = weight_counts(forest, f);
  const std::vector<bool> none(static_cast<std::size_t>(f.k), false);
  std::vector<bool> skip_ell(static_cast<std::size_t>(f.k), false);
  skip_ell[static_cast<std::size_t>(ell)] = true;
  add_pair_violations(r.violations, ViolationKind::Label, r.label_counts, none);
  add_pair_violations(r.violations, ViolationKind::Weight, r.weight_counts, skip_ell);
  const int e_ell = r.weight_counts[static_cast<std::size_t>(ell)];
  for (int i = 0; i < f.k; ++i) {
    const int diff = e_ell - r.weight_counts[static_cast<std::size_t>(i)];
    if (diff < 0 || diff > 2) r.violations.push_back({ViolationKind::Majority, ell, i, e_ell, r.weight_counts[static_cast<std::size_t>(i)]});
  }
  r.cordial = r.violations.empty();
  fill_summary(r);
  return r;
}

Labeling rotate(const Labeling& f, int a) {
  Labeling g = f;
  for (int& x : g.values) x = mod(x + a, f.k);
  for (int& x : g.root_values) x = mod(x + a, f.k);
  return g;
}

Labeling negate(const Labeling& f) {
  Labeling g = f;
  for (int& x : g.values) x = mod(-x, f.k);
  for (int& x : g.root_values) x = mod(-x, f.k);
  return g;
}

}  // namespace cordial
