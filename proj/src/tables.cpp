#include "cordial/tables.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "cordial_tables_data.hpp"

namespace cordial {

const char* to_string(EntryKind kind) {
  switch (kind) {
    case EntryKind::MajorityWeight: return "majority";
    case EntryKind::NoMajority: return "none";
    case EntryKind::MinorityLabel: return "minority-label";
    case EntryKind::MinorityLabels: return "minority-labels";
    case EntryKind::MinorityWeight: return "minority-weight";
    case EntryKind::Subtree: return "subtree";
  }
  return "unknown";
}

namespace {

std::string issue_summary(const std::vector<TableIssue>& issues) {
  std::string s = std::to_string(issues.size()) + " table issue(s)";
  if (!issues.empty()) {
    const auto& i = issues.front();
    s += "; first at line " + std::to_string(i.line) + " (list " + std::to_string(i.list) + ", " + i.shape + ", " +
         i.entry + "): " + i.message;
  }
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

int parse_int(const std::string& s, int line) {
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw TableParseError(line, "not an integer: '" + s + "'");
  return v;
}

std::vector<int> parse_ints(const std::string& s, int line) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part, line));
  return out;
}

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s;
}

bool labels_distinct(const Labeling& f) {
  const auto c = label_counts(f);
  return std::all_of(c.begin(), c.end(), [](int x) { return x <= 1; });
}

bool weights_distinct(const std::vector<int>& w) {
  return std::all_of(w.begin(), w.end(), [](int x) { return x <= 1; });
}

Labeling transformed(const Labeling& f, bool negated, int rotation) {
  return rotate(negated ? negate(f) : f, rotation);
}

TableEntry transformed(const TableEntry& e, bool negated, int rotation) {
  TableEntry t = e;
  for (int& x : t.labels) x = mod((negated ? -x : x) + rotation, kTableModulus);
  for (int& p : t.params) {
    const int step = e.kind == EntryKind::MajorityWeight || e.kind == EntryKind::MinorityWeight ? 2 * rotation : rotation;
    p = mod((negated ? -p : p) + step, kTableModulus);
  }
  return t;
}

// Leaves of `big` whose removal leaves a forest isomorphic to `small`, with
// the map from the reduced forest onto `small`.
std::vector<std::pair<int, std::vector<int>>> reducing_leaves(const RootedForest& big, const RootedForest& small) {
  std::vector<std::pair<int, std::vector<int>>> out;
  if (big.root_count() != small.root_count() || big.order() != small.order() + 1) return out;
  const Labeling dummy{kTableModulus, std::vector<int>(static_cast<std::size_t>(big.order()), 0),
                       std::vector<int>(static_cast<std::size_t>(big.root_count()), 0)};
  for (int v = 0; v < big.order(); ++v) {
    const int c = big.component_of(v);
    if (!big.component(c).is_leaf(v - big.offset(c))) continue;
    auto reduced = delete_leaf(big, dummy, v).first;
    auto iso = forest_isomorphism(reduced, small);
    if (!iso.empty()) out.emplace_back(v, std::move(iso));
  }
  return out;
}

Labeling carry(const Labeling& f, const std::vector<int>& iso) {
  Labeling g{f.k, std::vector<int>(f.values.size(), 0), f.root_values};
  for (std::size_t v = 0; v < iso.size(); ++v) g.values[static_cast<std::size_t>(iso[v])] = f.values[v];
  return g;
}

}  // namespace

TranscriptionError::TranscriptionError(std::vector<TableIssue> issues)
    : std::runtime_error(issue_summary(issues)), issues_(std::move(issues)) {}

bool satisfies(const RootedForest& forest, const Labeling& f, const Requirement& req) {
  if (!req.roots.empty() && f.root_values != req.roots) return false;
  if (!labels_distinct(f)) return false;
  const auto w = weight_counts(forest, f);
  const auto at = [&](int i) { return w[static_cast<std::size_t>(mod(i, f.k))]; };
  auto others_at_most_one = [&](int skip) {
    for (int i = 0; i < f.k; ++i) {
      if (i != skip && at(i) > 1) return false;
    }
    return true;
  };
  switch (req.kind) {
    case Requirement::Kind::MajorityWeight: return at(req.value) == 2 && others_at_most_one(mod(req.value, f.k));
    case Requirement::Kind::NoMajority: return weights_distinct(w);
    case Requirement::Kind::MinorityLabel:
      return label_counts(f)[static_cast<std::size_t>(mod(req.value, f.k))] == 0 && weights_distinct(w);
    case Requirement::Kind::Balances:
      return at(req.value) >= 1 && at(req.value) <= 2 && others_at_most_one(mod(req.value, f.k));
  }
  return false;
}

Labeling entry_labeling(const Shape& s, const std::vector<int>& labels) {
  const int roots = s.forest.root_count();
  Labeling f{kTableModulus, std::vector<int>(static_cast<std::size_t>(s.forest.order()), 0),
             std::vector<int>(labels.begin(), labels.begin() + roots)};
  for (std::size_t p = 0; p < s.table_order.size(); ++p) {
    f.values[static_cast<std::size_t>(s.table_order[p])] = labels[static_cast<std::size_t>(roots) + p];
  }
  return f;
}

std::pair<RootedForest, Labeling> delete_leaf(const RootedForest& forest, const Labeling& f, int leaf) {
  const int c = forest.component_of(leaf);
  std::vector<RootedTree> comps = forest.components();
  comps[static_cast<std::size_t>(c)] = comps[static_cast<std::size_t>(c)].without_vertex(leaf - forest.offset(c));
  Labeling g = f;
  g.values.erase(g.values.begin() + leaf);
  return {RootedForest(std::move(comps)), std::move(g)};
}

std::string format_entry(const TableEntry& e) {
  std::string s = std::to_string(e.list) + ' ' + shape(e.shape).token + ' ';
  s += e.labels.empty() ? "-" : join(e.labels);
  s += ' ';
  s += to_string(e.kind);
  if (e.kind == EntryKind::Subtree) {
    s += ' ' + shape(*e.reference).token;
  } else if (!e.params.empty()) {
    s += ' ' + join(e.params);
  }
  return s;
}

std::string check_entry(const TableEntry& e) {
  const Shape& s = shape(e.shape);
  if (e.kind == EntryKind::Subtree) {
    if (!e.reference) return "subtree entry without a reference";
    const Shape& big = shape(*e.reference);
    if (reducing_leaves(big.forest, s.forest).empty()) {
      return "shape is not " + big.token + " minus a leaf";
    }
    return {};
  }
  const auto expected = static_cast<std::size_t>(s.forest.root_count() + s.forest.order());
  if (e.labels.size() != expected) {
    return "expected " + std::to_string(expected) + " labels, found " + std::to_string(e.labels.size());
  }
  for (int x : e.labels) {
    if (x < 0 || x >= kTableModulus) return "label " + std::to_string(x) + " outside Z_6";
  }
  const Labeling f = entry_labeling(s, e.labels);
  const auto w = weight_counts(s.forest, f);
  const auto lc = label_counts(f);
  if (!labels_distinct(f)) return "non-root labels repeat";
  auto param = [&](std::size_t i) { return e.params.size() > i ? e.params[i] : -1; };
  auto weights_text = [&] {
    std::string t = "weight counts ";
    for (int x : w) t += std::to_string(x);
    return t;
  };
  switch (e.kind) {
    case EntryKind::MajorityWeight:
      if (!satisfies(s.forest, f, Requirement::majority(param(0), {}))) {
        return weights_text() + " do not give majority weight " + std::to_string(param(0));
      }
      break;
    case EntryKind::NoMajority:
      if (!weights_distinct(w)) return weights_text() + " repeat a weight";
      break;
    case EntryKind::MinorityLabel:
    case EntryKind::MinorityLabels:
      if (!weights_distinct(w)) return weights_text() + " repeat a weight";
      for (int x : e.params) {
        if (x < 0 || x >= kTableModulus || lc[static_cast<std::size_t>(x)] != 0) {
          return "label " + std::to_string(x) + " is not missing";
        }
      }
      break;
    case EntryKind::MinorityWeight:
      if (!weights_distinct(w)) return weights_text() + " repeat a weight";
      if (param(0) < 0 || param(0) >= kTableModulus || w[static_cast<std::size_t>(param(0))] != 0) {
        return "weight " + std::to_string(param(0)) + " is not missing";
      }
      break;
    case EntryKind::Subtree: break;
  }
  return {};
}

Tables Tables::parse(std::string_view text) {
  Tables t;
  int line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const auto toks = tokens(raw);
    if (toks.empty() || toks.front().front() == '#') {
      t.lines_.push_back({raw});
      continue;
    }
    if (toks.size() < 4) throw TableParseError(line_no, "expected <list> <shape> <labels> <kind> [params]");
    TableEntry e;
    e.line = line_no;
    e.list = parse_int(toks[0], line_no);
    const auto id = shape_from_token(toks[1]);
    if (!id) throw TableParseError(line_no, "unknown shape '" + toks[1] + "'");
    e.shape = *id;
    if (toks[2] != "-") e.labels = parse_ints(toks[2], line_no);
    const std::string& kind = toks[3];
    const std::size_t want = kind == "none" ? 4 : 5;
    if (toks.size() != want) throw TableParseError(line_no, "wrong number of fields for kind '" + kind + "'");
    if (kind == "majority") {
      e.kind = EntryKind::MajorityWeight;
    } else if (kind == "none") {
      e.kind = EntryKind::NoMajority;
    } else if (kind == "minority-label") {
      e.kind = EntryKind::MinorityLabel;
    } else if (kind == "minority-labels") {
      e.kind = EntryKind::MinorityLabels;
    } else if (kind == "minority-weight") {
      e.kind = EntryKind::MinorityWeight;
    } else if (kind == "subtree") {
      e.kind = EntryKind::Subtree;
      e.reference = shape_from_token(toks[4]);
      if (!e.reference) throw TableParseError(line_no, "unknown reference shape '" + toks[4] + "'");
    } else {
      throw TableParseError(line_no, "unknown kind '" + kind + "'");
    }
    if (e.kind != EntryKind::Subtree && e.kind != EntryKind::NoMajority) e.params = parse_ints(toks[4], line_no);
    if ((e.kind == EntryKind::Subtree) != e.labels.empty()) {
      throw TableParseError(line_no, "labels must be '-' exactly for subtree entries");
    }
    t.lines_.push_back({t.entries_.size()});
    t.entries_.push_back(std::move(e));
  }
  return t;
}

const Tables& Tables::builtin() {
  static const Tables t = parse(detail::kBuiltinTables);
  return t;
}

std::string Tables::serialize() const {
  std::string out;
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    if (i) out += '\n';
    if (const auto* raw = std::get_if<std::string>(&lines_[i].content)) {
      out += *raw;
    } else {
      out += format_entry(entries_[std::get<std::size_t>(lines_[i].content)]);
    }
  }
  return out;
}

std::vector<const TableEntry*> Tables::entries_for(ShapeId id) const {
  std::vector<const TableEntry*> out;
  for (const auto& e : entries_) {
    if (e.shape == id) out.push_back(&e);
  }
  return out;
}

std::optional<LookupResult> Tables::lookup(ShapeId id, const Requirement& req) const {
  const Shape& target = shape(id);
  const auto own = entries_for(id);
  const TableEntry* ref = nullptr;
  for (const auto* e : own) {
    if (e->kind == EntryKind::Subtree) ref = e;
  }
  const ShapeId source_id = ref ? *ref->reference : id;
  const Shape& source = shape(source_id);
  const auto leaves = ref ? reducing_leaves(source.forest, target.forest) : std::vector<std::pair<int, std::vector<int>>>{};

  for (bool negated : {false, true}) {
    for (const auto* e : entries_for(source_id)) {
      if (e->kind == EntryKind::Subtree || !check_entry(*e).empty()) continue;
      const Labeling base = entry_labeling(source, e->labels);
      for (int a = 0; a < kTableModulus; ++a) {
        const Labeling f = transformed(base, negated, a);
        if (!req.roots.empty() && f.root_values != req.roots) continue;
        LookupResult r{*e, a, negated, transformed(*e, negated, a), id, {}};
        if (!ref) {
          if (!satisfies(target.forest, f, req)) continue;
          r.labeling = f;
          return r;
        }
        for (const auto& [leaf, iso] : leaves) {
          const Labeling g = carry(delete_leaf(source.forest, f, leaf).second, iso);
          if (satisfies(target.forest, g, req)) {
            r.labeling = g;
            return r;
          }
        }
      }
    }
  }
  return std::nullopt;
}

ValidationReport Tables::validate_all() const {
  ValidationReport rep;
  std::set<ShapeId> with_entries;
  for (const auto& e : entries_) {
    ++rep.entries_checked;
    with_entries.insert(e.shape);
    const std::string msg = check_entry(e);
    if (msg.empty()) {
      ++rep.entries_valid;
    } else {
      rep.issues.push_back({e.line, e.list, shape(e.shape).token, e.labels.empty() ? "-" : join(e.labels), msg});
    }
  }

  // closure: each request a construction step can make must be reachable
  for (const ShapeId id : with_entries) {
    const Shape& s = shape(id);
    const auto own = entries_for(id);
    const int list = own.front()->list;
    auto need = [&](const Requirement& req, const std::string& what) {
      ++rep.closure_checked;
      if (!lookup(id, req)) rep.issues.push_back({0, list, s.token, "-", "closure gap: " + what});
    };
    const bool has_majority = std::any_of(own.begin(), own.end(), [](const TableEntry* e) {
      return e->kind == EntryKind::MajorityWeight || e->kind == EntryKind::Subtree || e->kind == EntryKind::MinorityWeight;
    });
    switch (s.family) {
      case ShapeFamily::SixVertex:
        for (int w = 0; w < kTableModulus; ++w) {
          if (has_majority) need(Requirement::majority(w), "majority weight " + std::to_string(w));
          else need(Requirement::balances(w), "weight " + std::to_string(w));
        }
        break;
      case ShapeFamily::FiveVertex:
        for (int w = 0; w < kTableModulus; ++w) need(Requirement::balances(w), "weight " + std::to_string(w));
        break;
      case ShapeFamily::TPrime:
      case ShapeFamily::TDoublePrime:
        for (int x = 0; x < kTableModulus; ++x) need(Requirement::minority_label(x), "minority label " + std::to_string(x));
        break;
      case ShapeFamily::Forest:
      case ShapeFamily::ForestPrime:
        for (int d = 0; d < kTableModulus; ++d) {
          for (int w = 0; w < kTableModulus; ++w) {
            need(Requirement::balances(w, {0, d}),
                 "roots (0," + std::to_string(d) + ") weight " + std::to_string(w));
          }
        }
        break;
    }
  }
  return rep;
}

void Tables::validate_or_throw() const {
  auto rep = validate_all();
  if (!rep.ok()) throw TranscriptionError(std::move(rep.issues));
}

Labeling apply_entry(const TableEntry& entry, const RootedForest& piece) {
  const Shape& s = shape(entry.shape);
  if (entry.kind == EntryKind::Subtree) {
    throw ApplyError(ApplyErrorKind::ShapeMismatch, "subtree entries carry no labels; use lookup");
  }
  if (piece.root_count() != s.forest.root_count()) {
    throw ApplyError(ApplyErrorKind::RootCountMismatch, "piece has " + std::to_string(piece.root_count()) +
                                                            " roots, shape " + s.token + " has " +
                                                            std::to_string(s.forest.root_count()));
  }
  const auto iso = forest_isomorphism(s.forest, piece);
  if (iso.empty()) throw ApplyError(ApplyErrorKind::ShapeMismatch, "piece is not isomorphic to shape " + s.token);
  return carry(entry_labeling(s, entry.labels), iso);
}

Labeling apply_lookup(const LookupResult& r, const RootedForest& piece) {
  const Shape& s = shape(r.target);
  if (piece.root_count() != s.forest.root_count()) {
    throw ApplyError(ApplyErrorKind::RootCountMismatch, "piece root count differs from shape " + s.token);
  }
  const auto iso = forest_isomorphism(s.forest, piece);
  if (iso.empty()) throw ApplyError(ApplyErrorKind::ShapeMismatch, "piece is not isomorphic to shape " + s.token);
  return carry(r.labeling, iso);
}

}  // namespace cordial
