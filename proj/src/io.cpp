#include "cordial/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace cordial {

using nlohmann::json;

TreeFormat tree_format_from_string(const std::string& s) {
  if (s == "edges") return TreeFormat::Edges;
  if (s == "graph6") return TreeFormat::Graph6;
  throw std::invalid_argument("unknown tree format '" + s + "' (expected edges or graph6)");
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

// Non-empty lines with comments removed, split on whitespace.
std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

std::optional<long long> as_integer(const std::string& tok) {
  if (tok.empty()) return std::nullopt;
  std::size_t i = tok[0] == '-' ? 1 : 0;
  if (i == tok.size() || tok.size() > 18) return std::nullopt;
  for (std::size_t j = i; j < tok.size(); ++j) {
    if (tok[j] < '0' || tok[j] > '9') return std::nullopt;
  }
  return std::stoll(tok);
}

Tree build_tree(int n, const std::vector<std::pair<int, int>>& pairs) {
  try {
    return Tree::from_edge_list(n, pairs);
  } catch (const TreeError& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace

ParsedTree parse_edge_list(const std::string& text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "empty tree file");

  ParsedTree out;
  std::vector<std::pair<int, int>> pairs;
  const auto& first = lines.front();
  if (first.tokens.size() == 1) {
    const auto n = as_integer(first.tokens[0]);
    if (!n || *n < 1 || *n > 1'000'000) throw ParseError(first.number, "expected a vertex count, got '" + first.tokens[0] + "'");
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto& l = lines[i];
      if (l.tokens.size() != 2) throw ParseError(l.number, "expected 'u v'");
      const auto u = as_integer(l.tokens[0]);
      const auto v = as_integer(l.tokens[1]);
      if (!u || !v) throw ParseError(l.number, "vertex ids must be integers in numbered mode");
      if (*u < 0 || *v < 0 || *u >= *n || *v >= *n) {
        throw ParseError(l.number, "vertex id outside 0.." + std::to_string(*n - 1));
      }
      pairs.emplace_back(static_cast<int>(*u), static_cast<int>(*v));
    }
    out.tree = build_tree(static_cast<int>(*n), pairs);
    for (int v = 0; v < *n; ++v) out.names.push_back(std::to_string(v));
    return out;
  }

  std::unordered_map<std::string, int> ids;
  auto id_of = [&](const std::string& name) {
    auto [it, inserted] = ids.emplace(name, static_cast<int>(out.names.size()));
    if (inserted) out.names.push_back(name);
    return it->second;
  };
  for (const auto& l : lines) {
    if (l.tokens.size() != 2) throw ParseError(l.number, "expected 'a b'");
    const int u = id_of(l.tokens[0]);
    const int v = id_of(l.tokens[1]);
    pairs.emplace_back(u, v);
  }
  out.renamed = true;
  out.tree = build_tree(static_cast<int>(out.names.size()), pairs);
  return out;
}

std::string format_edge_list(const Tree& t) {
  std::string out = std::to_string(t.order()) + "\n";
  for (const auto& e : t.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

std::string to_graph6(const Tree& t) {
  const long n = t.order();
  std::string out;
  if (n <= 62) {
    out += static_cast<char>(63 + n);
  } else {
    out += static_cast<char>(126);
    for (int shift = 12; shift >= 0; shift -= 6) out += static_cast<char>(63 + ((n >> shift) & 63));
  }
  std::vector<bool> adj(static_cast<std::size_t>(n * (n - 1) / 2), false);
  // Bit order: column j from 1, rows i < j.
  auto bit = [](long i, long j) { return static_cast<std::size_t>(j * (j - 1) / 2 + i); };
  for (const auto& e : t.edges()) adj[bit(std::min(e.u, e.v), std::max(e.u, e.v))] = true;
  for (std::size_t i = 0; i < adj.size(); i += 6) {
    int chunk = 0;
    for (std::size_t b = 0; b < 6; ++b) chunk = (chunk << 1) | (i + b < adj.size() && adj[i + b] ? 1 : 0);
    out += static_cast<char>(63 + chunk);
  }
  return out;
}

Tree from_graph6(const std::string& raw) {
  std::string s = raw;
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  if (s.rfind(">>graph6<<", 0) == 0) s.erase(0, 10);
  if (s.empty()) throw ParseError(0, "empty graph6 string");
  for (char c : s) {
    if (c < 63 || c > 126) throw ParseError(0, "graph6 byte out of range");
  }
  long n = 0;
  std::size_t pos = 0;
  if (s[0] != 126) {
    n = s[0] - 63;
    pos = 1;
  } else {
    if (s.size() < 4 || s[1] == 126) throw ParseError(0, "unsupported graph6 size prefix");
    n = ((s[1] - 63) << 12) | ((s[2] - 63) << 6) | (s[3] - 63);
    pos = 4;
  }
  const std::size_t bits = static_cast<std::size_t>(n * (n - 1) / 2);
  if (s.size() - pos != (bits + 5) / 6) throw ParseError(0, "graph6 length does not match the vertex count");
  std::vector<std::pair<int, int>> pairs;
  std::size_t b = 0;
  for (long j = 1; j < n; ++j) {
    for (long i = 0; i < j; ++i, ++b) {
      const int chunk = s[pos + b / 6] - 63;
      if ((chunk >> (5 - b % 6)) & 1) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return build_tree(static_cast<int>(n), pairs);
}

ParsedTree parse_tree(const std::string& text, TreeFormat format) {
  if (format == TreeFormat::Edges) return parse_edge_list(text);
  const auto lines = content_lines(text);
  if (lines.size() != 1 || lines[0].tokens.size() != 1) throw ParseError(0, "expected exactly one graph6 string");
  ParsedTree out;
  out.tree = from_graph6(lines[0].tokens[0]);
  for (int v = 0; v < out.tree.order(); ++v) out.names.push_back(std::to_string(v));
  return out;
}

std::string format_tree(const Tree& t, TreeFormat format) {
  return format == TreeFormat::Edges ? format_edge_list(t) : to_graph6(t) + "\n";
}

Labeling parse_labeling(const std::string& text, const ParsedTree& tree, int k) {
  const int n = tree.tree.order();
  std::unordered_map<std::string, int> ids;
  for (int v = 0; v < n; ++v) ids.emplace(tree.names[static_cast<std::size_t>(v)], v);

  Labeling f{k, std::vector<int>(static_cast<std::size_t>(n), -1), {}};
  for (const auto& l : content_lines(text)) {
    if (l.tokens.size() != 2) throw ParseError(l.number, "expected 'vertex label'");
    const auto it = ids.find(l.tokens[0]);
    if (it == ids.end()) throw ParseError(l.number, "unknown vertex '" + l.tokens[0] + "'");
    const auto label = as_integer(l.tokens[1]);
    if (!label) throw ParseError(l.number, "label must be an integer");
    if (*label < 0 || *label >= k) {
      throw LabelingError(LabelingErrorKind::ValueOutOfRange,
                          "line " + std::to_string(l.number) + ": label " + l.tokens[1] + " outside Z_" + std::to_string(k));
    }
    auto& slot = f.values[static_cast<std::size_t>(it->second)];
    if (slot != -1) throw ParseError(l.number, "vertex '" + l.tokens[0] + "' labeled twice");
    slot = static_cast<int>(*label);
  }
  for (int v = 0; v < n; ++v) {
    if (f.values[static_cast<std::size_t>(v)] == -1) {
      throw LabelingError(LabelingErrorKind::PartialLabeling,
                          "vertex '" + tree.names[static_cast<std::size_t>(v)] + "' has no label");
    }
  }
  return f;
}

std::string format_labeling(const Labeling& f, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t v = 0; v < f.values.size(); ++v) {
    out += (v < names.size() ? names[v] : std::to_string(v)) + " " + std::to_string(f.values[v]) + "\n";
  }
  return out;
}

TraceSummary summarize(const BuildTrace& trace) {
  TraceSummary s;
  s.steps = static_cast<int>(trace.steps.size());
  s.fallback_steps = trace.fallback_count();
  for (const auto& step : trace.steps) ++s.strategies[to_string(step.strategy)];
  return s;
}

RunReport make_report(const std::string& input, const std::string& method, const Tree& t, const Labeling& f) {
  RunReport r;
  r.input = input;
  r.method = method;
  r.k = f.k;
  r.tree = t;
  r.labeling = f;
  r.balance = verify_cordial(t, f);
  return r;
}

namespace {

const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::Label: return "label";
    case ViolationKind::Weight: return "weight";
    case ViolationKind::Majority: return "majority";
  }
  return "unknown";
}

json violations_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    out.push_back({{"kind", violation_name(v.kind)}, {"a", v.a}, {"b", v.b}, {"count_a", v.count_a}, {"count_b", v.count_b}});
  }
  return out;
}

}  // namespace

std::string report_to_json(const RunReport& r, int indent) {
  json j;
  j["schema_version"] = RunReport::kSchemaVersion;
  j["input"] = r.input;
  j["method"] = r.method;
  j["k"] = r.k;
  j["n"] = r.tree.order();
  json edges = json::array();
  for (const auto& e : r.tree.edges()) edges.push_back({e.u, e.v});
  j["edges"] = edges;
  j["labeling"] = r.labeling.values;
  j["label_counts"] = r.balance.label_counts;
  j["weight_counts"] = r.balance.weight_counts;
  j["verdict"] = r.balance.cordial ? "cordial" : "not cordial";
  j["violations"] = violations_json(r.balance.violations);
  if (r.trace) {
    j["trace"] = {{"steps", r.trace->steps},
                  {"fallback_steps", r.trace->fallback_steps},
                  {"strategies", r.trace->strategies}};
  }
  if (r.seconds) j["seconds"] = *r.seconds;
  return j.dump(indent) + "\n";
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("report is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != RunReport::kSchemaVersion) {
      throw ParseError(0, "unsupported report schema_version " + j.at("schema_version").dump());
    }
    const int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : j.at("edges")) pairs.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    const Tree t = build_tree(n, pairs);
    const Labeling f{j.at("k").get<int>(), j.at("labeling").get<std::vector<int>>(), {}};
    RunReport r = make_report(j.at("input").get<std::string>(), j.at("method").get<std::string>(), t, f);
    if (j.contains("trace")) {
      const auto& tr = j["trace"];
      r.trace = TraceSummary{tr.at("steps").get<int>(), tr.at("fallback_steps").get<int>(),
                             tr.at("strategies").get<std::map<std::string, int>>()};
    }
    if (j.contains("seconds")) r.seconds = j["seconds"].get<double>();

    const bool stored = j.at("verdict").get<std::string>() == "cordial";
    if (stored != r.balance.cordial) throw ReportMismatch("stored verdict disagrees with the embedded labeling");
    if (j.at("label_counts").get<std::vector<int>>() != r.balance.label_counts ||
        j.at("weight_counts").get<std::vector<int>>() != r.balance.weight_counts) {
      throw ReportMismatch("stored counts disagree with the embedded labeling");
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed report: ") + e.what());
  }
}

std::string export_dot(const Tree& t, const Labeling& f) {
  std::string out = "graph T {\n";
  for (int v = 0; v < t.order(); ++v) {
    out += "  " + std::to_string(v) + " [label=\"" + std::to_string(v) + ":" +
           std::to_string(f.values[static_cast<std::size_t>(v)]) + "\"];\n";
  }
  for (const auto& e : t.edges()) {
    const int w = edge_weight(f.values[static_cast<std::size_t>(e.u)], f.values[static_cast<std::size_t>(e.v)], f.k);
    out += "  " + std::to_string(e.u) + " -- " + std::to_string(e.v) + " [label=\"" + std::to_string(w) + "\"];\n";
  }
  out += "}\n";
  return out;
}

namespace {

std::string rate(std::uint64_t num, std::uint64_t den) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den));
  return buf;
}

}  // namespace

std::string scan_csv(const ScanReport& r, bool timing) {
  std::string out = "n,trees,cordial,unsat,fallback_steps,total_steps,fallback_rate";
  out += timing ? ",seconds\n" : "\n";
  for (const auto& row : r.rows) {
    out += std::to_string(row.n) + "," + std::to_string(row.trees) + "," + std::to_string(row.cordial) + "," +
           std::to_string(row.unsat) + "," + std::to_string(row.fallback_steps) + "," +
           std::to_string(row.total_steps) + "," + rate(row.fallback_steps, row.total_steps);
    if (timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, ",%.3f", row.seconds);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string scan_json(const ScanReport& r, bool timing) {
  json j;
  j["schema_version"] = 1;
  j["k"] = r.k;
  j["method"] = to_string(r.method);
  j["n_min"] = r.n_min;
  j["n_max"] = r.n_max;
  j["trees"] = r.trees();
  j["cordial"] = r.cordial_count();
  j["unsat"] = r.unsat.size();
  j["fallback_steps"] = r.fallback_steps();
  j["total_steps"] = r.total_steps();
  j["fallback_rate"] = std::stod(rate(r.fallback_steps(), r.total_steps()));
  json inst = json::array();
  for (const auto& u : r.unsat) inst.push_back({{"n", u.n}, {"index", u.index}, {"edges", u.edges}});
  j["unsat_instances"] = inst;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr = {{"n", row.n},
               {"trees", row.trees},
               {"cordial", row.cordial},
               {"unsat", row.unsat},
               {"fallback_steps", row.fallback_steps},
               {"total_steps", row.total_steps}};
    if (timing) jr["seconds"] = row.seconds;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  if (timing) j["wall_seconds"] = r.wall_seconds;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cordial
