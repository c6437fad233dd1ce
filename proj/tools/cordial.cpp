#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cordial/builder.hpp"
#include "cordial/io.hpp"
#include "cordial/oracle.hpp"
#include "cordial/scan.hpp"
#include "cordial/tables.hpp"

using namespace cordial;

namespace {

// Exit codes: 0 success, 1 a negative verdict, 2 bad input or usage.
constexpr int kNegative = 1;
constexpr int kError = 2;

class UnsupportedK : public std::runtime_error {
 public:
  explicit UnsupportedK(int k)
      : std::runtime_error("UnsupportedK: the constructive method needs k = 6, got k = " + std::to_string(k)) {}
};

struct Options {
  int k = 6;
  std::string method = "constructive";
  int min_n = 1;
  int max_n = 12;
  int jobs = 0;
  std::uint64_t seed = 1;
  int n = 10;
  std::string format = "edges";
  std::string out;
  std::string checkpoint;
  std::string tree_path;
  std::string labeling_path;
  std::string tables_path;
  bool timing = false;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_file(o.out, text);
  }
}

ParsedTree load_tree(const Options& o) {
  auto parsed = parse_tree(read_file(o.tree_path), tree_format_from_string(o.format));
  if (parsed.renamed) {
    std::cerr << "vertex ids:";
    for (std::size_t v = 0; v < parsed.names.size(); ++v) std::cerr << ' ' << parsed.names[v] << "=" << v;
    std::cerr << "\n";
  }
  return parsed;
}

// Constructive for k = 6, backtracking otherwise. Returns nullopt on UNSAT.
std::optional<Labeling> find_labeling(const Tree& t, int k, const std::string& method, std::optional<TraceSummary>& trace) {
  if (method == "constructive") {
    if (k != 6) throw UnsupportedK(k);
    auto [f, tr] = label_six_cordial(t);
    trace = summarize(tr);
    return f;
  }
  if (method != "search") throw std::invalid_argument("unknown method '" + method + "' (expected constructive or search)");
  return backtrack_k_cordial(t, k);
}

int cmd_label(const Options& o) {
  const auto parsed = load_tree(o);
  const auto start = std::chrono::steady_clock::now();
  std::optional<TraceSummary> trace;
  const auto f = find_labeling(parsed.tree, o.k, o.method, trace);
  if (!f) {
    std::cerr << "no " << o.k << "-cordial labeling exists for " << o.tree_path << "\n";
    return kNegative;
  }
  RunReport r = make_report(o.tree_path, o.method, parsed.tree, *f);
  r.trace = trace;
  if (o.timing) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(o, report_to_json(r));
  return r.balance.cordial ? 0 : kNegative;
}

int cmd_verify(const Options& o) {
  const auto parsed = load_tree(o);
  const auto f = parse_labeling(read_file(o.labeling_path), parsed, o.k);
  const RunReport r = make_report(o.tree_path, "verify", parsed.tree, f);
  emit(o, report_to_json(r));
  return r.balance.cordial ? 0 : kNegative;
}

int cmd_scan(const Options& o) {
  ScanOptions so;
  so.k = o.k;
  so.n_min = o.min_n;
  so.n_max = o.max_n;
  so.method = scan_method_from_string(o.method);
  if (so.method == ScanMethod::Constructive && o.k != 6) throw UnsupportedK(o.k);
  so.jobs = o.jobs;
  so.checkpoint = o.checkpoint;
  if (so.checkpoint.empty()) {
    if (const char* dir = std::getenv("CORDIAL_CHECKPOINT_DIR"); dir != nullptr && *dir != '\0') {
      std::filesystem::create_directories(dir);
      so.checkpoint = (std::filesystem::path(dir) / ("scan-k" + std::to_string(so.k) + "-" + to_string(so.method) +
                                                     "-" + std::to_string(so.n_min) + ".ckpt"))
                          .string();
    }
  }
  const auto report = scan(so);
  if (o.out.empty()) {
    std::cout << scan_csv(report, o.timing);
    std::cerr << report.trees() << " trees, " << report.unsat.size() << " unsat\n";
  } else {
    write_file(o.out + ".csv", scan_csv(report, o.timing));
    write_file(o.out + ".json", scan_json(report, o.timing));
  }
  return report.unsat.empty() ? 0 : kNegative;
}

int cmd_tables_check(const Options& o) {
  const Tables tables = o.tables_path.empty() ? Tables::builtin() : Tables::parse(read_file(o.tables_path));
  const auto report = tables.validate_all();
  std::cout << "entries: " << report.entries_valid << "/" << report.entries_checked << " valid\n";
  std::cout << "closure requests checked: " << report.closure_checked << "\n";
  for (const auto& issue : report.issues) {
    std::cout << "FAIL";
    if (issue.line > 0) std::cout << " line " << issue.line;
    if (issue.list > 0) std::cout << " list " << issue.list;
    if (!issue.shape.empty()) std::cout << " shape " << issue.shape;
    if (!issue.entry.empty()) std::cout << " entry " << issue.entry;
    std::cout << ": " << issue.message << "\n";
  }
  std::cout << (report.ok() ? "tables ok\n" : std::to_string(report.issues.size()) + " issues\n");
  return report.ok() ? 0 : kNegative;
}

int cmd_dot(const Options& o) {
  const auto parsed = load_tree(o);
  Labeling f;
  if (!o.labeling_path.empty()) {
    f = parse_labeling(read_file(o.labeling_path), parsed, o.k);
  } else {
    std::optional<TraceSummary> trace;
    auto found = find_labeling(parsed.tree, o.k, o.method, trace);
    if (!found) {
      std::cerr << "no " << o.k << "-cordial labeling exists\n";
      return kNegative;
    }
    f = *found;
  }
  emit(o, export_dot(parsed.tree, f));
  return 0;
}

int cmd_random(const Options& o) {
  if (o.n < 1) throw std::invalid_argument("--n must be at least 1");
  emit(o, format_tree(random_tree(o.n, o.seed), tree_format_from_string(o.format)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify k-cordial labelings of trees"};
  app.require_subcommand(1);
  Options o;

  auto add_k = [&](CLI::App* c) { c->add_option("--k", o.k, "Modulus")->check(CLI::PositiveNumber); };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Tree format")->check(CLI::IsMember({"edges", "graph6"}));
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Output file (default stdout)"); };

  auto* label = app.add_subcommand("label", "Label a tree and print a JSON report");
  label->add_option("tree", o.tree_path, "Tree file")->required()->check(CLI::ExistingFile);
  add_k(label);
  label->add_option("--method", o.method, "constructive (k = 6) or search")
      ->check(CLI::IsMember({"constructive", "search"}));
  add_format(label);
  add_out(label);
  label->add_flag("--timing", o.timing, "Include wall time in the report");

  auto* verify = app.add_subcommand("verify", "Check a labeling of a tree");
  verify->add_option("tree", o.tree_path, "Tree file")->required()->check(CLI::ExistingFile);
  verify->add_option("labeling", o.labeling_path, "Labeling file")->required()->check(CLI::ExistingFile);
  add_k(verify);
  add_format(verify);
  add_out(verify);

  auto* scan_cmd = app.add_subcommand("scan", "Check every free tree up to a given order");
  add_k(scan_cmd);
  scan_cmd->add_option("--method", o.method, "constructive (k = 6) or backtrack")
      ->check(CLI::IsMember({"constructive", "backtrack", "search"}));
  scan_cmd->add_option("--min-n", o.min_n, "Smallest order")->check(CLI::Range(1, kDefaultEnumerationCap));
  scan_cmd->add_option("--max-n", o.max_n, "Largest order")->check(CLI::Range(1, kDefaultEnumerationCap));
  scan_cmd->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  scan_cmd->add_option("--checkpoint", o.checkpoint,
                       "Checkpoint file (default: $CORDIAL_CHECKPOINT_DIR/scan-k<k>-<method>-<min-n>.ckpt when set)");
  scan_cmd->add_option("--out", o.out, "Write <out>.csv and <out>.json instead of CSV on stdout");
  scan_cmd->add_flag("--timing", o.timing, "Add timing columns");

  auto* tables = app.add_subcommand("tables-check", "Validate the lookup tables");
  tables->add_option("--tables", o.tables_path, "Table file (default: the built-in tables)")->check(CLI::ExistingFile);

  auto* dot = app.add_subcommand("dot", "Graphviz export of a labeled tree");
  dot->add_option("tree", o.tree_path, "Tree file")->required()->check(CLI::ExistingFile);
  dot->add_option("--labeling", o.labeling_path, "Labeling file (default: construct one)")->check(CLI::ExistingFile);
  add_k(dot);
  dot->add_option("--method", o.method, "constructive (k = 6) or search")
      ->check(CLI::IsMember({"constructive", "search"}));
  add_format(dot);
  add_out(dot);

  auto* rnd = app.add_subcommand("random", "Uniform random labeled tree");
  rnd->add_option("--n", o.n, "Order")->required();
  rnd->add_option("--seed", o.seed, "Seed");
  add_format(rnd);
  add_out(rnd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (o.min_n > o.max_n) throw std::invalid_argument("--min-n exceeds --max-n");
    if (*label) return cmd_label(o);
    if (*verify) return cmd_verify(o);
    if (*scan_cmd) return cmd_scan(o);
    if (*tables) return cmd_tables_check(o);
    if (*dot) return cmd_dot(o);
    if (*rnd) return cmd_random(o);
  } catch (const UnsupportedK& e) {
    std::cerr << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
  } catch (const LabelingError& e) {
    std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
  } catch (const CheckpointCorrupt& e) {
    std::cerr << "CheckpointCorrupt: " << e.what() << "\n";
  } catch (const TableParseError& e) {
    std::cerr << "TableParseError: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
