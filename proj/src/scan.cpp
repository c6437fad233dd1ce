#include "cordial/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "cordial/builder.hpp"
#include "cordial/labeling.hpp"
#include "cordial/oracle.hpp"

namespace cordial {

const char* to_string(ScanMethod m) {
  switch (m) {
    case ScanMethod::Backtrack: return "backtrack";
    case ScanMethod::Constructive: return "constructive";
  }
  return "unknown";
}

ScanMethod scan_method_from_string(const std::string& s) {
  if (s == "backtrack" || s == "search") return ScanMethod::Backtrack;
  if (s == "constructive") return ScanMethod::Constructive;
  throw std::invalid_argument("unknown method '" + s + "'");
}

std::uint64_t ScanReport::trees() const {
  std::uint64_t s = 0;
  for (const auto& r : rows) s += r.trees;
  return s;
}

std::uint64_t ScanReport::cordial_count() const {
  std::uint64_t s = 0;
  for (const auto& r : rows) s += r.cordial;
  return s;
}

std::uint64_t ScanReport::fallback_steps() const {
  std::uint64_t s = 0;
  for (const auto& r : rows) s += r.fallback_steps;
  return s;
}

std::uint64_t ScanReport::total_steps() const {
  std::uint64_t s = 0;
  for (const auto& r : rows) s += r.total_steps;
  return s;
}

std::string compact_edges(const Tree& t) {
  std::string out;
  for (const auto& e : t.edges()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(e.u) + "-" + std::to_string(e.v);
  }
  return out;
}

namespace {

struct TreeResult {
  bool cordial = false;
  std::uint64_t fallback_steps = 0;
  std::uint64_t total_steps = 0;
  std::string edges;  // kept for failures only
};

TreeResult check_tree(const Tree& t, const ScanOptions& opt) {
  TreeResult r;
  if (opt.method == ScanMethod::Backtrack) {
    const auto f = backtrack_k_cordial(t, opt.k);
    r.cordial = f.has_value() && verify_cordial(t, *f).cordial;
  } else {
    try {
      const auto [f, trace] = label_six_cordial(t);
      r.cordial = verify_cordial(t, f, 6).cordial;
      r.fallback_steps = static_cast<std::uint64_t>(trace.fallback_count());
      r.total_steps = trace.steps.size();
    } catch (const std::exception&) {
      r.cordial = false;
    }
  }
  if (!r.cordial) r.edges = compact_edges(t);
  return r;
}

std::string header_line(const ScanOptions& opt) {
  return std::string("cordial-scan-checkpoint 1 k=") + std::to_string(opt.k) + " method=" + to_string(opt.method);
}

struct Record {
  std::uint64_t index = 0;
  TreeResult result;
};

struct Finished {
  ScanRow row;
  std::vector<UnsatInstance> unsat;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::uint64_t parse_u64(const std::string& s, bool& ok) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    ok = false;
    return 0;
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    ok = false;
    return 0;
  }
}

double parse_seconds(const std::string& s, bool& ok) {
  try {
    std::size_t used = 0;
    const double d = std::stod(s, &used);
    if (used != s.size() || d < 0) ok = false;
    return d;
  } catch (const std::exception&) {
    ok = false;
    return 0;
  }
}

// Reads an existing checkpoint. A trailing line without a newline is a torn
// write from an interrupted run; it is cut off so appends stay well formed.
std::map<int, Finished> load_checkpoint(const std::string& path, const ScanOptions& opt) {
  std::map<int, Finished> done;
  namespace fs = std::filesystem;
  if (!fs::exists(path)) return done;

  std::string text;
  {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto last_nl = text.rfind('\n');
  const std::size_t complete = last_nl == std::string::npos ? 0 : last_nl + 1;
  if (complete != text.size()) {
    fs::resize_file(path, complete);
    text.resize(complete);
  }
  if (text.empty()) return done;

  std::map<int, std::map<std::uint64_t, TreeResult>> records;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != header_line(opt)) {
        throw CheckpointCorrupt(path, line_no, "header '" + line + "' does not match '" + header_line(opt) + "'");
      }
      continue;
    }
    const auto fields = split(line, ',');
    bool ok = true;
    if (!fields.empty() && fields[0] == "done") {
      if (fields.size() != 4) throw CheckpointCorrupt(path, line_no, "malformed completion marker");
      const auto n = static_cast<int>(parse_u64(fields[1], ok));
      const auto trees = parse_u64(fields[2], ok);
      const double seconds = parse_seconds(fields[3], ok);
      if (!ok) throw CheckpointCorrupt(path, line_no, "malformed completion marker");
      const auto& recs = records[n];
      if (recs.size() != trees || (trees > 0 && recs.rbegin()->first != trees - 1)) {
        throw CheckpointCorrupt(path, line_no, "completion marker for n=" + std::to_string(n) + " claims " +
                                                   std::to_string(trees) + " trees but " +
                                                   std::to_string(recs.size()) + " records precede it");
      }
      Finished fin;
      fin.row.n = n;
      fin.row.trees = trees;
      fin.row.seconds = seconds;
      fin.row.resumed = true;
      for (const auto& [index, r] : recs) {
        if (r.cordial) {
          ++fin.row.cordial;
        } else {
          ++fin.row.unsat;
          fin.unsat.push_back({n, index, r.edges});
        }
        fin.row.fallback_steps += r.fallback_steps;
        fin.row.total_steps += r.total_steps;
      }
      done[n] = std::move(fin);
      continue;
    }
    if (fields.size() < 5 || fields.size() > 6) throw CheckpointCorrupt(path, line_no, "malformed record '" + line + "'");
    const auto n = static_cast<int>(parse_u64(fields[0], ok));
    Record rec;
    rec.index = parse_u64(fields[1], ok);
    if (fields[2] == "sat") {
      rec.result.cordial = true;
    } else if (fields[2] != "unsat") {
      ok = false;
    }
    rec.result.fallback_steps = parse_u64(fields[3], ok);
    rec.result.total_steps = parse_u64(fields[4], ok);
    if (fields.size() == 6) rec.result.edges = fields[5];
    if (!ok || rec.result.cordial == (fields.size() == 6)) {
      throw CheckpointCorrupt(path, line_no, "malformed record '" + line + "'");
    }
    records[n][rec.index] = rec.result;
  }
  return done;
}

unsigned worker_count(int jobs) {
  if (jobs > 0) return static_cast<unsigned>(jobs);
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace

ScanReport scan(const ScanOptions& opt) {
  if (opt.k < 1) throw std::invalid_argument("k must be positive");
  if (opt.method == ScanMethod::Constructive && opt.k != 6) {
    throw std::invalid_argument("the constructive method only handles k = 6");
  }
  const auto wall_start = std::chrono::steady_clock::now();

  ScanReport report;
  report.k = opt.k;
  report.n_min = opt.n_min;
  report.n_max = opt.n_max;
  report.method = opt.method;

  std::map<int, Finished> done;
  std::ofstream ck;
  if (!opt.checkpoint.empty()) {
    done = load_checkpoint(opt.checkpoint, opt);
    const bool fresh = !std::filesystem::exists(opt.checkpoint) || std::filesystem::file_size(opt.checkpoint) == 0;
    ck.open(opt.checkpoint, std::ios::app | std::ios::binary);
    if (!ck) throw std::runtime_error("cannot open checkpoint " + opt.checkpoint);
    if (fresh) ck << header_line(opt) << '\n' << std::flush;
  }

  const unsigned workers = worker_count(opt.jobs);
  for (int n = opt.n_min; n <= opt.n_max; ++n) {
    if (auto it = done.find(n); it != done.end()) {
      report.rows.push_back(it->second.row);
      report.unsat.insert(report.unsat.end(), it->second.unsat.begin(), it->second.unsat.end());
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto trees = enumerate_free_trees(n, opt.cap);
    std::vector<TreeResult> results(trees.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next.fetch_add(1); i < trees.size(); i = next.fetch_add(1)) {
        results[i] = check_tree(trees[i], opt);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < std::min<std::size_t>(workers, trees.size()); ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    ScanRow row;
    row.n = n;
    row.trees = trees.size();
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      if (r.cordial) {
        ++row.cordial;
      } else {
        ++row.unsat;
        report.unsat.push_back({n, i, r.edges});
      }
      row.fallback_steps += r.fallback_steps;
      row.total_steps += r.total_steps;
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.rows.push_back(row);

    if (ck.is_open()) {
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        ck << n << ',' << i << ',' << (r.cordial ? "sat" : "unsat") << ',' << r.fallback_steps << ','
           << r.total_steps;
        if (!r.cordial) ck << ',' << r.edges;
        ck << '\n';
      }
      ck << "done," << n << ',' << row.trees << ',' << row.seconds << '\n' << std::flush;
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return report;
}

}  // namespace cordial
