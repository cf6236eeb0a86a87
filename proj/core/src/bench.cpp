#include "dynconn/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dynconn {

namespace {

using Clock = std::chrono::steady_clock;

struct Timings {
  std::vector<std::uint64_t> ns;
  std::uint64_t total = 0;
  void add(std::uint64_t t) {
    ns.push_back(t);
    total += t;
  }
};

std::uint64_t elapsed_ns(Clock::time_point a, Clock::time_point b) {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
}

// Nearest-rank 99th percentile.
std::uint64_t p99(std::vector<std::uint64_t>& v) {
  if (v.empty()) return 0;
  const std::size_t rank = (v.size() * 99 + 99) / 100;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rank - 1), v.end());
  return v[rank - 1];
}

std::string format_mean(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

BenchReport run_benchmark(const Workload& workload, StructureKind kind, const BenchOptions& options) {
  auto s = make_structure(kind, options.structure);
  const std::size_t n = workload.vertex_count();
  Timings ins, del, qry;
  bool timed_out = false;
  const Clock::time_point start = Clock::now();
  const auto budget = std::chrono::duration<double>(options.timeout_secs);
  std::size_t batch = 0;
  volatile bool sink = false;
  for (const Operation& op : workload.ops) {
    if (options.timeout_secs > 0 && Clock::now() - start > budget) {
      timed_out = true;
      break;
    }
    switch (op.type) {
      case Operation::Type::Insert: {
        const auto t0 = Clock::now();
        s->insert_edge(op.edge.a, op.edge.b);
        ins.add(elapsed_ns(t0, Clock::now()));
        break;
      }
      case Operation::Type::Delete: {
        const auto t0 = Clock::now();
        s->delete_edge(op.edge.a, op.edge.b);
        del.add(elapsed_ns(t0, Clock::now()));
        break;
      }
      case Operation::Type::Query: {
        const auto pairs = generate_query_pairs(n, n >= 2 ? op.count : 0, query_batch_seed(workload.seed, batch++));
        for (const auto& [u, v] : pairs) {
          const auto t0 = Clock::now();
          sink = s->connected(u, v);
          qry.add(elapsed_ns(t0, Clock::now()));
        }
        break;
      }
    }
  }
  (void)sink;

  const std::size_t memory = s->memory_bytes(options.memory);
  const int height = s->max_height();
  BenchReport report;
  auto row = [&](const char* cls, Timings& t) {
    BenchRow r;
    r.structure = std::string(display_name(kind));
    r.dataset = options.dataset_label;
    r.u_r = workload.u_r;
    r.op_class = cls;
    r.count = t.ns.size();
    r.total_ns = t.total;
    r.mean_ns = t.ns.empty() ? 0.0 : static_cast<double>(t.total) / static_cast<double>(t.ns.size());
    r.p99_ns = p99(t.ns);
    r.memory_bytes = memory;
    r.max_height = height;
    r.seed = workload.seed;
    r.status = timed_out ? "timeout" : "ok";
    report.rows.push_back(std::move(r));
  };
  row("insert", ins);
  if (!del.ns.empty()) row("delete", del);
  if (!qry.ns.empty()) row("query", qry);
  return report;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"structure", "dataset",      "u_r",        "op_class",
                                             "count",     "total_ns",     "mean_ns",    "p99_ns",
                                             "memory_bytes", "max_height", "seed",      "status"};
  return cols;
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

template <class T>
T to_number(const std::string& s) {
  std::istringstream ss(s);
  T v{};
  ss >> v;
  if (ss.fail() || !ss.eof()) throw Error(ErrorCode::InvalidArgument, "bad CSV number '" + s + "'");
  return v;
}

}  // namespace

std::string format_csv(const BenchReport& report, bool header) {
  std::ostringstream out;
  if (header) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
  }
  for (const BenchRow& r : report.rows) {
    out << quote(r.structure) << ',' << quote(r.dataset) << ',' << r.u_r << ',' << r.op_class << ',' << r.count << ','
        << r.total_ns << ',' << format_mean(r.mean_ns) << ',' << r.p99_ns << ',' << r.memory_bytes << ','
        << r.max_height << ',' << r.seed << ',' << r.status << '\n';
  }
  return out.str();
}

void emit_csv(const BenchReport& report, const std::string& path, bool append) {
  std::error_code ec;
  const bool has_content = append && std::filesystem::exists(path, ec) && std::filesystem::file_size(path, ec) > 0;
  std::ofstream out(path, append ? std::ios::app | std::ios::binary : std::ios::trunc | std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << format_csv(report, !has_content);
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

BenchReport parse_csv(std::string_view text) {
  BenchReport report;
  bool first = true;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (first && !f.empty() && f[0] == "structure") {
      first = false;
      continue;
    }
    first = false;
    if (f.size() != csv_columns().size()) throw Error(ErrorCode::InvalidArgument, "CSV row has wrong column count");
    BenchRow r;
    r.structure = f[0];
    r.dataset = f[1];
    r.u_r = to_number<int>(f[2]);
    r.op_class = f[3];
    r.count = to_number<std::uint64_t>(f[4]);
    r.total_ns = to_number<std::uint64_t>(f[5]);
    r.mean_ns = to_number<double>(f[6]);
    r.p99_ns = to_number<std::uint64_t>(f[7]);
    r.memory_bytes = to_number<std::size_t>(f[8]);
    r.max_height = to_number<int>(f[9]);
    r.seed = to_number<std::uint64_t>(f[10]);
    r.status = f[11];
    report.rows.push_back(std::move(r));
  }
  return report;
}

}  // namespace dynconn
