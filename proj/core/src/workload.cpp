#include "dynconn/workload.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "dynconn/rng.hpp"

namespace dynconn {

namespace {

constexpr std::uint64_t kDeleteStream = 0x64656c;
constexpr std::uint64_t kShuffleStream = 0x736875;
constexpr std::uint64_t kQueryStream = 0x717279;

// Edge set with O(1) uniform sampling and removal.
class PresentEdges {
 public:
  bool contains(EdgeKey e) const { return index_.count(e.packed()) > 0; }
  std::size_t size() const { return edges_.size(); }
  void add(EdgeKey e) {
    index_.emplace(e.packed(), edges_.size());
    edges_.push_back(e);
  }
  EdgeKey remove_at(std::size_t k) {
    const EdgeKey e = edges_[k];
    index_[edges_.back().packed()] = k;
    edges_[k] = edges_.back();
    edges_.pop_back();
    index_.erase(e.packed());
    return e;
  }
  void remove(EdgeKey e) {
    auto it = index_.find(e.packed());
    if (it != index_.end()) remove_at(it->second);
  }

 private:
  std::vector<EdgeKey> edges_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

}  // namespace

std::vector<Operation> generate_updates(const std::vector<EdgeKey>& input, const WorkloadConfig& cfg) {
  if (cfg.u_r < 1) throw Error(ErrorCode::InvalidArgument, "u_r must be at least 1");
  std::vector<EdgeKey> edges = input;
  if (cfg.shuffle) {
    Rng shuffle_rng(derive_seed(cfg.seed, kShuffleStream));
    for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[uniform_index(shuffle_rng, i)]);
  }
  Rng rng(derive_seed(cfg.seed, kDeleteStream));
  PresentEdges present;
  std::vector<Operation> ops;
  ops.reserve(edges.size() + edges.size() / static_cast<std::size_t>(cfg.u_r) + 1);
  std::size_t inserted = 0;
  for (const EdgeKey& raw : edges) {
    const EdgeKey e = normalize_edge(raw.a, raw.b);
    if (present.contains(e)) continue;
    present.add(e);
    ops.push_back(Operation::insert(e));
    if (++inserted % static_cast<std::size_t>(cfg.u_r) == 0 && present.size() > 0)
      ops.push_back(Operation::erase(present.remove_at(uniform_index(rng, present.size()))));
  }
  return ops;
}

std::vector<Operation> place_testing_points(const std::vector<Operation>& ops, const WorkloadConfig& cfg) {
  std::size_t updates = 0;
  for (const Operation& op : ops) updates += op.type == Operation::Type::Query ? 0 : 1;
  if (cfg.test_num < 1 || updates < static_cast<std::size_t>(cfg.test_num))
    throw Error(ErrorCode::TooFewUpdates,
                std::to_string(updates) + " updates cannot host " + std::to_string(cfg.test_num) + " testing points");
  const std::size_t every = updates / static_cast<std::size_t>(cfg.test_num);
  std::vector<Operation> out;
  out.reserve(ops.size() + static_cast<std::size_t>(cfg.test_num));
  std::size_t seen = 0, placed = 0;
  for (const Operation& op : ops) {
    if (op.type == Operation::Type::Query) continue;
    out.push_back(op);
    if (++seen % every == 0 && placed < static_cast<std::size_t>(cfg.test_num)) {
      out.push_back(Operation::query(static_cast<std::uint32_t>(cfg.queries_per_point)));
      ++placed;
    }
  }
  return out;
}

std::vector<std::pair<VertexId, VertexId>> generate_query_pairs(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<std::pair<VertexId, VertexId>> out;
  if (count == 0) return out;
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "query pairs need at least two vertices");
  Rng rng(seed);
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto u = static_cast<VertexId>(uniform_index(rng, n));
    auto v = static_cast<VertexId>(uniform_index(rng, n - 1));
    if (v >= u) ++v;
    out.emplace_back(u, v);
  }
  return out;
}

std::uint64_t query_batch_seed(std::uint64_t seed, std::size_t batch) {
  return derive_seed(seed, kQueryStream + batch);
}

std::vector<Operation> generate_churn(std::size_t n, std::size_t m, std::size_t num_ops, int u_r, std::uint64_t seed) {
  if (n < 2 || m < 1 || m > n * (n - 1) / 2) throw Error(ErrorCode::InfeasibleM, "churn target m is infeasible");
  if (u_r < 1) throw Error(ErrorCode::InvalidArgument, "u_r must be at least 1");
  Rng rng(seed);
  PresentEdges present;
  std::vector<Operation> ops;
  ops.reserve(num_ops);
  std::size_t inserted = 0;
  auto erase_random = [&] { ops.push_back(Operation::erase(present.remove_at(uniform_index(rng, present.size())))); };
  while (ops.size() < num_ops) {
    if (present.size() >= m) {
      erase_random();
      continue;
    }
    EdgeKey e;
    do {
      const auto u = static_cast<VertexId>(uniform_index(rng, n));
      auto v = static_cast<VertexId>(uniform_index(rng, n - 1));
      if (v >= u) ++v;
      e = normalize_edge(u, v);
    } while (present.contains(e));
    present.add(e);
    ops.push_back(Operation::insert(e));
    if (++inserted % static_cast<std::size_t>(u_r) == 0 && ops.size() < num_ops) erase_random();
  }
  return ops;
}

std::size_t Workload::vertex_count() const {
  std::size_t n = 0;
  for (const Operation& op : ops)
    if (op.type != Operation::Type::Query) n = std::max<std::size_t>(n, static_cast<std::size_t>(op.edge.b) + 1);
  return n;
}

std::string serialize_workload(const Workload& w) {
  std::string out = "# dynconn-workload v1 seed=" + std::to_string(w.seed) + " ur=" + std::to_string(w.u_r) + "\n";
  for (const Operation& op : w.ops) {
    switch (op.type) {
      case Operation::Type::Insert:
        out += "I " + std::to_string(op.edge.a) + " " + std::to_string(op.edge.b) + "\n";
        break;
      case Operation::Type::Delete:
        out += "D " + std::to_string(op.edge.a) + " " + std::to_string(op.edge.b) + "\n";
        break;
      case Operation::Type::Query:
        out += "Q " + std::to_string(op.count) + "\n";
        break;
    }
  }
  return out;
}

namespace {

template <class T>
T parse_number(std::string_view s, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidArgument, "workload line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Workload parse_workload(std::string_view text) {
  Workload w;
  bool header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "#") {
      if (!header && tok.size() >= 3 && tok[1] == "dynconn-workload") {
        if (tok[2] != "v1") throw Error(ErrorCode::InvalidArgument, "unsupported workload version");
        for (std::size_t k = 3; k < tok.size(); ++k) {
          if (tok[k].substr(0, 5) == "seed=") w.seed = parse_number<std::uint64_t>(tok[k].substr(5), line_no);
          if (tok[k].substr(0, 3) == "ur=") w.u_r = parse_number<int>(tok[k].substr(3), line_no);
        }
        header = true;
      }
      continue;
    }
    if ((tok[0] == "I" || tok[0] == "D") && tok.size() == 3) {
      const EdgeKey e = normalize_edge(parse_number<VertexId>(tok[1], line_no), parse_number<VertexId>(tok[2], line_no));
      w.ops.push_back(tok[0] == "I" ? Operation::insert(e) : Operation::erase(e));
    } else if (tok[0] == "Q" && tok.size() == 2) {
      w.ops.push_back(Operation::query(parse_number<std::uint32_t>(tok[1], line_no)));
    } else {
      throw Error(ErrorCode::InvalidArgument, "workload line " + std::to_string(line_no) + " is malformed");
    }
  }
  if (!header) throw Error(ErrorCode::InvalidArgument, "missing dynconn-workload header");
  return w;
}

void write_workload(const Workload& w, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << serialize_workload(w);
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

Workload read_workload(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_workload(ss.str());
}

}  // namespace dynconn
