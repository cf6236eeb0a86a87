#include "dynconn/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "dynconn/rng.hpp"

namespace dynconn {

namespace {

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::InvalidArgument, "bad integer '" + std::string(s) + "' in dataset spec");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const std::size_t k = s.find(sep);
    out.push_back(s.substr(0, k));
    if (k == std::string_view::npos) return out;
    s = s.substr(k + 1);
  }
}

std::uint64_t max_edges(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// Distinct uniform pairs, drawn until `edges` holds m of them.
void fill_uniform(std::uint64_t n, std::uint64_t m, Rng& rng, std::vector<EdgeKey>& edges,
                  std::unordered_set<std::uint64_t>& seen) {
  while (edges.size() < m) {
    const auto u = static_cast<VertexId>(uniform_index(rng, n));
    auto v = static_cast<VertexId>(uniform_index(rng, n - 1));
    if (v >= u) ++v;
    const EdgeKey e = normalize_edge(u, v);
    if (seen.insert(e.packed()).second) edges.push_back(e);
  }
}

// Growth with k links per new vertex; each endpoint is degree-proportional
// with probability p and uniform otherwise, giving tail exponent 1 + 1/p.
std::vector<EdgeKey> power_law(std::uint64_t n, std::uint64_t m, double gamma, Rng& rng) {
  if (gamma <= 2.0) throw Error(ErrorCode::InvalidArgument, "power-law exponent must exceed 2");
  const double p = 1.0 / (gamma - 1.0);
  const std::uint64_t k = std::max<std::uint64_t>(1, (m + n / 2) / std::max<std::uint64_t>(n, 1));
  std::vector<EdgeKey> edges;
  std::unordered_set<std::uint64_t> seen;
  std::vector<VertexId> endpoints;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const std::uint64_t seed_size = std::min<std::uint64_t>(n, k + 1);
  for (VertexId u = 0; u < seed_size; ++u)
    for (VertexId v = u + 1; v < seed_size; ++v) {
      edges.push_back({u, v});
      seen.insert(EdgeKey{u, v}.packed());
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  for (std::uint64_t t = seed_size; t < n; ++t) {
    const auto x = static_cast<VertexId>(t);
    const std::uint64_t want = std::min<std::uint64_t>(k, t);
    std::uint64_t got = 0;
    for (std::uint64_t tries = 0; got < want && tries < 16 * want; ++tries) {
      VertexId y;
      if (!endpoints.empty() && coin(rng) < p)
        y = endpoints[uniform_index(rng, endpoints.size())];
      else
        y = static_cast<VertexId>(uniform_index(rng, t));
      // The endpoint pool already holds x once x has its first link.
      if (y == x) continue;
      const EdgeKey e{y, x};
      if (!seen.insert(e.packed()).second) continue;
      edges.push_back(e);
      endpoints.push_back(x);
      endpoints.push_back(y);
      ++got;
    }
  }
  if (edges.size() > m) {
    // Drop a uniform subset, keeping generation order.
    std::vector<std::size_t> idx(edges.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[uniform_index(rng, i)]);
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    std::vector<EdgeKey> kept;
    kept.reserve(m);
    for (std::size_t i : idx) kept.push_back(edges[i]);
    return kept;
  }
  fill_uniform(n, m, rng, edges, seen);
  return edges;
}

}  // namespace

std::string DatasetSpec::label() const {
  switch (family) {
    case Family::File: return "file:" + path;
    case Family::Star: return "star:" + std::to_string(n);
    case Family::Path: return "path:" + std::to_string(n);
    case Family::Complete: return "complete:" + std::to_string(n);
    case Family::Gnm: return "gnm:" + std::to_string(n) + "," + std::to_string(m);
    case Family::PowerLaw: {
      std::ostringstream ss;
      ss << "powerlaw:" << n << "," << m << "," << exponent;
      return ss.str();
    }
  }
  return "?";
}

DatasetSpec parse_dataset_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::InvalidArgument, "dataset spec needs a family prefix");
  const std::string_view family = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  DatasetSpec s;
  if (family == "file") {
    if (rest.empty()) throw Error(ErrorCode::InvalidArgument, "file dataset needs a path");
    s.family = DatasetSpec::Family::File;
    s.path = std::string(rest);
    return s;
  }
  const auto parts = split(rest, ',');
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi)
      throw Error(ErrorCode::InvalidArgument, "wrong parameter count in '" + std::string(text) + "'");
  };
  if (family == "star" || family == "path" || family == "complete") {
    need(1, 1);
    s.family = family == "star" ? DatasetSpec::Family::Star
               : family == "path" ? DatasetSpec::Family::Path
                                  : DatasetSpec::Family::Complete;
    s.n = parse_u64(parts[0]);
  } else if (family == "gnm") {
    need(2, 2);
    s.family = DatasetSpec::Family::Gnm;
    s.n = parse_u64(parts[0]);
    s.m = parse_u64(parts[1]);
  } else if (family == "powerlaw") {
    need(2, 3);
    s.family = DatasetSpec::Family::PowerLaw;
    s.n = parse_u64(parts[0]);
    s.m = parse_u64(parts[1]);
    if (parts.size() == 3) {
      try {
        s.exponent = std::stod(std::string(parts[2]));
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "bad exponent in '" + std::string(text) + "'");
      }
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown dataset family '" + std::string(family) + "'");
  }
  if (s.n == 0 || s.n > 0xffffffffULL) throw Error(ErrorCode::InvalidArgument, "vertex count out of range");
  return s;
}

std::vector<EdgeKey> gen_graph(const DatasetSpec& spec, std::uint64_t seed) {
  std::vector<EdgeKey> edges;
  const std::uint64_t n = spec.n;
  switch (spec.family) {
    case DatasetSpec::Family::File:
      return load_edge_list(spec.path);
    case DatasetSpec::Family::Star:
      for (VertexId v = 1; v < n; ++v) edges.push_back({0, v});
      return edges;
    case DatasetSpec::Family::Path:
      for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
      return edges;
    case DatasetSpec::Family::Complete:
      for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) edges.push_back({u, v});
      return edges;
    case DatasetSpec::Family::Gnm: {
      if (spec.m > max_edges(n)) throw Error(ErrorCode::InfeasibleM, "m exceeds n(n-1)/2");
      Rng rng(seed);
      std::unordered_set<std::uint64_t> seen;
      edges.reserve(spec.m);
      fill_uniform(n, spec.m, rng, edges, seen);
      return edges;
    }
    case DatasetSpec::Family::PowerLaw: {
      if (spec.m > max_edges(n)) throw Error(ErrorCode::InfeasibleM, "m exceeds n(n-1)/2");
      Rng rng(seed);
      return power_law(n, spec.m, spec.exponent, rng);
    }
  }
  return edges;
}

std::vector<EdgeKey> parse_edge_list(std::string_view text) {
  std::unordered_map<std::uint64_t, VertexId> remap;
  std::unordered_set<std::uint64_t> seen;
  std::vector<EdgeKey> edges;
  auto id_of = [&](std::uint64_t raw) {
    auto [it, fresh] = remap.emplace(raw, static_cast<VertexId>(remap.size()));
    return it->second;
  };
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::size_t hash = line.find_first_of("#%");
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> tok;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::string_view(" \t\r,").find(line[i]) != std::string_view::npos) ++i;
      std::size_t j = i;
      while (j < line.size() && std::string_view(" \t\r,").find(line[j]) == std::string_view::npos) ++j;
      if (j > i) tok.push_back(line.substr(i, j - i));
      i = j;
    }
    if (tok.empty()) continue;
    if (tok.size() < 2)
      throw Error(ErrorCode::InvalidArgument, "edge list line " + std::to_string(line_no) + " has one endpoint");
    const std::uint64_t ra = parse_u64(tok[0]);
    const std::uint64_t rb = parse_u64(tok[1]);
    if (ra == rb) continue;
    const VertexId a = id_of(ra);
    const VertexId b = id_of(rb);
    const EdgeKey e = normalize_edge(a, b);
    if (seen.insert(e.packed()).second) edges.push_back(e);
  }
  return edges;
}

std::vector<EdgeKey> load_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_edge_list(ss.str());
}

}  // namespace dynconn
