#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dynconn/types.hpp"

namespace dynconn {

struct DatasetSpec {
  enum class Family { File, Star, Path, Complete, Gnm, PowerLaw };
  Family family = Family::Path;
  std::string path;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double exponent = 2.5;

  // Canonical textual form, e.g. "gnm:100,300".
  std::string label() const;
};

// Accepts file:PATH, star:N, path:N, complete:N, gnm:N,M and
// powerlaw:N,M[,GAMMA]. Throws InvalidArgument.
DatasetSpec parse_dataset_spec(std::string_view text);

// Simple graph for a parsed dataset. Throws InfeasibleM when m exceeds n(n-1)/2.
std::vector<EdgeKey> gen_graph(const DatasetSpec& spec, std::uint64_t seed);

// Whitespace-separated edge list; '#' and '%' start comments. Self-loops
// and duplicates are dropped and ids are remapped densely in order of first
// appearance. Throws IoError.
std::vector<EdgeKey> load_edge_list(const std::string& path);
std::vector<EdgeKey> parse_edge_list(std::string_view text);

}  // namespace dynconn
