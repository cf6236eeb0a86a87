#include "dynconn/memory_model.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dynconn/types.hpp"

namespace dynconn {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t* field(MemoryModel& m, const std::string& key) {
  if (key == "bytes_per_node_base" || key == "node_base") return &m.node_base;
  if (key == "bytes_per_link" || key == "link") return &m.link;
  if (key == "bytes_per_int" || key == "int") return &m.integer;
  if (key == "set_base") return &m.set_base;
  if (key == "set_per_entry") return &m.set_per_entry;
  if (key == "map_base") return &m.map_base;
  if (key == "map_per_entry") return &m.map_per_entry;
  if (key == "bitmap64_bytes" || key == "bitmap64") return &m.bitmap64;
  return nullptr;
}

}  // namespace

MemoryModel parse_memory_model(const std::string& text, MemoryModel base) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "memory model line without '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::size_t* slot = field(base, key);
    if (!slot) throw Error(ErrorCode::InvalidArgument, "unknown memory model key: " + key);
    long long parsed = 0;
    try {
      std::size_t used = 0;
      parsed = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad memory model value for " + key + ": " + value);
    }
    if (parsed < 0) throw Error(ErrorCode::InvalidArgument, "negative memory model value for " + key);
    *slot = static_cast<std::size_t>(parsed);
  }
  return base;
}

MemoryModel load_memory_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open memory model file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_memory_model(buf.str());
}

MemoryModel memory_model_from_env() {
  const char* path = std::getenv("DYNCONN_MEMMODEL");
  if (!path || !*path) return {};
  return load_memory_model(path);
}

}  // namespace dynconn
