#pragma once

#include <cstddef>
#include <string>

namespace dynconn {

// Deterministic byte costs charged per declared node field and container.
struct MemoryModel {
  std::size_t node_base = 16;
  std::size_t link = 8;
  std::size_t integer = 8;
  std::size_t set_base = 64;
  std::size_t set_per_entry = 8;
  std::size_t map_base = 64;
  std::size_t map_per_entry = 16;
  std::size_t bitmap64 = 8;

  std::size_t set_bytes(std::size_t entries) const { return set_base + set_per_entry * entries; }
  std::size_t map_bytes(std::size_t entries) const { return map_base + map_per_entry * entries; }

  friend bool operator==(const MemoryModel&, const MemoryModel&) = default;
};

// key=value lines; unknown keys and negative values raise Error(InvalidArgument).
MemoryModel parse_memory_model(const std::string& text, MemoryModel base = {});
MemoryModel load_memory_model(const std::string& path);
// Defaults, overridden by the file named in DYNCONN_MEMMODEL when set.
MemoryModel memory_model_from_env();

}  // namespace dynconn
