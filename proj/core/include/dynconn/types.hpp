#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dynconn {

using VertexId = std::uint32_t;

enum class ErrorCode {
  SelfLoop,
  DuplicateEdge,
  MissingEdge,
  LevelSkip,
  UnknownVertex,
  AlreadyConnected,
  NotTreeEdge,
  EmptyWeight,
  RankMismatch,
  UnsortedInput,
  NotAChild,
  BitUnset,
  TooFewUpdates,
  InfeasibleM,
  UnknownStructure,
  IoError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Normalized unordered pair: a < b.
struct EdgeKey {
  VertexId a = 0;
  VertexId b = 0;

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;

  std::uint64_t packed() const { return (std::uint64_t{a} << 32) | b; }
};

EdgeKey normalize_edge(VertexId u, VertexId v);

enum class EdgeKind : std::uint8_t { Tree, NonTree };

struct EdgeRecord {
  EdgeKey key;
  int level = 0;
  EdgeKind kind = EdgeKind::NonTree;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

// Result of classify_edge; absent edges carry no level.
struct EdgeClass {
  enum class Kind : std::uint8_t { Absent, Tree, NonTree };
  Kind kind = Kind::Absent;
  int level = 0;

  static EdgeClass absent() { return {}; }
  static EdgeClass tree(int level) { return {Kind::Tree, level}; }
  static EdgeClass nontree(int level) { return {Kind::NonTree, level}; }
  friend bool operator==(const EdgeClass&, const EdgeClass&) = default;
};

enum class OutcomeKind : std::uint8_t {
  NewTreeEdge,
  NewNonTreeEdge,
  DuplicateIgnored,
  NonTreeRemoved,
  SplitReconnected,
  SplitPermanent,
  MissingIgnored,
};

std::string_view to_string(OutcomeKind kind);

struct UpdateOutcome {
  OutcomeKind kind = OutcomeKind::MissingIgnored;
  std::optional<EdgeKey> replacement;

  static UpdateOutcome of(OutcomeKind k) { return {k, std::nullopt}; }
  static UpdateOutcome reconnected(EdgeKey e) { return {OutcomeKind::SplitReconnected, e}; }
  friend bool operator==(const UpdateOutcome&, const UpdateOutcome&) = default;
};

// floor(log2(x)) for x >= 1; returns -1 for x == 0.
inline int floor_log2(std::uint64_t x) {
  return x == 0 ? -1 : 63 - __builtin_clzll(x);
}

inline int ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : floor_log2(x - 1) + 1;
}

}  // namespace dynconn

template <>
struct std::hash<dynconn::EdgeKey> {
  std::size_t operator()(const dynconn::EdgeKey& e) const noexcept {
    std::uint64_t z = e.packed() + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};
