#include "dynconn/types.hpp"

namespace dynconn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::LevelSkip: return "LevelSkip";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::AlreadyConnected: return "AlreadyConnected";
    case ErrorCode::NotTreeEdge: return "NotTreeEdge";
    case ErrorCode::EmptyWeight: return "EmptyWeight";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::UnsortedInput: return "UnsortedInput";
    case ErrorCode::NotAChild: return "NotAChild";
    case ErrorCode::BitUnset: return "BitUnset";
    case ErrorCode::TooFewUpdates: return "TooFewUpdates";
    case ErrorCode::InfeasibleM: return "InfeasibleM";
    case ErrorCode::UnknownStructure: return "UnknownStructure";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

EdgeKey normalize_edge(VertexId u, VertexId v) {
  if (u == v) throw Error(ErrorCode::SelfLoop, "self-loop on vertex " + std::to_string(u));
  return u < v ? EdgeKey{u, v} : EdgeKey{v, u};
}

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::NewTreeEdge: return "NewTreeEdge";
    case OutcomeKind::NewNonTreeEdge: return "NewNonTreeEdge";
    case OutcomeKind::DuplicateIgnored: return "DuplicateIgnored";
    case OutcomeKind::NonTreeRemoved: return "NonTreeRemoved";
    case OutcomeKind::SplitReconnected: return "SplitReconnected";
    case OutcomeKind::SplitPermanent: return "SplitPermanent";
    case OutcomeKind::MissingIgnored: return "MissingIgnored";
  }
  return "Unknown";
}

}  // namespace dynconn
