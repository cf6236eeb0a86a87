#include "dynconn/structures.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "dynconn/dtree.hpp"
#include "dynconn/euler_structures.hpp"
#include "dynconn/lct.hpp"
#include "dynconn/local_forest.hpp"
#include "dynconn/structural_forest.hpp"

namespace dynconn {

namespace {

std::string fold(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '-' && c != '_') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace

const std::array<StructureKind, 10>& all_structure_kinds() {
  static const std::array<StructureKind, 10> kinds{StructureKind::DTree, StructureKind::Lct, StructureKind::Hks,
                                                   StructureKind::Hk,    StructureKind::Hdt, StructureKind::St,
                                                   StructureKind::Stv,   StructureKind::Lt,  StructureKind::Ltv,
                                                   StructureKind::Lzt};
  return kinds;
}

std::string_view display_name(StructureKind kind) {
  switch (kind) {
    case StructureKind::DTree: return "D-tree";
    case StructureKind::Lct: return "LCT";
    case StructureKind::Hks: return "HKS";
    case StructureKind::Hk: return "HK";
    case StructureKind::Hdt: return "HDT";
    case StructureKind::St: return "ST";
    case StructureKind::Stv: return "STV";
    case StructureKind::Lt: return "LT";
    case StructureKind::Ltv: return "LTV";
    case StructureKind::Lzt: return "LzT";
  }
  return "?";
}

StructureKind parse_structure_kind(std::string_view name) {
  const std::string key = fold(name);
  for (StructureKind k : all_structure_kinds())
    if (fold(display_name(k)) == key) return k;
  throw Error(ErrorCode::UnknownStructure, "unknown structure '" + std::string(name) + "'");
}

std::unique_ptr<ConnectivityStructure> make_structure(StructureKind kind, const StructureOptions& o) {
  switch (kind) {
    case StructureKind::DTree: return std::make_unique<DTree>();
    case StructureKind::Lct: return std::make_unique<LinkCutForest>();
    case StructureKind::Hks: return std::make_unique<HksStructure>(o.seed);
    case StructureKind::Hk: return std::make_unique<HkStructure>(o.seed);
    case StructureKind::Hdt: return std::make_unique<HdtStructure>(o.seed);
    case StructureKind::St: return std::make_unique<StructuralForest>(AdjacencyMode::Split);
    case StructureKind::Stv: return std::make_unique<StructuralForest>(AdjacencyMode::Merged);
    case StructureKind::Lt: return std::make_unique<LocalForest>(LocalVariant::Lt);
    case StructureKind::Ltv: return std::make_unique<LocalForest>(LocalVariant::Ltv);
    case StructureKind::Lzt: return std::make_unique<LocalForest>(LocalVariant::Lzt, o.lzt_beta);
  }
  throw Error(ErrorCode::UnknownStructure, "unknown structure kind");
}

std::unique_ptr<ConnectivityStructure> make_structure(std::string_view name, const StructureOptions& o) {
  return make_structure(parse_structure_kind(name), o);
}

}  // namespace dynconn
