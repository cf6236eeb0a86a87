#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string_view>

#include "dynconn/connectivity.hpp"

namespace dynconn {

enum class StructureKind { DTree, Lct, Hks, Hk, Hdt, St, Stv, Lt, Ltv, Lzt };

struct StructureOptions {
  std::uint64_t seed = 1;
  int lzt_beta = 2;
};

const std::array<StructureKind, 10>& all_structure_kinds();
std::string_view display_name(StructureKind kind);
// Case-insensitive; accepts display names and "dtree". Throws UnknownStructure.
StructureKind parse_structure_kind(std::string_view name);

std::unique_ptr<ConnectivityStructure> make_structure(StructureKind kind, const StructureOptions& options = {});
std::unique_ptr<ConnectivityStructure> make_structure(std::string_view name, const StructureOptions& options = {});

}  // namespace dynconn
