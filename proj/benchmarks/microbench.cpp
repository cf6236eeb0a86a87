#include <benchmark/benchmark.h>

#include "dynconn/datasets.hpp"
#include "dynconn/structures.hpp"
#include "dynconn/workload.hpp"

namespace {

using namespace dynconn;

std::vector<EdgeKey> gnm_edges(std::int64_t n) {
  DatasetSpec spec;
  spec.family = DatasetSpec::Family::Gnm;
  spec.n = static_cast<std::uint64_t>(n);
  spec.m = static_cast<std::uint64_t>(4 * n);
  return gen_graph(spec, 7);
}

// Full insertion of a Gnm(n, 4n) graph into a fresh structure.
void BM_Insert(benchmark::State& state, StructureKind kind) {
  const auto edges = gnm_edges(state.range(0));
  for (auto _ : state) {
    auto s = make_structure(kind);
    for (const EdgeKey& e : edges) s->insert_edge(e.a, e.b);
    benchmark::DoNotOptimize(s.get());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges.size()));
}

// Interleaved workload with one deletion per five insertions.
void BM_Churn(benchmark::State& state, StructureKind kind) {
  WorkloadConfig cfg;
  cfg.u_r = 5;
  const auto ops = generate_updates(gnm_edges(state.range(0)), cfg);
  for (auto _ : state) {
    auto s = make_structure(kind);
    for (const Operation& op : ops) {
      if (op.type == Operation::Type::Insert)
        s->insert_edge(op.edge.a, op.edge.b);
      else
        s->delete_edge(op.edge.a, op.edge.b);
    }
    benchmark::DoNotOptimize(s.get());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ops.size()));
}

void BM_Query(benchmark::State& state, StructureKind kind) {
  const std::int64_t n = state.range(0);
  auto s = make_structure(kind);
  for (const EdgeKey& e : gnm_edges(n)) s->insert_edge(e.a, e.b);
  const auto pairs = generate_query_pairs(static_cast<std::size_t>(n), 4096, 11);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [u, v] = pairs[k++ & 4095];
    benchmark::DoNotOptimize(s->connected(u, v));
  }
}

void register_all() {
  for (StructureKind kind : all_structure_kinds()) {
    const std::string name(display_name(kind));
    benchmark::RegisterBenchmark(("insert/" + name).c_str(), BM_Insert, kind)->Arg(1 << 12)->Unit(benchmark::kMillisecond);
    benchmark::RegisterBenchmark(("churn/" + name).c_str(), BM_Churn, kind)->Arg(1 << 12)->Unit(benchmark::kMillisecond);
    benchmark::RegisterBenchmark(("query/" + name).c_str(), BM_Query, kind)->Arg(1 << 12);
  }
}

}  // namespace

int main(int argc, char** argv) {
  register_all();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
