#include <algorithm>
#include <atomic>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dynconn/bench.hpp"
#include "dynconn/datasets.hpp"
#include "dynconn/oracle.hpp"
#include "dynconn/structures.hpp"
#include "dynconn/workload.hpp"

namespace {

using namespace dynconn;

struct WorkloadArgs {
  std::string dataset;
  std::string workload_file;
  int ur = 1000;
  std::uint64_t seed = 1;
  int test_num = 100;
  int queries_per_point = 1000;
  bool shuffle = false;
};

void add_workload_options(CLI::App* app, WorkloadArgs& a) {
  app->add_option("--dataset", a.dataset,
                  "file:PATH | star:N | path:N | complete:N | gnm:N,M | powerlaw:N,M[,GAMMA]");
  app->add_option("--ur", a.ur, "insertions per deletion")->check(CLI::PositiveNumber);
  app->add_option("--seed", a.seed, "RNG seed");
  app->add_option("--test-num", a.test_num, "number of query testing points")->check(CLI::NonNegativeNumber);
  app->add_option("--queries-per-point", a.queries_per_point, "query pairs per testing point")
      ->check(CLI::NonNegativeNumber);
  app->add_flag("--shuffle", a.shuffle, "seeded shuffle of the input edge order");
}

Workload build_workload(const WorkloadArgs& a) {
  if (!a.workload_file.empty()) return read_workload(a.workload_file);
  if (a.dataset.empty()) throw Error(ErrorCode::InvalidArgument, "--dataset or --workload is required");
  const DatasetSpec spec = parse_dataset_spec(a.dataset);
  WorkloadConfig cfg;
  cfg.u_r = a.ur;
  cfg.test_num = a.test_num;
  cfg.queries_per_point = a.queries_per_point;
  cfg.seed = a.seed;
  cfg.shuffle = a.shuffle;
  std::vector<Operation> ops = generate_updates(gen_graph(spec, a.seed), cfg);
  if (cfg.test_num > 0) ops = place_testing_points(ops, cfg);
  return Workload{a.seed, a.ur, std::move(ops)};
}

std::vector<StructureKind> parse_structures(const std::string& text) {
  if (text == "all") return {all_structure_kinds().begin(), all_structure_kinds().end()};
  std::vector<StructureKind> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string name = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!name.empty()) out.push_back(parse_structure_kind(name));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw Error(ErrorCode::UnknownStructure, "no structure named");
  return out;
}

int run_bench(const WorkloadArgs& a, const std::string& structures, double timeout, const std::string& out,
              bool append, unsigned jobs, int beta) {
  const Workload w = build_workload(a);
  const std::vector<StructureKind> kinds = parse_structures(structures);
  BenchOptions opt;
  opt.dataset_label = a.workload_file.empty() ? parse_dataset_spec(a.dataset).label() : "workload:" + a.workload_file;
  opt.structure.seed = w.seed;
  opt.structure.lzt_beta = beta;
  opt.timeout_secs = timeout;
  opt.memory = memory_model_from_env();

  // One worker per structure; results are written in argument order.
  std::vector<BenchReport> reports(kinds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < kinds.size(); k = next++) reports[k] = run_benchmark(w, kinds[k], opt);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BenchReport all;
  for (const BenchReport& r : reports) all.rows.insert(all.rows.end(), r.rows.begin(), r.rows.end());
  if (out.empty() || out == "-")
    std::cout << format_csv(all);
  else
    emit_csv(all, out, append);
  for (const BenchRow& r : all.rows)
    if (r.status != "ok") std::cerr << r.structure << ": " << r.status << "\n";
  return 0;
}

int run_verify(std::size_t n, std::size_t ops, std::uint64_t seed, int ur, std::size_t m, const std::string& structures,
               bool audit) {
  if (m == 0) m = std::min(3 * n, n * (n - 1) / 2);
  const std::vector<Operation> stream = generate_churn(n, m, ops, ur, seed);
  int failures = 0;
  for (StructureKind kind : parse_structures(structures)) {
    auto s = make_structure(kind, {seed, 2});
    OracleGraph g;
    std::size_t mismatches = 0, violations = 0;
    for (const Operation& op : stream) {
      if (op.type == Operation::Type::Insert) {
        g.add_edge(op.edge.a, op.edge.b);
        s->insert_edge(op.edge.a, op.edge.b);
      } else {
        g.remove_edge(op.edge.a, op.edge.b);
        s->delete_edge(op.edge.a, op.edge.b);
      }
      const auto label = g.component_labels(n);
      for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) mismatches += s->connected(u, v) != (label[u] == label[v]);
      if (audit) violations += s->audit().size();
    }
    const bool ok = mismatches == 0 && violations == 0;
    failures += ok ? 0 : 1;
    std::cout << display_name(kind) << (ok ? " ok" : " FAILED") << " ops=" << stream.size()
              << " mismatches=" << mismatches;
    if (audit) std::cout << " audit_violations=" << violations;
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fully dynamic connectivity structures: benchmark and verification driver"};
  app.require_subcommand(1);

  WorkloadArgs bench_args;
  std::string bench_structures = "all", bench_out;
  double timeout = 0;
  bool append = false;
  unsigned jobs = 1;
  int beta = 2;
  CLI::App* bench = app.add_subcommand("bench", "replay a workload on one or more structures and report CSV");
  add_workload_options(bench, bench_args);
  bench->add_option("--workload", bench_args.workload_file, "replay a workload file instead of --dataset");
  bench->add_option("--structure", bench_structures, "structure name, comma list, or 'all'");
  bench->add_option("--timeout-secs", timeout, "per-structure time budget, 0 = unlimited")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--out", bench_out, "CSV output path ('-' or empty for stdout)");
  bench->add_flag("--append", append, "append rows to an existing CSV");
  bench->add_option("--jobs", jobs, "concurrent structure workers")->check(CLI::PositiveNumber);
  bench->add_option("--beta", beta, "LzT buffer threshold")->check(CLI::Range(2, 1 << 30));

  std::size_t vn = 100, vops = 5000, vm = 0;
  std::uint64_t vseed = 1;
  int vur = 3;
  std::string vstructures = "all";
  bool vaudit = false;
  CLI::App* verify = app.add_subcommand("verify", "check every structure against a BFS oracle on random churn");
  verify->add_option("--n", vn, "vertices")->check(CLI::Range(2, 1 << 20));
  verify->add_option("--ops", vops, "updates");
  verify->add_option("--seed", vseed, "RNG seed");
  verify->add_option("--ur", vur, "insertions per deletion")->check(CLI::PositiveNumber);
  verify->add_option("--m", vm, "edge cap (default 3n)");
  verify->add_option("--structure", vstructures, "structure name, comma list, or 'all'");
  verify->add_flag("--audit", vaudit, "run the structural self-audit after every update");

  WorkloadArgs gen_args;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen-workload", "write a replayable workload file");
  add_workload_options(gen, gen_args);
  gen->add_option("--out", gen_out, "output path")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*bench) return run_bench(bench_args, bench_structures, timeout, bench_out, append, jobs, beta);
    if (*verify) return run_verify(vn, vops, vseed, vur, vm, vstructures, vaudit);
    if (*gen) {
      write_workload(build_workload(gen_args), gen_out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
