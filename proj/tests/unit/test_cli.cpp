#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dynconn/bench.hpp"

#ifdef DYNCONN_CLI_PATH

namespace {

struct CliResult {
  int status;
  std::string out;
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(DYNCONN_CLI_PATH) + " " + args + " 2>&1";
  CliResult r{0, {}};
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Columns that do not depend on the clock.
std::string stable_columns(const std::string& csv) {
  std::string out;
  for (dynconn::BenchRow r : dynconn::parse_csv(csv).rows) {
    r.total_ns = r.p99_ns = 0;
    r.mean_ns = 0;
    out += dynconn::format_csv({{r}}, false);
  }
  return out;
}

TEST(Cli, GenWorkloadIsDeterministic) {
  const std::string a = ::testing::TempDir() + "wa.txt", b = ::testing::TempDir() + "wb.txt";
  const std::string args = "gen-workload --dataset gnm:200,600 --ur 10 --seed 5 --test-num 10 --shuffle --out ";
  ASSERT_EQ(cli(args + a).status, 0);
  ASSERT_EQ(cli(args + b).status, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  ASSERT_EQ(cli("gen-workload --dataset gnm:200,600 --ur 10 --seed 6 --test-num 10 --shuffle --out " + b).status, 0);
  EXPECT_NE(slurp(a), slurp(b));
}

TEST(Cli, BenchNonTimingColumnsAreDeterministic) {
  const std::string args = "bench --dataset gnm:100,300 --ur 3 --seed 2 --test-num 5 --queries-per-point 20 --structure all";
  const CliResult x = cli(args), y = cli(args);
  ASSERT_EQ(x.status, 0) << x.out;
  ASSERT_EQ(y.status, 0);
  EXPECT_EQ(stable_columns(x.out), stable_columns(y.out));
  EXPECT_EQ(dynconn::parse_csv(x.out).rows.size(), 30u);
}

TEST(Cli, BenchReplaysWorkloadFileAndAppends) {
  const std::string w = ::testing::TempDir() + "wc.txt", csv = ::testing::TempDir() + "c.csv";
  std::remove(csv.c_str());
  ASSERT_EQ(cli("gen-workload --dataset path:50 --ur 4 --test-num 2 --out " + w).status, 0);
  ASSERT_EQ(cli("bench --workload " + w + " --structure HDT,lct --out " + csv).status, 0);
  ASSERT_EQ(cli("bench --workload " + w + " --structure LzT --beta 3 --out " + csv + " --append").status, 0);
  const auto rows = dynconn::parse_csv(slurp(csv)).rows;
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0].structure, "HDT");
  EXPECT_EQ(rows[3].structure, "LCT");
  EXPECT_EQ(rows[6].structure, "LzT");
  EXPECT_EQ(rows[0].dataset, "workload:" + w);
}

TEST(Cli, VerifyReportsEveryStructure) {
  const CliResult r = cli("verify --n 30 --ops 400 --seed 3 --audit");
  EXPECT_EQ(r.status, 0) << r.out;
  for (const char* name : {"D-tree", "LCT", "HKS", "HK", "HDT", "ST", "STV", "LT", "LTV", "LzT"})
    EXPECT_NE(r.out.find(std::string(name) + " ok"), std::string::npos) << name;
}

TEST(Cli, ErrorsExitWithTwo) {
  EXPECT_EQ(cli("bench --dataset ring:5").status, 2);
  EXPECT_EQ(cli("bench --dataset path:5 --structure splay").status, 2);
  EXPECT_EQ(cli("bench --dataset gnm:4,100").status, 2);
  EXPECT_NE(cli("").status, 0);
}

}  // namespace

#endif
