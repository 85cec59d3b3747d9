#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "dpg/bench.hpp"
#include "dpg/error.hpp"
#include "dpg/vec_io.hpp"
#include "test_util.hpp"

namespace dpg {
namespace {

using namespace bench;

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DPG_BENCH_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Pipeline : public ::testing::Test {
 protected:
  void SetUp() override {
    GenOptions gen;
    gen.kind = "rand";
    gen.n = 2000;
    gen.d = 12;
    gen.queries = 25;
    gen.out = dir / "w";
    std::ostringstream log;
    cmd_gen(gen, log);
    cmd_gt(dir / "w.base.fvecs", dir / "w.query.fvecs", 10, dir / "gt", 42, log);
    BuildOptions b;
    b.algo = Algo::DpgCounting;
    b.kappa = 8;
    cmd_build(dir / "w.base.fvecs", b, dir / "w.dpgi", log);
  }

  SearchOptions search_options() const {
    SearchOptions s;
    s.dataset = dir / "w.base.fvecs";
    s.index = dir / "w.dpgi";
    s.queries = dir / "w.query.fvecs";
    s.gt = dir / "gt";
    s.out = dir / "s.csv";
    s.k = 10;
    s.pools = {10, 20, 40, 80, 160};
    return s;
  }

  testing::TempDir dir;
};

TEST_F(Pipeline, SearchCsvSchemaAndMonotoneRecall) {
  std::ostringstream log;
  cmd_search(search_options(), log);
  const auto rows = lines(read_text(dir / "s.csv"));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0].rfind("# search seed=42", 0), 0u);
  EXPECT_EQ(rows[1], "L,k,mean_recall,speedup,mean_N,pct_points_accessed,mean_hops");
  double prev = -1;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    std::vector<std::string> cells;
    std::stringstream ss(rows[i]);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 7u);
    const double r = std::stod(cells[2]);
    EXPECT_GE(r, prev);
    prev = r;
    // pct = mean_N / n * 100
    EXPECT_NEAR(std::stod(cells[5]), std::stod(cells[4]) / 1975 * 100, 1e-3);
  }
  EXPECT_GT(prev, 0.9);
}

TEST_F(Pipeline, WrongKGroundTruthIsUsageError) {
  auto s = search_options();
  s.k = 5;
  std::ostringstream log;
  EXPECT_THROW(cmd_search(s, log), UsageError);
}

TEST_F(Pipeline, MismatchedDimensionsAreDiagnosed) {
  io::write_fvecs(VectorSet(3, 4, std::vector<float>(12, 0.f)), dir / "bad.query.fvecs");
  auto s = search_options();
  s.queries = dir / "bad.query.fvecs";
  std::ostringstream log;
  try {
    cmd_search(s, log);
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("d=4"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("d=12"), std::string::npos);
  }
}

TEST_F(Pipeline, HardnessAndMinHopsReports) {
  std::ostringstream log;
  cmd_hardness(dir / "w.base.fvecs", dir / "w.query.fvecs", 10, 20, 42, dir / "h.csv", log);
  const auto h = lines(read_text(dir / "h.csv"));
  ASSERT_GE(h.size(), 5u);
  EXPECT_EQ(h[1], "metric,value");
  EXPECT_EQ(h[2].rfind("rc,", 0), 0u);
  EXPECT_GT(std::stod(h[2].substr(3)), 1.0);

  cmd_minhops(dir / "w.dpgi", dir / "gt", dir / "m.csv", log);
  const auto m = lines(read_text(dir / "m.csv"));
  EXPECT_EQ(m[1], "hops,fraction");
  EXPECT_EQ(m.back().rfind("inf,", 0), 0u);
  double total = 0;
  for (std::size_t i = 2; i < m.size(); ++i) total += std::stod(m[i].substr(m[i].find(',') + 1));
  EXPECT_NEAR(total, 1.0, 1e-5);
}

TEST_F(Pipeline, CliExitCodes) {
  const auto d = dir.path().string();
  EXPECT_EQ(run_cli("search --dataset " + d + "/w.base.fvecs --index " + d + "/w.dpgi --queries " + d +
                    "/w.query.fvecs --gt " + d + "/gt --k 10 --pool 10,20 --out " + d + "/cli.csv"),
            0);
  EXPECT_EQ(lines(read_text(dir / "cli.csv")).size(), 4u);
  // gt holds k=10
  EXPECT_EQ(run_cli("search --dataset " + d + "/w.base.fvecs --index " + d + "/w.dpgi --queries " + d +
                    "/w.query.fvecs --gt " + d + "/gt --k 20 --out " + d + "/cli.csv"),
            2);
  EXPECT_EQ(run_cli("build --dataset " + d + "/w.base.fvecs --algo hnsw --out " + d + "/x"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("gen --out " + d + "/p"), 0);  // default custom dataset
  std::ofstream(dir / "junk.dpgi") << "not an index";
  EXPECT_EQ(run_cli("minhops --index " + d + "/junk.dpgi --gt " + d + "/gt --out " + d + "/m.csv"), 3);
}

TEST(Bench, AlgoNames) {
  EXPECT_EQ(parse_algo("kgraph"), Algo::KGraph);
  EXPECT_EQ(parse_algo("dpg-angular"), Algo::DpgAngular);
  EXPECT_EQ(parse_algo("dpg-counting"), Algo::DpgCounting);
  EXPECT_THROW(parse_algo("DPG"), UsageError);
}

TEST(Bench, CsvUsesSixSignificantDigits) {
  std::ostringstream out;
  const std::vector<SweepRow> rows{{20, 10, 0.123456789, 12.3456789, 1234.56789, 3.14159265, 7.0, 0.0}};
  write_sweep_csv(out, rows, "test");
  EXPECT_EQ(lines(out.str())[2], "20,10,0.123457,12.3457,1234.57,3.14159,7");
}

}  // namespace
}  // namespace dpg
