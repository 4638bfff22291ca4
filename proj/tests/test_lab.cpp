#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "lab/acceptance.hpp"
#include "lab/config.hpp"
#include "lab/csv.hpp"
#include "lab/experiments.hpp"
#include "lab/parallel.hpp"
#include "slag/curve_io.hpp"
#include "slag/error.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using testing_support::expect_code;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("slag_lab_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, TomlStyle) {
  const auto c = lab::parse_config(R"(
# a comment
kind = "flow"
curve = "graph"   # trailing comment
samples = 128
cfl = 2.5e-1
transport = false
t = [0.1, 0.3, 1]
)");
  EXPECT_EQ(c.kind, "flow");
  const lab::Params p(c, {"curve", "samples", "cfl", "transport", "t"});
  EXPECT_EQ(p.string("curve", ""), "graph");
  EXPECT_EQ(p.integer("samples", 0), 128);
  EXPECT_DOUBLE_EQ(p.number("cfl", 0), 0.25);
  EXPECT_FALSE(p.flag("transport", true));
  EXPECT_EQ(p.list("t", {}), (std::vector<double>{0.1, 0.3, 1.0}));
  EXPECT_EQ(p.number("missing", 7.0), 7.0);
}

TEST(Config, JsonAlternative) {
  const auto c = lab::parse_config(R"({"kind": "hn", "N": 6, "wide": true, "seed": 18446744073709551615})");
  EXPECT_EQ(c.kind, "hn");
  const lab::Params p(c, {"N", "wide", "seed"});
  EXPECT_EQ(p.integer("N", 0), 6);
  EXPECT_TRUE(p.flag("wide", false));
  EXPECT_EQ(p.seed("seed"), std::numeric_limits<std::uint64_t>::max());
}

TEST(Config, Rejections) {
  const auto code = slag::ErrorCode::ConfigError;
  expect_code([] { lab::parse_config("kind = \"hn\"\nN = 3\nN = 4\n"); }, code);
  expect_code([] { lab::parse_config("kind = \"hn\"\nN 3\n"); }, code);
  expect_code([] { lab::parse_config("kind = 3\n"); }, code);
  const auto c = lab::parse_config("kind = \"hn\"\nbogus = 1\n");
  expect_code([&] { lab::Params(c, {"N"}); }, code);
  const auto t = lab::parse_config("kind = \"dhym\"\nroundtrip_tol = 0\n");
  expect_code([&] { lab::Params(t, {"roundtrip_tol"}); }, code);
  const auto s = lab::parse_config("kind = \"hn\"\nN = 2.5\n");
  expect_code([&] { lab::Params(s, {"N"}).integer("N", 0); }, code);
  expect_code([] { lab::parse_seed("-1"); }, code);
  expect_code([] { lab::parse_seed("18446744073709551616"); }, code);
  expect_code([] { lab::load_config("/nonexistent/config.toml"); }, code);
}

TEST(Csv, SeventeenDigitsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) {
    EXPECT_EQ(std::stod(lab::format_double(v)), v);
  }
  EXPECT_EQ(lab::format_double(std::nan("")), "nan");
  EXPECT_EQ(lab::format_double(-INFINITY), "-inf");
  lab::CsvTable t({"a", "b"});
  t.add_numbers({1.0, 0.5});
  EXPECT_EQ(t.str(), "a,b\n1,0.5\n");
  EXPECT_THROW(t.add_numbers({1.0}), slag::Error);
}

TEST(Csv, EmptyHistoryIsHeaderOnly) {
  EXPECT_EQ(lab::flow_table({}).str(), "t,sup_theta,inf_theta,theta_l2,meanH_l2,volume,solomon,lobe1,lobe2\n");
  EXPECT_EQ(lab::wall_table({}).str(), "t,argZ1,argZ2,theta_t,A_t,side\n");
}

TEST(Parallel, EveryIndexOnceAndLowestErrorWins) {
  std::vector<std::atomic<int>> hits(1000);
  lab::parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  try {
    lab::parallel_for(100, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    ADD_FAILURE() << "no exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
}

TEST(Experiments, MissingSeedIsConfigError) {
  lab::RunContext ctx;
  ctx.out_dir = scratch("noseed");
  expect_code([&] { lab::run_experiment(lab::parse_config("kind = \"hn\"\n"), ctx); },
              slag::ErrorCode::ConfigError);
  expect_code([&] { lab::run_experiment(lab::parse_config("kind = \"nope\"\n"), ctx); },
              slag::ErrorCode::ConfigError);
}

TEST(Experiments, LawlorRowForSymmetricNeck) {
  lab::RunContext ctx;
  ctx.out_dir = scratch("lawlor");
  const auto out = lab::run_experiment(lab::parse_config("kind = \"lawlor\"\na = [1, 1, 1]\n"), ctx);
  EXPECT_TRUE(out.ok());
  const auto csv = slurp(ctx.out_dir / "lawlor.csv");
  EXPECT_NE(csv.find("n,a1,a2,a3,phi1,phi2,phi3,A,"), std::string::npos);
  EXPECT_NE(csv.find("1.047197551196"), std::string::npos);  // pi / 3
}

TEST(Experiments, SeededRunsAreByteIdentical) {
  lab::RunContext a, b;
  a.out_dir = scratch("det_a");
  b.out_dir = scratch("det_b");
  a.seed = b.seed = 42;
  const auto cfg = lab::parse_config("kind = \"hn\"\nN = 6\ntrials = 200\n");
  lab::run_experiment(cfg, a);
  lab::run_experiment(cfg, b);
  EXPECT_TRUE(lab::compare_trees(a.out_dir, b.out_dir).empty());
  const auto summary = slurp(a.out_dir / "hn_summary.json");
  EXPECT_NE(summary.find("\"seed\": 42"), std::string::npos);

  b.seed = 43;
  lab::run_experiment(cfg, b);
  EXPECT_FALSE(lab::compare_trees(a.out_dir, b.out_dir).empty());
}

TEST(Experiments, SolomonEvalReport) {
  const auto dir = scratch("eval");
  fs::create_directories(dir);
  slag::save_curve(testing_support::sine(0.3, 1024), dir / "L.json");
  slag::save_curve(testing_support::zero(1024), dir / "L0.json");
  lab::RunContext ctx;
  ctx.out_dir = dir;
  const auto out = lab::solomon_eval(dir / "L.json", dir / "L0.json", dir / "report.json", std::nullopt, ctx);
  EXPECT_TRUE(out.ok());
  const auto j = slurp(dir / "report.json");
  EXPECT_NE(j.find("\"richardson\""), std::string::npos);
  EXPECT_NE(j.find("\"potential_L\""), std::string::npos);
}

TEST(Acceptance, SubsetAndDeterminism) {
  lab::AcceptanceOptions opts;
  opts.out_dir = scratch("accept");
  opts.only = {3, 11, 16};
  const auto results = lab::run_criteria(opts);
  ASSERT_EQ(results.size(), 3u);
  for (const auto& r : results) EXPECT_TRUE(r.pass) << lab::format_result(r);
  const auto det = lab::determinism_criterion(opts, opts.out_dir / "rerun");
  EXPECT_TRUE(det.pass) << det.measured;
  EXPECT_EQ(lab::format_result(results[0]).rfind("PASS [03]", 0), 0u);
}

TEST(Acceptance, CompareTreesSeesDifferences) {
  const auto a = scratch("tree_a"), b = scratch("tree_b");
  lab::write_text(a / "x.csv", "1\n");
  lab::write_text(b / "x.csv", "1\n");
  EXPECT_TRUE(lab::compare_trees(a, b).empty());
  lab::write_text(b / "x.csv", "2\n");
  lab::write_text(b / "y.csv", "");
  EXPECT_EQ(lab::compare_trees(a, b), (std::vector<std::string>{"x.csv", "y.csv"}));
}
