#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "contactgeom_cli/commands.hpp"
#include "helpers.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "contact-geom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = contactgeom::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST(Cli, Usage) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"catalog"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"analyze"}).code, 2);
}

TEST(Cli, CatalogList) {
  const Result r = run({"catalog", "list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("geodesic_sphere"), std::string::npos);
  const Result j = run({"catalog", "list", "--json"});
  EXPECT_EQ(j.code, 0);
  EXPECT_EQ(nlohmann::json::parse(j.out).size(), 3u);
}

TEST(Cli, AnalyzeWritesOutputs) {
  const auto dir = testing_support::fresh_dir("cli_analyze");
  const Result r = run({"analyze", "--surface", "clifford", "--grid", "16x16", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"report.json", "fields.csv", "samples.s3"}) EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  EXPECT_EQ(read_json(dir / "report.json")["masked_nodes"], 0);

  // The written samples are accepted back as a surface.
  const auto again = testing_support::fresh_dir("cli_analyze_again");
  const Result s = run({"analyze", "--surface", (dir / "samples.s3").string(), "--out", again.string()});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(read_json(again / "report.json")["partials"], "grid_difference");
  const Result c = run({"analyze", "--surface", (dir / "fields.csv").string(), "--out", again.string()});
  EXPECT_EQ(c.code, 0) << c.err;
}

TEST(Cli, AnalyzeErrors) {
  const auto dir = testing_support::fresh_dir("cli_errors");
  EXPECT_EQ(run({"analyze", "--surface", "torus_of_doom", "--out", dir.string()}).code, 2);
  EXPECT_EQ(run({"analyze", "--surface", "rtorus", "--param", "r=2", "--out", dir.string()}).code, 2);
  EXPECT_EQ(run({"analyze", "--surface", "clifford", "--param", "eps=0.3", "--out", dir.string()}).code, 2);
  EXPECT_EQ(run({"analyze", "--surface", "clifford", "--param", "eps", "--out", dir.string()}).code, 2);
  EXPECT_EQ(run({"analyze", "--surface", "clifford", "--grid", "4x4", "--out", dir.string()}).code, 2);

  std::ofstream(dir / "bad.s3") << "S3SAMPLES v1 8 8 periodic periodic 0 1 0 1\n0 0 1 0\n";
  EXPECT_EQ(run({"analyze", "--surface", (dir / "bad.s3").string(), "--out", dir.string()}).code, 3);
  std::ofstream off(dir / "off.s3");
  off << "S3SAMPLES v1 8 8 chart chart 0 1 0 1\n";
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) off << i / 7.0 << ' ' << j / 7.0 << " 2 0 0 0\n";
  off.close();
  const Result r = run({"analyze", "--surface", (dir / "off.s3").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("node (0, 0)"), std::string::npos) << r.err;
}

TEST(Cli, Verify) {
  const auto dir = testing_support::fresh_dir("cli_verify");
  const Result ok = run({"verify", "--surface", "geodesic_sphere", "--identity", "gauss", "--refine", "16,32,64",
                         "--out", dir.string()});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  const auto j = read_json(dir / "identity_gauss.json");
  EXPECT_EQ(j["levels"].size(), 3u);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_TRUE(std::filesystem::exists(dir / "residual_gauss.csv"));

  EXPECT_EQ(run({"verify", "--surface", "clifford", "--refine", "16,32", "--out", dir.string()}).code, 2);
  EXPECT_EQ(run({"verify", "--surface", "clifford", "--identity", "codazzi", "--out", dir.string()}).code, 2);
  // Too coarse to reach the bound.
  EXPECT_EQ(run({"verify", "--surface", "geodesic_sphere", "--identity", "connection", "--refine", "8,10,12",
                 "--out", dir.string()})
                .code,
            4);
}

TEST(Cli, Flow) {
  const auto dir = testing_support::fresh_dir("cli_flow");
  const Result r = run({"flow", "--surface", "rtorus", "--param", "r=0.9", "--mode", "r-only", "--grid", "16x16",
                        "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto j = read_json(dir / "flow_report.json");
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_NEAR(j["final_r"].get<double>(), 0.7853981633974483, 1e-8);
  EXPECT_EQ(j["probe"]["verdict"], "pass");

  const Result nc = run({"flow", "--surface", "clifford", "--param", "eps=0.1", "--grid", "16x16", "--steps", "1",
                         "--tol", "1e-9", "--out", dir.string()});
  EXPECT_EQ(nc.code, 5) << nc.out << nc.err;
  EXPECT_FALSE(read_json(dir / "flow_report.json")["converged"].get<bool>());
  EXPECT_EQ(run({"flow", "--mode", "sideways", "--out", dir.string()}).code, 2);
  EXPECT_EQ(run({"flow", "--surface", "clifford", "--step", "-1", "--param", "eps=0.1", "--out", dir.string()}).code,
            2);
}
