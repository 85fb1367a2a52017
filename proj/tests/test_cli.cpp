#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "isoflow/flow.hpp"
#include "isoflow/json_io.hpp"

namespace isoflow {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

TEST(Cli, DescribeSu21) {
  const Result r = run({"describe", "--model", "su21"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = parse_json(r.out);
  EXPECT_EQ(j["rank"], 1);
  ASSERT_EQ(j["roots"].size(), 2u);
  EXPECT_EQ(j["roots"][0]["multiplicity"], 2);
  EXPECT_EQ(j["roots"][1]["multiplicity"], 1);
  EXPECT_EQ(j["roots"][0]["double"], 1);
}

TEST(Cli, DescribeSl3r) {
  const Result r = run({"describe", "--model", "sl3r"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = parse_json(r.out);
  EXPECT_EQ(j["rank"], 2);
  ASSERT_EQ(j["roots"].size(), 3u);
  for (const auto& root : j["roots"]) EXPECT_EQ(root["multiplicity"], 1);
}

TEST(Cli, MalformedDatumIsUsageError) {
  const auto path = std::filesystem::temp_directory_path() / "isoflow_bad_datum.json";
  std::ofstream(path) << "{\"rank\": 1, \"roots\": [[0.5]";
  const Result r = run({"describe", "--datum", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("byte"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"describe", "--model", "nope"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"flow", "--horizon", "-1"}).code, 2);
  EXPECT_EQ(run({"flow", "--t2", "1"}).code, 2);
  EXPECT_EQ(run({"flow", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"verify", "--format", "csv"}).code, 2);
  EXPECT_EQ(run({"describe", "--model", "su21", "--k", "0"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifySu21Passes) {
  const Result r = run({"verify", "--model", "su21"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = parse_json(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_LT(j["max_deviation"].get<double>(), 1e-8);
  for (const auto& c : j["checks"]) {
    if (!c["informational"].get<bool>() && c["kind"] == "deviation") EXPECT_LT(c["value"].get<double>(), 1e-8) << c["id"];
  }
}

TEST(Cli, VerifyDatumOnlyIsUsageError) {
  EXPECT_EQ(run({"verify", "--config", std::string(ISOFLOW_CONFIG_DIR) + "/bc1_datum_k1.json"}).code, 2);
}

TEST(Cli, Sl3rIsAdaptedWithZeroCommutators) {
  const Result a = run({"adaptedness", "--model", "sl3r", "--k", "1"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(parse_json(a.out)["verdict"], "adapted");
  const Result v = run({"verify", "--model", "sl3r", "--k", "1"});
  ASSERT_EQ(v.code, 0);
  for (const auto& c : parse_json(v.out)["checks"]) {
    if (c["id"].get<std::string>().rfind("foliation.commutator.", 0) == 0) EXPECT_LT(c["value"].get<double>(), 1e-12);
  }
}

TEST(Cli, Su21IsNotAdapted) {
  const Result a = run({"adaptedness"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(parse_json(a.out)["verdict"], "not adapted");
}

TEST(Cli, FlowCsvDistanceMatchesClosedForm) {
  const Result r = run({"flow", "--model", "su21", "--t1", "1.0", "--horizon", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.front(), "t,u_1,speed,dist_to_ref,residual");
  ASSERT_EQ(rows.size(), 10002u);
  const double l = 1.0 / (2.0 * std::sqrt(3.0));
  for (std::size_t i = 1; i < rows.size(); i += 997) {
    const auto f = fields(rows[i]);
    const double expected = std::asinh(std::exp(-l * l * 4 * f[0]) * std::sinh(l)) / l;
    EXPECT_NEAR(f[3], expected, 1e-10) << rows[i];
  }
  EXPECT_NEAR(fields(rows.back())[0], 10.0, 0.0);
}

TEST(Cli, FlowOutputIsDeterministicAndFileMatchesStdout) {
  const std::vector<std::string> args{"flow", "--model", "sl3r", "--b-dim", "1", "--t1", "-0.5", "--sample-stride", "50"};
  const Result a = run(args);
  const Result b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto path = std::filesystem::temp_directory_path() / "isoflow_flow.csv";
  auto with_out = args;
  with_out.insert(with_out.end(), {"--out", path.string()});
  ASSERT_EQ(run(with_out).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), a.out);
  std::filesystem::remove(path);
  EXPECT_EQ(lines(a.out).front(), "t,u_1,u_2,speed,dist_to_ref,residual");
}

TEST(Cli, FlowJsonCarriesVerdict) {
  const Result r = run({"flow", "--model", "sl3r", "--b-dim", "1", "--t1", "0", "--format", "json", "--horizon", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = parse_json(r.out);
  EXPECT_EQ(j["verdict"]["regime"], "self_similar");
  EXPECT_EQ(j["trajectory"].size(), 1001u);
}

TEST(Cli, ConfigFileWithOffsetOverride) {
  const std::string path = std::string(ISOFLOW_CONFIG_DIR) + "/su31_k1.json";
  const Result r = run({"describe", "--config", path, "--t1", "0.25"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = parse_json(r.out);
  EXPECT_EQ(j["config"]["offsets"][0], 0.25);
  EXPECT_EQ(j["config"]["xi_index"][0], 2);
  EXPECT_EQ(run({"describe", "--config", path, "--model", "sl2r"}).code, 2);
}

}  // namespace
}  // namespace isoflow
