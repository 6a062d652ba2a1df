#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "edge_outage/cli.hpp"

namespace edge_outage::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(Cli, OutageRapJson) {
  const auto r = invoke({"outage", "--scheme", "rap", "--library", "100", "--cache", "10", "--capacity", "40",
                         "--users", "50", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_object());
  EXPECT_NEAR(j["p_out"].get<double>(), 0.024455, 1e-6);
  EXPECT_EQ(j["method"], "rap-exact");
  EXPECT_TRUE(j["zipf_alpha"].is_null());
}

TEST(Cli, OutageTinyCsv) {
  const auto r = invoke({"outage", "--scheme", "rap", "--library", "3", "--cache", "1", "--capacity", "1",
                         "--users", "2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2U);
  EXPECT_EQ(ls[0].rfind("scheme,library_size,", 0), 0U);
  EXPECT_NE(ls[1].find(",0.222222222222,"), std::string::npos) << ls[1];
}

TEST(Cli, OutageMop) {
  const auto r = invoke({"outage", "--scheme", "mop", "--library", "100", "--cache", "10", "--capacity", "15",
                         "--users", "27", "--alpha", "1", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["p_out"].get<double>(), 0.018893, 1e-5);
  EXPECT_EQ(j["method"], "mop-gaussian");
}

TEST(Cli, ValidationExitCodes) {
  EXPECT_EQ(invoke({"outage", "--scheme", "rap", "--library", "10", "--cache", "11", "--capacity", "1",
                    "--users", "2"}).code, kUsage);
  EXPECT_EQ(invoke({"outage", "--scheme", "mop", "--library", "10", "--cache", "1", "--capacity", "1",
                    "--users", "2"}).code, kUsage);
  EXPECT_EQ(invoke({"outage", "--scheme", "lru", "--library", "10", "--cache", "1", "--capacity", "1",
                    "--users", "2"}).code, kUsage);
  EXPECT_EQ(invoke({"outage", "--scheme", "mop", "--library", "10", "--cache", "1", "--capacity", "1",
                    "--users", "2", "--alpha", "-1"}).code, kUsage);
  EXPECT_EQ(invoke({"nonsense"}).code, kUsage);
  EXPECT_EQ(invoke({}).code, kUsage);
  const auto r = invoke({"outage", "--scheme", "rap", "--library", "10", "--cache", "1", "--users", "2"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("backhaul_capacity"), std::string::npos) << r.err;
}

TEST(Cli, BudgetAndCeilingExitCodes) {
  EXPECT_EQ(invoke({"occupancy", "--bins", "25", "--balls", "5", "--method", "oracle"}).code, kBudget);
  EXPECT_EQ(invoke({"design", "--scheme", "mop", "--library", "100", "--cache", "100", "--capacity", "5",
                    "--alpha", "1", "--target", "0.01"}).code, kCeiling);
}

TEST(Cli, Design) {
  const auto r = invoke({"design", "--scheme", "mop", "--library", "100", "--cache", "10", "--capacity", "15",
                         "--alpha", "1", "--target", "0.02", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["max_users"].get<double>(), 27, 1);
}

class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    path_ = std::filesystem::temp_directory_path() /
            ("edge_outage_cli_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + ".json");
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

TEST(Cli, ConfigFileWithOverride) {
  TempFile f(R"({"library_size": 100, "cache_size": 10, "backhaul_capacity": 40, "num_requests": 60,
                 "scheme": "rap"})");
  const auto r = invoke({"outage", "--config", f.path(), "--users", "50", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["num_requests"], 50);
  EXPECT_NEAR(j["p_out"].get<double>(), 0.024455, 1e-6);
}

TEST(Cli, ConfigFileRejectsUnknownField) {
  TempFile f(R"({"library_size": 100, "cache": 10})");
  const auto r = invoke({"outage", "--config", f.path()});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("cache"), std::string::npos);
  TempFile g("{not json");
  EXPECT_EQ(invoke({"outage", "--config", g.path()}).code, kUsage);
  EXPECT_EQ(invoke({"outage", "--config", "/nonexistent/edge_outage.json"}).code, kUsage);
}

TEST(Cli, SimulateIsIndependentOfWorkers) {
  std::vector<std::string> base{"simulate", "--scheme", "mop", "--library", "100", "--cache", "10",
                                "--capacity", "15", "--users", "27", "--alpha", "1", "--trials", "20000",
                                "--seed", "123", "--workers"};
  auto args = base;
  args.push_back("1");
  const auto one = invoke(args);
  ASSERT_EQ(one.code, kOk) << one.err;
  for (const char* w : {"4", "8"}) {
    args = base;
    args.push_back(w);
    EXPECT_EQ(invoke(args).out, one.out) << "workers=" << w;
  }
  const auto j = nlohmann::json::parse(one.out);
  EXPECT_EQ(j["trials"], 20000);
  EXPECT_EQ(j["seed"], 123);
  EXPECT_TRUE(j["rap_cache"].is_null());
}

TEST(Cli, WorkersFromEnvironment) {
  const std::vector<std::string> args{"simulate", "--scheme", "rap", "--library", "50", "--cache", "5",
                                      "--capacity", "10", "--users", "20", "--trials", "5000"};
  ::setenv("EDGE_OUTAGE_WORKERS", "3", 1);
  const auto env = invoke(args);
  ::unsetenv("EDGE_OUTAGE_WORKERS");
  const auto plain = invoke(args);
  ASSERT_EQ(env.code, kOk) << env.err;
  EXPECT_EQ(env.out, plain.out);
  EXPECT_EQ(nlohmann::json::parse(plain.out)["rap_cache"], "resample");
}

TEST(Cli, OccupancyRows) {
  const auto r = invoke({"occupancy", "--bins", "3", "--balls", "2", "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2U);
  EXPECT_EQ(j[0]["z"], 1);
  EXPECT_NEAR(j[0]["p"].get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(j[1]["p"].get<double>(), 2.0 / 3.0, 1e-12);
}

TEST(Cli, OccupancyGaussianMean) {
  const auto r = invoke({"occupancy", "--bins", "100", "--balls", "100", "--alpha", "1.5", "--method", "gaussian",
                         "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  double mass = 0.0;
  double mean = 0.0;
  for (const auto& row : j) {
    mass += row["p"].get<double>();
    mean += row["z"].get<double>() * row["p"].get<double>();
  }
  EXPECT_NEAR(mean / mass, 23.36, 0.05);
  EXPECT_EQ(invoke({"occupancy", "--bins", "10", "--balls", "3", "--alpha", "1"}).code, kUsage);
}

TEST(Cli, SweepRowCounts) {
  const auto r = invoke({"sweep", "--scheme", "rap", "--library", "100", "--cache", "10", "--axis",
                         "C=20,30,40,50", "--axis", "d=1:100"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(lines(r.out).size(), 401U);
  const auto m = invoke({"sweep", "--scheme", "mop", "--library", "100", "--capacity", "30", "--alpha", "0.8",
                         "--target", "0.01", "--axis", "M=0:100:10", "--format", "json"});
  ASSERT_EQ(m.code, kOk) << m.err;
  const auto j = nlohmann::json::parse(m.out);
  ASSERT_EQ(j.size(), 11U);
  EXPECT_EQ(j[10]["at_ceiling"], true);
  EXPECT_EQ(invoke({"sweep", "--scheme", "rap", "--library", "100", "--cache", "10", "--capacity", "5",
                    "--target", "0.01", "--axis", "d=1:3"}).code, kUsage);
}

TEST(Cli, RealFormatting) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(2.0 / 3.0), "0.666666666667");
  EXPECT_EQ(format_real(0.0), "0");
  EXPECT_EQ(format_real(1.5e-20), "1.5e-20");
}

TEST(Cli, Verify) {
  const auto r = invoke({"verify", "--max-library", "4", "--max-users", "4"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(lines(r.out).size(), 5U);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace edge_outage::cli
