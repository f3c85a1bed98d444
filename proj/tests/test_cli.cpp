#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tunenet_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()
                                             ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the tool with stdout to out.txt and stderr to err.txt; returns the exit code.
  int run(const std::string& args) {
    const std::string cmd = std::string("\"") + TUNENET_CLI + "\" " + args + " > \"" +
                            path("out.txt") + "\" 2> \"" + path("err.txt") + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string slurp(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void put(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
};

TEST_F(Cli, GenerateWritesFiles) {
  ASSERT_EQ(run("generate --n 300 --c 5 --seed 3 --format graphml dot --out " + path("net")),
            0)
      << slurp("err.txt");
  for (const char* suffix : {".edges", ".communities.tsv", ".graphml", ".dot",
                             ".manifest.json"}) {
    EXPECT_TRUE(fs::exists(path(std::string("net") + suffix))) << suffix;
  }
  const auto manifest = nlohmann::json::parse(slurp("net.manifest.json"));
  EXPECT_EQ(manifest["node_count"], 300);
  EXPECT_EQ(manifest["params"]["seed"], 3);
  EXPECT_EQ(manifest["seed_source"], "flag");
}

TEST_F(Cli, GenerateIsReproducible) {
  ASSERT_EQ(run("generate --n 400 --c 4 --pt 0.5 --pc 0.2 --seed 9 --out " + path("a")), 0);
  ASSERT_EQ(run("generate --n 400 --c 4 --pt 0.5 --pc 0.2 --seed 9 --out " + path("b")), 0);
  EXPECT_EQ(slurp("a.edges"), slurp("b.edges"));
  EXPECT_EQ(slurp("a.communities.tsv"), slurp("b.communities.tsv"));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("generate --n 20 --c 10 --out " + path("x")), 2);
  EXPECT_NE(slurp("err.txt").find("3 * --c"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("x.edges")));
  EXPECT_EQ(run("generate --n 100 --pc 1.5 --out " + path("x")), 2);
  EXPECT_EQ(run("generate --n 100 --pt -0.1 --out " + path("x")), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, AnalyzeTriangle) {
  put("tri.edges", "0 1\n1 2\n0 2\n");
  ASSERT_EQ(run("analyze --in " + path("tri.edges")), 0) << slurp("err.txt");
  const auto report = nlohmann::json::parse(slurp("out.txt"));
  EXPECT_DOUBLE_EQ(report["avg_clustering"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(report["avg_path_length"].get<double>(), 1.0);
  EXPECT_EQ(report["node_count"], 3);
}

TEST_F(Cli, AnalyzeWithLabels) {
  ASSERT_EQ(run("generate --n 500 --c 5 --seed 1 --out " + path("net")), 0);
  ASSERT_EQ(run("analyze --in " + path("net.edges") + " --labels " +
                path("net.communities.tsv") + " --seed 1"),
            0)
      << slurp("err.txt");
  const auto report = nlohmann::json::parse(slurp("out.txt"));
  EXPECT_EQ(report["ground_truth"]["groups"], 5);
  EXPECT_EQ(report["x_min"], 2);
}

TEST_F(Cli, InputAndDisconnectedErrors) {
  put("two.edges", "0 1\n2 3\n");
  EXPECT_EQ(run("analyze --in " + path("two.edges")), 4);
  put("bad.edges", "0 1\n1 1\n");
  EXPECT_EQ(run("analyze --in " + path("bad.edges")), 3);
  EXPECT_NE(slurp("err.txt").find("2"), std::string::npos);
  EXPECT_EQ(run("analyze --in " + path("missing.edges")), 3);
}

TEST_F(Cli, DetectWritesPartition) {
  put("tt.edges", "0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n2 3\n");
  ASSERT_EQ(run("detect --in " + path("tt.edges") + " --out " + path("tt.tsv")), 0)
      << slurp("err.txt");
  EXPECT_EQ(slurp("tt.tsv"), "0\t0\n1\t0\n2\t0\n3\t1\n4\t1\n5\t1\n");
  const auto summary = nlohmann::json::parse(slurp("out.txt"));
  EXPECT_EQ(summary["groups"], 2);
  EXPECT_NEAR(summary["modularity"].get<double>(), 5.0 / 14, 1e-12);
}

TEST_F(Cli, ExperimentDeterministic) {
  put("table.csv", "key,n,m,c,p_t,p_c\n1,200,2,4,0.5,0.1\n2,200,2,4,1.0,1.0\n");
  const std::string args = "experiment --quiet --replicates 2 --seed 5 --table " +
                           path("table.csv") + " --out-csv ";
  ASSERT_EQ(run(args + path("a.csv")), 0) << slurp("err.txt");
  ASSERT_EQ(run(args + path("b.csv") + " --jobs 3"), 0) << slurp("err.txt");
  EXPECT_EQ(slurp("a.csv"), slurp("b.csv"));
  EXPECT_EQ(slurp("a.csv").rfind("key,n,m,c,p_t,p_c,replicates,failures,", 0), 0u);
  put("bad.csv", "1,20,2,10,0.5,0.1\n");
  EXPECT_EQ(run("experiment --table " + path("bad.csv")), 3);
}

TEST_F(Cli, BenchRows) {
  ASSERT_EQ(run("bench --sizes 1000 2000 --seed 1"), 0) << slurp("err.txt");
  std::istringstream in(slurp("out.txt"));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 3u);
  EXPECT_EQ(run("bench --sizes 10"), 2);
}

}  // namespace
