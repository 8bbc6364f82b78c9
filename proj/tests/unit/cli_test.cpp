#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qqft::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qqft_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void expect_same_tree(const fs::path& a, const fs::path& b) const {
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
      const fs::path other = b / entry.path().filename();
      ASSERT_TRUE(fs::exists(other)) << other;
      EXPECT_EQ(slurp(entry.path()), slurp(other)) << entry.path().filename();
      ++files;
    }
    EXPECT_GT(files, 0u);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, CompileReportsDepth) {
  const Result r = run({"compile", "--n", "5", "--out", path("seq")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("depth=106"), std::string::npos);
  EXPECT_NE(r.out.find("N log N"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("seq/qqft_N32.json")));

  const Result g = run({"compile", "--N", "33", "--out", path("seq")});
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("depth=529"), std::string::npos);
  EXPECT_NE(g.out.find("N^2"), std::string::npos);
}

TEST_F(CliTest, CompileUsageErrors) {
  EXPECT_EQ(run({"compile", "--n", "0"}).code, 2);
  EXPECT_EQ(run({"compile"}).code, 2);
  EXPECT_EQ(run({"compile", "--n", "3", "--N", "8"}).code, 2);
  EXPECT_EQ(run({"compile", "--N", "1"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(CliTest, VerifyPassesAndCatchesCorruption) {
  for (const char* n : {"1", "3", "6"}) {
    ASSERT_EQ(run({"compile", "--n", n, "--out", path("seq")}).code, 0);
  }
  ASSERT_EQ(run({"compile", "--N", "33", "--out", path("seq")}).code, 0);
  for (const char* f : {"qqft_N2.json", "qqft_N8.json", "qqft_N64.json", "qqft_N33.json"}) {
    const Result r = run({"verify", path(std::string("seq/") + f)});
    EXPECT_EQ(r.code, 0) << f << r.out;
    EXPECT_EQ(r.out.rfind("PASS", 0), 0u);
  }

  auto doc = nlohmann::json::parse(slurp(path("seq/qqft_N8.json")));
  for (auto& g : doc["gates"]) {
    if (g["kind"] == "mix") {
      g["phi"] = g["phi"].get<double>() + 0.1;
      break;
    }
  }
  std::ofstream(path("bad.json")) << doc.dump();
  const Result bad = run({"verify", path("bad.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("FAIL", 0), 0u);

  doc["gates"][0]["site"] = 99;
  std::ofstream(path("broken.json")) << doc.dump();
  EXPECT_EQ(run({"verify", path("broken.json")}).code, 1);
  EXPECT_EQ(run({"verify", path("missing.json")}).code, 2);
}

TEST_F(CliTest, PoincareOutputsAreReproducibleAcrossWorkers) {
  const std::vector<std::string> base{"poincare", "--sigma", "0,5e-3,2e-2", "--realizations", "4",
                                      "--seed", "7"};
  auto a = base, b = base;
  a.insert(a.end(), {"--workers", "1", "--out", path("a")});
  b.insert(b.end(), {"--workers", "3", "--out", path("b")});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  expect_same_tree(path("a"), path("b"));
  for (int s = 0; s < 3; ++s) {
    EXPECT_TRUE(fs::exists(path("a/greens_" + std::to_string(s) + "_im.csv")));
  }
  const std::string sym = slurp(path("a/symmetry.csv"));
  EXPECT_EQ(sym.rfind("# qqft ", 0), 0u);
  EXPECT_NE(sym.find("\nsigma,s_lorentz,"), std::string::npos);
}

TEST_F(CliTest, FlatbandOutputsAreReproducibleAcrossWorkers) {
  const std::vector<std::string> base{"flatband", "--grid", "4", "--sigma", "0,1e-2",
                                      "--realizations", "3", "--phase-grid", "2"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", path("a")});
  b.insert(b.end(), {"--workers", "2", "--out", path("b")});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  expect_same_tree(path("a"), path("b"));
  const auto manifest = nlohmann::json::parse(slurp(path("a/manifest.json")));
  EXPECT_EQ(manifest["config"]["grid"], 4);
  EXPECT_FALSE(manifest["config"].contains("workers"));
}

TEST_F(CliTest, DigestTracksResultAffectingFields) {
  qqft::cli::RunConfig c;
  c.command = "poincare";
  c.sigmas = {0.0};
  const std::string d0 = qqft::cli::config_digest(c);
  c.workers = 8;
  c.out_dir = "/elsewhere";
  EXPECT_EQ(qqft::cli::config_digest(c), d0);
  c.seed = 2;
  EXPECT_NE(qqft::cli::config_digest(c), d0);
  EXPECT_EQ(d0.size(), 16u);
}

TEST_F(CliTest, ConfigFileSuppliesOptions) {
  std::ofstream(path("run.toml")) << "[poincare]\nrealizations = 2\nsigma = [0.0, 0.01]\nout = \""
                                  << path("cfg") << "\"\n";
  const Result r = run({"--config", path("run.toml"), "poincare"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto manifest = nlohmann::json::parse(slurp(path("cfg/manifest.json")));
  EXPECT_EQ(manifest["config"]["realizations"], 2);
  EXPECT_EQ(manifest["config"]["sigma"].size(), 2u);
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1e-300, -2.5e-3, 12.566370614359172}) {
    EXPECT_EQ(std::stod(qqft::cli::format_double(v)), v);
  }
  EXPECT_EQ(qqft::cli::format_double(0.0), "0");
}
