#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "gcolex/cli.hpp"
#include "gcolex/colex.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = gcolex::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gcolex_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, DegeneracyPrintsSummary) {
  Result r = run({"degeneracy", "--group", "Z2", "--lattice", "hex-torus:1", "--out", path("d.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "degeneracy=16 valid=32 method=orbit\n");
  auto j = nlohmann::json::parse(slurp(path("d.json")));
  EXPECT_EQ(j.at("degeneracy"), 16);
  EXPECT_EQ(j.at("valid_count"), 32);
  EXPECT_EQ(j.at("method"), "orbit");
  EXPECT_TRUE(j.contains("seed"));
  Result o = run({"degeneracy", "--group", "Z2", "--lattice", "triangular:3", "--method", "rank_oracle"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("degeneracy=2 "), std::string::npos);
}

TEST_F(Cli, PrintedNumbersAppearInReport) {
  Result r = run({"qd", "degeneracy", "--size", "2x2", "--group", "Z3", "--out", path("q.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("degeneracy=9 ", 0), 0u);
  auto j = nlohmann::json::parse(slurp(path("q.json")));
  std::regex num(R"((\w+)=(\d+))");
  for (std::sregex_iterator it(r.out.begin(), r.out.end(), num), end; it != end; ++it) {
    std::string key = (*it)[1] == "valid" ? "valid_count" : std::string((*it)[1]);
    EXPECT_EQ(j.at(key).get<std::uint64_t>(), std::stoull((*it)[2])) << key;
  }
  Result a = run({"anyons", "--group", "S3", "--color-code", "--out", path("a.json")});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, "32\n");
  EXPECT_EQ(nlohmann::json::parse(slurp(path("a.json"))).at("anyons"), 32);
  EXPECT_EQ(run({"anyons", "--group", "S3"}).out, "8\n");
}

TEST_F(Cli, GroupInfo) {
  Result r = run({"group", "info", "--group", "Q8"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("order"), 8);
  EXPECT_EQ(j.at("commutator_order"), 2);
  EXPECT_EQ(j.at("conjugacy_classes"), 5);
  std::ofstream(path("z3.txt")) << "3\n0 1 2\n1 2 0\n2 0 1\n";
  Result t = run({"group", "info", "--group", path("z3.txt")});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(nlohmann::json::parse(t.out).at("double_anyons"), 9);
}

TEST_F(Cli, LatticeBuildValidateExport) {
  ASSERT_EQ(run({"lattice", "build", "--lattice", "rect-bg:2x2", "--out", path("l.json")}).code, 0);
  EXPECT_EQ(gcolex::load_lattice(path("l.json")), gcolex::build_rect(2, 2, gcolex::RectScheme::BlueGreen));
  Result v = run({"lattice", "validate", path("l.json")});
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(v.out).at("ok").get<bool>());
  Result d = run({"lattice", "export-dot", "--lattice", "triangular:3"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out.rfind("graph colex {", 0), 0u);
}

TEST_F(Cli, ValidateBrokenLattice) {
  auto j = nlohmann::json::parse(gcolex::to_json(gcolex::build_hex_torus(2)));
  j["edges"][4]["color"] = j["edges"][4]["color"] == "R" ? "G" : "R";
  std::ofstream(path("broken.json")) << j.dump();
  Result r = run({"lattice", "validate", path("broken.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("first violation:"), std::string::npos);
  std::ofstream(path("garbage.json")) << "{\"version\": 1";
  Result g = run({"lattice", "validate", path("garbage.json")});
  EXPECT_EQ(g.code, 1);
  EXPECT_NE(g.out.find("format"), std::string::npos);
}

TEST_F(Cli, InvalidInput) {
  Result u = run({"frobnicate"});
  EXPECT_EQ(u.code, 2);
  EXPECT_NE(u.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"degeneracy", "--group", "Z2", "--lattice", "hex-torus:1", "--bogus"}).code, 2);
  EXPECT_EQ(run({"degeneracy", "--group", "Z9x", "--lattice", "hex-torus:1"}).code, 2);
  EXPECT_EQ(run({"degeneracy", "--group", "Z2", "--lattice", "squareoct-torus:3"}).code, 2);
  EXPECT_EQ(run({"degeneracy", "--group", "Z2"}).code, 2);
  EXPECT_EQ(run({"qd", "degeneracy", "--size", "2by2"}).code, 2);
  EXPECT_EQ(run({"stab", "check", "--group", "Z2", "--lattice", "hex-torus:1", "--mode", "fast"}).code, 2);
  EXPECT_EQ(run({"map", "verify", "--group", "Z3", "--full-z2"}).code, 2);
  EXPECT_EQ(run({"lattice", "validate", "--lattice", "hex-torus:1", path("x.json")}).code, 2);
}

TEST_F(Cli, StabCheckIsReproducible) {
  std::vector<std::string> args{"stab", "check", "--group", "S3", "--lattice", "rect-br:2x2", "--mode", "sampled",
                                "--samples", "300", "--seed", "5"};
  Result a = run(args), b = run(args);
  auto more = args;
  more.insert(more.end(), {"--workers", "3"});
  Result c = run(more);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j.at("seed"), 5);
  EXPECT_EQ(j.at("mode"), "sampled");
  EXPECT_EQ(run({"stab", "red-order", "--group", "S3"}).code, 0);
}

TEST_F(Cli, BudgetFromEnvironment) {
  ::setenv("GCOLEX_BUDGET_STATES", "10", 1);
  Result r = run({"degeneracy", "--group", "S3", "--lattice", "hex-torus:1"});
  Result flag = run({"degeneracy", "--group", "S3", "--lattice", "hex-torus:1", "--budget-states", "100000"});
  ::unsetenv("GCOLEX_BUDGET_STATES");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
  EXPECT_EQ(flag.code, 0);
  EXPECT_EQ(flag.out.rfind("degeneracy=32 ", 0), 0u);
}

TEST_F(Cli, MapVerify) {
  Result r = run({"map", "verify", "--group", "Z2", "--full-z2"});
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("ok").get<bool>());
  EXPECT_TRUE(j.contains("full_lattice"));
}
