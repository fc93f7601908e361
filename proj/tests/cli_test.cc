#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "distlink/cli/cli.h"
#include "distlink/cli/manifest.h"
#include "distlink/core/io.h"
#include "test_util.h"

namespace distlink::cli {
namespace {

namespace fs = std::filesystem;
using testing::config_path;
using testing::data_path;
using testing::scratch_dir;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "distlink");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_small_config(const fs::path& dir) {
  const fs::path p = dir / "small.json";
  std::ofstream(p) << R"({"n_target": 30, "n_ident": 30, "n_common": 8,
    "sigma_grid": [0.005, 0.02], "alpha_grid": [0.5, 0.9], "repetitions": 2,
    "qi_distributions": ")"
                   << config_path("census_like_qi.json").string() << R"(",
    "seed": 7, "calibration_pairs": 200, "ru_alpha": 0.5})";
  return p;
}

std::vector<std::string> poets_attack_args() {
  return {"attack",
          "--target-table", data_path("poets/target.csv").string(),
          "--target-matrix", data_path("poets/d1.csv").string(),
          "--ident-table", data_path("poets/ident.csv").string(),
          "--ident-matrix", data_path("poets/d2.csv").string(),
          "--qi", "cob,language"};
}

std::set<std::pair<std::string, std::string>> read_pairs(const fs::path& p) {
  std::set<std::pair<std::string, std::string>> out;
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    out.insert({line.substr(0, comma), line.substr(comma + 1)});
  }
  return out;
}

TEST(Distmat, FourCities) {
  const fs::path dir = scratch_dir("distmat1");
  const CliRun r = run({"distmat", "--in", data_path("cities.csv").string(), "--out",
                     (dir / "m.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto got = core::load_matrix(dir / "m.csv");
  const auto want = core::load_matrix(data_path("cities_matrix.csv"));
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    for (std::size_t j = 0; j < got.size(); ++j) EXPECT_NEAR(got.at(i, j), want.at(i, j), 0.1);
  }
  EXPECT_TRUE(fs::exists(dir / "m.csv.manifest.json"));
}

TEST(Distmat, PoetsAgainstPublishedMatrix) {
  const fs::path dir = scratch_dir("distmat2");
  ASSERT_EQ(run({"distmat", "--in", data_path("poets/poets.csv").string(), "--out",
                 (dir / "m.csv").string()}).code, 0);
  const auto got = core::load_matrix(dir / "m.csv");
  const auto want = core::load_matrix(data_path("poets/d1.csv"));
  for (std::size_t i = 0; i < got.size(); ++i) {
    for (std::size_t j = 0; j < got.size(); ++j) EXPECT_NEAR(got.at(i, j), want.at(i, j), 1.0);
  }
}

TEST(Distmat, SinglePoint) {
  const fs::path dir = scratch_dir("distmat3");
  std::ofstream(dir / "p.csv") << "lon,lat\n10.5,50.1\n";
  ASSERT_EQ(run({"distmat", "--in", (dir / "p.csv").string(), "--out", (dir / "m.csv").string()})
                .code, 0);
  const auto m = core::load_matrix(dir / "m.csv");
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m.at(0, 0), 0.0);
}

TEST(Attack, PoetsGolden) {
  const fs::path dir = scratch_dir("attack1");
  auto args = poets_attack_args();
  for (const char* a : {"--abs-eps", "5", "--truth"}) args.push_back(a);
  args.push_back(data_path("poets/truth.csv").string());
  args.push_back("--out");
  args.push_back((dir / "matches.csv").string());
  const CliRun r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("product vertices: 11\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("product edges: 9\n"), std::string::npos);
  EXPECT_NE(r.out.find("clique size: 4\n"), std::string::npos);
  EXPECT_NE(r.out.find("precision 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("recall 1\n"), std::string::npos);
  EXPECT_EQ(read_pairs(dir / "matches.csv"),
            (std::set<std::pair<std::string, std::string>>{
                {"1", "1"}, {"2", "2"}, {"3", "3"}, {"4", "4"}}));
  const auto manifest = nlohmann::json::parse(slurp(dir / "matches.csv.manifest.json"));
  EXPECT_EQ(manifest["command"], "attack");
  EXPECT_EQ(manifest["inputs"].size(), 5u);
  EXPECT_EQ(manifest["inputs"][0]["sha256"].get<std::string>(),
            sha256_file(data_path("poets/target.csv")));
}

TEST(Attack, BandRelationAcceptsNegativeBounds) {
  auto args = poets_attack_args();
  for (const char* a : {"--band", "-5", "5"}) args.push_back(a);
  const CliRun r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("matches: 4\n"), std::string::npos) << r.out;
}

TEST(Attack, RelationMustBeGivenOnce) {
  EXPECT_EQ(run(poets_attack_args()).code, kExitInput);
  auto both = poets_attack_args();
  for (const char* a : {"--abs-eps", "5", "--band", "-1", "1"}) both.push_back(a);
  EXPECT_EQ(run(both).code, kExitInput);
  auto no_alpha = poets_attack_args();
  no_alpha.push_back("--calibration");
  no_alpha.push_back("whatever.json");
  EXPECT_EQ(run(no_alpha).code, kExitInput);
}

TEST(Attack, BadInputsExitWithInputCode) {
  auto missing = poets_attack_args();
  missing[2] = "/nonexistent/target.csv";
  missing.push_back("--abs-eps");
  missing.push_back("5");
  EXPECT_EQ(run(missing).code, kExitInput);
  auto bad_qi = poets_attack_args();
  bad_qi.back() = "cob,shoe_size";
  bad_qi.push_back("--abs-eps");
  bad_qi.push_back("5");
  EXPECT_EQ(run(bad_qi).code, kExitInput);
  EXPECT_EQ(run({"attack"}).code, kExitInput);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

class GeneratedPair : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(scratch_dir("gendata"));
    const fs::path config = write_small_config(*dir_);
    for (const char* seed : {"1", "2"}) {
      const CliRun r = run({"gendata", "--config", config.string(), "--sigma", "0", "--out-dir",
                         (*dir_ / seed).string(), "--seed", seed});
      ASSERT_EQ(r.code, 0) << r.err;
    }
  }
  static void TearDownTestSuite() { delete dir_; }

  static std::vector<std::string> attack_args(const std::string& t, const std::string& i,
                                              bool swap) {
    std::vector<std::string> a = {
        "attack",
        "--target-table", (*dir_ / t / (swap ? "ident.csv" : "target.csv")).string(),
        "--target-matrix", (*dir_ / t / (swap ? "ident_matrix.csv" : "target_matrix.csv")).string(),
        "--ident-table", (*dir_ / i / (swap ? "target.csv" : "ident.csv")).string(),
        "--ident-matrix", (*dir_ / i / (swap ? "target_matrix.csv" : "ident_matrix.csv")).string(),
        "--qi", "gender,age"};
    return a;
  }

  static fs::path* dir_;
};

fs::path* GeneratedPair::dir_ = nullptr;

TEST_F(GeneratedPair, FilesAndManifest) {
  for (const char* f : {"target.csv", "target_matrix.csv", "ident.csv", "ident_matrix.csv",
                        "truth.csv", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(*dir_ / "1" / f)) << f;
  }
  const auto manifest = nlohmann::json::parse(slurp(*dir_ / "1" / "manifest.json"));
  EXPECT_EQ(manifest["seed"], 1);
  EXPECT_EQ(manifest["config"]["n_common"], 8);
}

TEST_F(GeneratedPair, RecoversTruthWithoutNoise) {
  auto args = attack_args("1", "1", false);
  for (const char* a : {"--abs-eps", "0.000001", "--truth"}) args.push_back(a);
  args.push_back((*dir_ / "1" / "truth.csv").string());
  const CliRun r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("recall 1\n"), std::string::npos) << r.out;
}

TEST_F(GeneratedPair, UnrelatedFilesGiveAtMostOneMatch) {
  auto args = attack_args("1", "2", false);
  args.push_back("--abs-eps");
  args.push_back("0.000001");
  const CliRun r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.find("matches: 0\n") != std::string::npos ||
              r.out.find("matches: 1\n") != std::string::npos)
      << r.out;
}

TEST_F(GeneratedPair, SwappingRolesReversesPairs) {
  const fs::path out = scratch_dir("swap");
  auto forward = attack_args("1", "1", false);
  auto backward = attack_args("1", "1", true);
  for (auto* args : {&forward, &backward}) {
    args->push_back("--abs-eps");
    args->push_back("0.000001");
    args->push_back("--out");
  }
  forward.push_back((out / "f.csv").string());
  backward.push_back((out / "b.csv").string());
  ASSERT_EQ(run(forward).code, 0);
  ASSERT_EQ(run(backward).code, 0);
  std::set<std::pair<std::string, std::string>> reversed;
  for (const auto& [t, i] : read_pairs(out / "b.csv")) reversed.insert({i, t});
  EXPECT_EQ(read_pairs(out / "f.csv"), reversed);
  EXPECT_EQ(reversed.size(), 8u);
}

TEST_F(GeneratedPair, BudgetExhaustionExitCode) {
  auto args = attack_args("1", "1", false);
  for (const char* a : {"--abs-eps", "100000", "--node-budget", "1"}) args.push_back(a);
  EXPECT_EQ(run(args).code, kExitBudget);
}

TEST_F(GeneratedPair, DimacsOutput) {
  const fs::path out = scratch_dir("dimacs");
  auto args = attack_args("1", "1", false);
  for (const char* a : {"--abs-eps", "0.000001", "--dimacs"}) args.push_back(a);
  args.push_back((out / "g.dimacs").string());
  const CliRun r = run(args);
  ASSERT_EQ(r.code, 0);
  const std::string text = slurp(out / "g.dimacs");
  EXPECT_NE(text.find("p edge "), std::string::npos);
}

TEST(Calibrate, ZeroSigmaAndMonotoneVariance) {
  const fs::path dir = scratch_dir("calibrate");
  const CliRun r = run({"calibrate", "--sigma", "0,0.01,0.05", "--pairs", "500", "--seed", "3",
                     "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(dir / "quantiles.csv");
  const auto rows = core::parse_csv(in);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0][0], "sigma");
  std::vector<double> variances;
  for (std::size_t row = 1; row < rows.size(); ++row) {
    const auto& fields = rows[row];
    variances.push_back(std::stod(fields.back()));
    if (variances.size() == 1) {
      for (std::size_t k = 1; k < fields.size(); ++k) EXPECT_EQ(std::stod(fields[k]), 0.0);
    }
  }
  ASSERT_EQ(variances.size(), 3u);
  EXPECT_LT(variances[0], variances[1]);
  EXPECT_LT(variances[1], variances[2]);
  EXPECT_TRUE(fs::exists(dir / "calibration_0.01.json"));
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
}

TEST(Calibrate, CalibrationFileDrivesAttack) {
  const fs::path dir = scratch_dir("calibrate2");
  ASSERT_EQ(run({"calibrate", "--sigma", "0.001", "--pairs", "300", "--seed", "3", "--out-dir",
                 dir.string()}).code, 0);
  auto args = poets_attack_args();
  for (const char* a : {"--alpha", "0.9", "--calibration"}) args.push_back(a);
  args.push_back((dir / "calibration_0.001.json").string());
  const CliRun r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("relation: "), std::string::npos);
}

TEST(Simulate, ByteIdenticalRerun) {
  const fs::path dir = scratch_dir("simulate");
  const fs::path config = write_small_config(dir);
  ASSERT_EQ(run({"simulate", "--config", config.string(), "--out-dir", (dir / "a").string(),
                 "--threads", "1"}).code, 0);
  ASSERT_EQ(run({"simulate", "--config", config.string(), "--out-dir", (dir / "b").string(),
                 "--threads", "2"}).code, 0);
  for (const char* f : {"results.csv", "precision_table.csv", "recall_table.csv",
                        "calibration_summary.csv", "ru_map.csv"}) {
    const std::string a = slurp(dir / "a" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, slurp(dir / "b" / f)) << f;
  }
}

TEST(Simulate, SeedFromEnvironment) {
  const fs::path dir = scratch_dir("simulate_env");
  const fs::path config = write_small_config(dir);
  ::setenv("DISTLINK_SEED", "99", 1);
  const CliRun env = run({"simulate", "--config", config.string(), "--out-dir", (dir / "e").string()});
  ::unsetenv("DISTLINK_SEED");
  ASSERT_EQ(env.code, 0) << env.err;
  ASSERT_EQ(run({"simulate", "--config", config.string(), "--out-dir", (dir / "s").string(),
                 "--seed", "99"}).code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "e" / "manifest.json"))["seed"], 99);
  EXPECT_EQ(slurp(dir / "e" / "results.csv"), slurp(dir / "s" / "results.csv"));
  ASSERT_EQ(run({"simulate", "--config", config.string(), "--out-dir", (dir / "c").string()})
                .code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "c" / "manifest.json"))["seed"], 7);
  EXPECT_NE(slurp(dir / "c" / "results.csv"), slurp(dir / "s" / "results.csv"));
}

TEST(Simulate, ZeroSigmaGridIsDegenerate) {
  const fs::path dir = scratch_dir("simulate_zero");
  const fs::path config = dir / "zero.json";
  auto j = nlohmann::json::parse(slurp(write_small_config(dir)));
  j["sigma_grid"] = {0.0};
  std::ofstream(config) << j.dump();
  const CliRun r = run({"simulate", "--config", config.string(), "--out-dir", dir.string()});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("band is empty"), std::string::npos) << r.err;
}

TEST(Simulate, BadSeedAndConfig) {
  const fs::path dir = scratch_dir("simulate_bad");
  const fs::path config = write_small_config(dir);
  EXPECT_EQ(run({"simulate", "--config", config.string(), "--out-dir", dir.string(), "--seed",
                 "12abc"}).code, kExitInput);
  EXPECT_EQ(run({"simulate", "--config", (dir / "nope.json").string(), "--out-dir",
                 dir.string()}).code, kExitInput);
}

}  // namespace
}  // namespace distlink::cli
