#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "cutpaste/io.hpp"

namespace fs = std::filesystem;
using cutpaste::io::read_text;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("cutpaste_cli_") + info->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(std::vector<std::string> args, const fs::path& out_dir = {}) {
    std::vector<std::string> full{"--out", (out_dir.empty() ? dir_ : out_dir).string()};
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream o, e;
    const int code = cutpaste::cli::run(full, o, e);
    return {code, o.str(), e.str()};
  }

  static std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, DiscreteCutAndPaste) {
  const auto r = run({"discrete", "--eta", "0.3", "--unitary", "x", "--sequence", "PQPQ"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Phi: is_eb=false"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("eb_order=2"), std::string::npos);
  const json rep = json::parse(read_text(dir_ / "discrete_report.json"));
  EXPECT_EQ(rep["phi"]["eb_order"], 2);
  EXPECT_EQ(rep["psi"]["eb_order"], 2);
  EXPECT_NEAR(rep["sequence"]["concurrence"].get<double>(), 0.09, 1e-9);
  EXPECT_FALSE(rep["sequence"]["is_eb"].get<bool>());
  EXPECT_TRUE(fs::exists(dir_ / "discrete_manifest.json"));
}

TEST_F(Cli, DiscreteOrderings) {
  auto r = run({"discrete", "--sequence", "QQPP"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(read_text(dir_ / "discrete_report.json"))["sequence"]["is_eb"].get<bool>());
  r = run({"discrete", "--order-of", "QP", "--max-order", "10"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(read_text(dir_ / "discrete_report.json"))["order_of"]["eb_order"], "Unbounded");
}

TEST_F(Cli, DiscretePhaseDamping) {
  const auto r = run({"discrete", "--pd", "0.4", "--unitary", "zx-diag", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = json::parse(r.out);
  EXPECT_EQ(rep["family"], "pd");
  EXPECT_EQ(rep["phi"]["eb_order"], 2);
}

TEST_F(Cli, DiscreteUnitaryAsJson) {
  const auto r = run({"discrete", "--unitary", "[[0,1],[1,0]]"});
  ASSERT_EQ(r.code, 0) << r.err;
  fs::create_directories(dir_);
  const fs::path f = dir_ / "u.json";
  std::ofstream(f) << "[[1,0],[0,[0,1]]]";
  EXPECT_EQ(run({"discrete", "--unitary", "@" + f.string()}).code, 0);
}

TEST_F(Cli, OrderSweepRows) {
  ASSERT_EQ(run({"discrete", "--order-sweep", "10"}).code, 0);
  EXPECT_EQ(lines(read_text(dir_ / "discrete_order_sweep.csv")), 11u);
}

TEST_F(Cli, ValidationErrorsExitTwo) {
  EXPECT_EQ(run({"discrete", "--sequence", "PXQ"}).code, 2);
  EXPECT_EQ(run({"discrete", "--eta", "1.5"}).code, 2);
  EXPECT_EQ(run({"discrete", "--eta", "0.3", "--pd", "0.3"}).code, 2);
  EXPECT_EQ(run({"discrete", "--unitary", "[[1,1],[0,1]]"}).code, 2);
  EXPECT_EQ(run({"discrete", "--unitary", "nonsense"}).code, 2);
  EXPECT_EQ(run({"experiment", "--map", "m7"}).code, 2);
  EXPECT_EQ(run({"experiment", "--vary", "psi"}).code, 2);
  EXPECT_EQ(run({"continuous", "--family", "xx"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(Cli, LiteralSignExitsThree) {
  const auto r = run({"continuous", "--family", "pd", "--paper-literal-sign", "--n", "1", "--steps", "31", "--x-max", "3"});
  EXPECT_EQ(r.code, 3) << r.out << r.err;
  EXPECT_NE(r.err.find("NotCompletelyPositive"), std::string::npos);
}

TEST_F(Cli, ContinuousFiles) {
  const auto r = run({"continuous", "--family", "ad", "--n", "1,2", "--steps", "61", "--x-max", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("single: eb_length=1.77"), std::string::npos) << r.out;
  for (const char* f : {"continuous_ad_single.csv", "continuous_ad_n1.csv", "continuous_ad_n2.csv",
                        "continuous_ad_trotter.csv"}) {
    ASSERT_TRUE(fs::exists(dir_ / f)) << f;
    EXPECT_EQ(lines(read_text(dir_ / f)), 62u) << f;
  }
  EXPECT_EQ(read_text(dir_ / "continuous_ad_n2.csv").substr(0, 30), "x,concurrence,pre_clamp,label\n");
}

TEST_F(Cli, ContinuousUnboundedSkipsSwitched) {
  const auto r = run({"continuous", "--omega", "0", "--steps", "11", "--x-hi", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("skipped"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "continuous_ad_n2.csv"));
}

TEST_F(Cli, ExperimentSweep) {
  const auto r = run({"experiment", "--map", "mprime", "--steps", "361"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = read_text(dir_ / "experiment_mprime_ideal_theta.csv");
  EXPECT_EQ(lines(csv), 362u);
  EXPECT_NE(r.out.find("peak angle=-0.785398163397"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("peak angle=0.785398163397"), std::string::npos) << r.out;
}

TEST_F(Cli, ExperimentDegrees) {
  const auto r = run({"--degrees", "experiment", "--map", "m1", "--lo", "-90", "--hi", "90", "--steps", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = read_text(dir_ / "experiment_m1_ideal_theta.csv");
  EXPECT_NE(csv.find("\n-45,0,"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\n90,"), std::string::npos) << csv;
}

TEST_F(Cli, ExperimentSetupFile) {
  fs::create_directories(dir_);
  const fs::path f = dir_ / "setup.json";
  std::ofstream(f) << R"({"label": "custom", "elements": [{}, {"bs": {"T": 0.45, "R": 0.45}}, {}]})";
  const auto r = run({"experiment", "--setup", f.string(), "--steps", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "experiment_custom_custom_theta.csv"));

  std::ofstream(f) << R"({"elements": [{"pbs": {"T_H": 0.965, "R_H": 0.0185, "T_V": 0.004, "R_V": 0.948, "loss_H": 0.022}}, {}, {}]})";
  EXPECT_EQ(run({"experiment", "--setup", f.string(), "--steps", "3"}).code, 2);
}

TEST_F(Cli, OmegaCheck) {
  const auto r = run({"experiment", "--steps", "3", "--omega-samples", "2000", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("omega_check dif3 samples=2000"), std::string::npos);
}

TEST_F(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"experiment", "--preset", "measured", "--steps", "91", "--threads", "3"};
  ASSERT_EQ(run(args, dir_ / "a").code, 0);
  ASSERT_EQ(run(args, dir_ / "b").code, 0);
  const char* f = "experiment_mprime_measured_theta.csv";
  EXPECT_EQ(read_text(dir_ / "a" / f), read_text(dir_ / "b" / f));
}

TEST_F(Cli, ReplayMatches) {
  ASSERT_EQ(run({"discrete", "--sequence", "PQPQ", "--order-sweep", "4"}).code, 0);
  std::ostringstream o, e;
  const int code = cutpaste::cli::run({"replay", "--manifest", (dir_ / "discrete_manifest.json").string()}, o, e);
  EXPECT_EQ(code, 0) << e.str();
  EXPECT_NE(o.str().find("identical discrete_report.json"), std::string::npos) << o.str();
  EXPECT_NE(o.str().find("identical discrete_order_sweep.csv"), std::string::npos);
}

TEST_F(Cli, ReplayDetectsTampering) {
  ASSERT_EQ(run({"discrete"}).code, 0);
  std::ofstream(dir_ / "discrete_report.json", std::ios::app) << " ";
  std::ostringstream o, e;
  EXPECT_EQ(cutpaste::cli::run({"replay", "--manifest", (dir_ / "discrete_manifest.json").string()}, o, e), 3);
  EXPECT_NE(o.str().find("differs discrete_report.json"), std::string::npos);
}

TEST_F(Cli, VersionAndHelp) {
  std::ostringstream o, e;
  EXPECT_EQ(cutpaste::cli::run({"--version"}, o, e), 0);
  EXPECT_EQ(o.str(), cutpaste::io::library_version() + "\n");
  std::ostringstream o2;
  EXPECT_EQ(cutpaste::cli::run({"--help"}, o2, e), 0);
  EXPECT_NE(o2.str().find("discrete"), std::string::npos);
}
