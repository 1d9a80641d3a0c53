// Copyright 2026 The trotterlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "trotterlab/cli.hpp"
#include "trotterlab/errors.hpp"
#include "trotterlab/sweep.hpp"

namespace trotterlab::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("trotterlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

TEST(ParseGrid, Forms) {
  EXPECT_EQ(parse_grid("0.1,0.2,0.5"), (std::vector<double>{0.1, 0.2, 0.5}));
  const auto lin = parse_grid("lin:0:1:5");
  ASSERT_EQ(lin.size(), 5u);
  EXPECT_DOUBLE_EQ(lin[2], 0.5);
  const auto lg = parse_grid("log:1e-3:1:4");
  ASSERT_EQ(lg.size(), 4u);
  EXPECT_NEAR(lg[1], 1e-2, 1e-15);
  EXPECT_DOUBLE_EQ(lg.back(), 1.0);
  EXPECT_THROW(parse_grid("log:0:1:4"), DomainError);
  EXPECT_THROW(parse_grid("cubic:0:1:4"), DomainError);
  EXPECT_THROW(parse_grid(""), DomainError);
}

TEST(Cli, PresetsListAndShow) {
  const Outcome list = invoke({"presets", "list"});
  EXPECT_EQ(list.code, kExitOk);
  for (const char* name : {"two-level", "ising8", "tfim6", "h2-jw", "h2-bk", "h2-checksum", "h2-updown"}) {
    EXPECT_NE(list.out.find(name), std::string::npos) << name;
  }
  const Outcome ud = invoke({"presets", "show", "h2-updown"});
  EXPECT_EQ(ud.code, kExitOk);
  EXPECT_NE(ud.out.find("-0.347 II"), std::string::npos) << ud.out;
  EXPECT_NE(ud.out.find("0.182 XX"), std::string::npos) << ud.out;
  const Outcome tl = invoke({"presets", "show", "two-level"});
  EXPECT_NE(tl.out.find("1 X\n"), std::string::npos) << tl.out;
  EXPECT_NE(tl.out.find("1 Z\n"), std::string::npos) << tl.out;
  const Outcome tf = invoke({"presets", "show", "tfim6"});
  EXPECT_NE(tf.out.find("0.9 XIIIII"), std::string::npos) << tf.out;
  EXPECT_NE(tf.out.find("0.8 ZIIIII"), std::string::npos) << tf.out;
  EXPECT_NE(tf.out.find("1 ZZIIII"), std::string::npos) << tf.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"presets", "show", "nope"}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--dt-grid", "0.1", "--T-grid", "10", "--fraction", "1.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--dt-grid", "20", "--T-grid", "10"}).code, kExitUsage);
  EXPECT_EQ(invoke({"qaoa-pipeline", "--p-min", "5", "--p-max", "3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"step-counts", "--epsilon", "2"}).code, kExitUsage);
  const Outcome r = invoke({"sweep", "--dt-grid", "0.1", "--T-grid", "10", "--fraction", "0"});
  EXPECT_NE(r.err.find("(0, 1]"), std::string::npos) << r.err;
}

TEST(Cli, HelpSucceeds) {
  const Outcome r = invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("sweep"), std::string::npos);
}

TEST(Cli, DryRunCountsPoints) {
  const Outcome r = invoke({"sweep", "--dt-grid", "log:1e-3:1:10", "--T-grid", "50,100", "--fraction", "0.5", "1",
                        "--dry-run"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("points: 40"), std::string::npos) << r.out;
}

TEST_F(TempDir, SweepWritesCsvManifestAndProgress) {
  const std::string csv = (dir / "sweep.csv").string();
  const Outcome r = invoke({"sweep", "--preset", "two-level", "--dt-grid", "log:0.05:0.5:5", "--T-grid", "20",
                        "--threads", "2", "--out", csv, "--fit-window", "0.05:0.5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(load_sweep_csv(csv).size(), 5u);
  EXPECT_NE(r.err.find("progress 5/5"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("exponent="), std::string::npos) << r.out;

  std::ifstream in(csv + ".manifest.json");
  ASSERT_TRUE(in.good());
  const auto m = nlohmann::json::parse(in);
  for (const char* key : {"tool", "version", "eigen_version", "compiler", "arguments", "resolved_config", "outputs",
                          "wall_time_seconds"}) {
    EXPECT_TRUE(m.contains(key)) << key;
  }
  EXPECT_EQ(m["outputs"][0], csv);
  EXPECT_EQ(m["resolved_config"]["preset"], "two-level");
  EXPECT_EQ(m["resolved_config"]["threads"], "2");

  // Identical configuration gives identical data.
  const std::string again = (dir / "again.csv").string();
  ASSERT_EQ(invoke({"sweep", "--preset", "two-level", "--dt-grid", "log:0.05:0.5:5", "--T-grid", "20", "--out",
                    again}).code,
            kExitOk);
  std::ifstream a(csv), b(again);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}

TEST_F(TempDir, ConfigFileSuppliesDefaultsAndFlagsOverride) {
  const fs::path cfg = dir / "run.ini";
  std::ofstream(cfg) << "[sweep]\npreset = \"two-level\"\ndt-grid = \"0.1,0.2\"\nT-grid = \"10\"\ndry-run = true\n";
  const Outcome r = invoke({"--config", cfg.string(), "sweep"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("points: 2"), std::string::npos) << r.out;
  const Outcome o = invoke({"--config", cfg.string(), "sweep", "--dt-grid", "0.1,0.2,0.4"});
  EXPECT_NE(o.out.find("points: 3"), std::string::npos) << o.out;
}

TEST_F(TempDir, HamiltonianFileInput) {
  const fs::path h = dir / "h.txt";
  std::ofstream(h) << "# two qubits\n-0.347 II\n0.182 XX\n0.011 ZZ\n0.39 ZI\n0.39 IZ\n";
  const Outcome r = invoke({"bounds", "--hamiltonian", h.string(), "--T", "10", "--dt", "0.1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("c1 = "), std::string::npos);
  std::ofstream(dir / "bad.txt") << "0.5 XQ\n";
  EXPECT_EQ(invoke({"bounds", "--hamiltonian", (dir / "bad.txt").string()}).code, kExitUsage);
}

TEST(Cli, BoundsAndStepCounts) {
  const Outcome b = invoke({"bounds", "--preset", "two-level", "--T", "100", "--dt", "0.01"});
  EXPECT_EQ(b.code, kExitOk);
  const auto value_of = [&](const std::string& key) {
    const auto at = b.out.find("\n" + key + " = ");
    EXPECT_NE(at, std::string::npos) << key << "\n" << b.out;
    return at == std::string::npos ? -1.0 : std::stod(b.out.substr(at + key.size() + 4));
  };
  EXPECT_NEAR(value_of("c1"), 1.0, 1e-12);
  EXPECT_NEAR(value_of("c2"), 1.0, 1e-12);
  EXPECT_NEAR(value_of("c3"), 0.5, 1e-12);
  const Outcome s = invoke({"step-counts", "--epsilon", "1e-2", "--p", "2"});
  EXPECT_EQ(s.code, kExitOk);
  EXPECT_NE(s.out.find("r_selfhealing = 10\n"), std::string::npos) << s.out;
  EXPECT_NE(s.out.find("r_generic = 100\n"), std::string::npos) << s.out;
}

TEST_F(TempDir, DiagnosticsAndVariableStep) {
  const Outcome d = invoke({"diagnostics", "--preset", "two-level", "--T", "100", "--dt", "0.5", "--at", "50", "--out",
                        (dir / "pop.csv").string()});
  EXPECT_EQ(d.code, kExitOk) << d.err;
  EXPECT_NE(d.out.find("min_gap = "), std::string::npos);
  EXPECT_NE(d.out.find("R =\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "pop.csv"));
  const Outcome v = invoke({"variable-step", "--preset", "two-level", "--T", "20", "--dt-grid", "0.1,0.5", "--plan-out",
                        (dir / "plan.csv").string()});
  EXPECT_EQ(v.code, kExitOk) << v.err;
  EXPECT_EQ(v.out.substr(0, v.out.find('\n')), "dt,standard,variable,steps,convergent");
  EXPECT_TRUE(fs::exists(dir / "plan.csv"));
}

TEST_F(TempDir, SmallPipelineWritesOutputs) {
  const Outcome r = invoke({"qaoa-pipeline", "--n", "4", "--p-min", "2", "--p-max", "3", "--fine-dt", "0.02",
                        "--curve-max-iter", "50", "--out-dir", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* f : {"summary.csv", "manifest.json", "angles_P2.csv", "curve_P3.csv", "trotterized_P3.csv"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  std::ifstream in(dir / "summary.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "P,T_total,J_qaoa,J_curve,infid_qaoa,infid_curve,infid_trotterized");
}

}  // namespace
}  // namespace trotterlab::cli
