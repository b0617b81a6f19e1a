// Copyright 2026 The sqthermo Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sqthermo/commands.hpp"
#include "sqthermo/io.hpp"
#include "sqthermo/otto.hpp"

namespace sqt {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sqthermo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_config(const std::string& text) {
    const fs::path p = dir_ / "in.json";
    std::ofstream(p) << text;
    return p.string();
  }

  int run(const std::string& cmd, const std::string& config, const std::string& sub,
          std::string* err_text = nullptr) {
    CommonOptions o;
    if (!config.empty()) o.config_path = write_config(config);
    o.out_dir = (dir_ / sub).string();
    std::ostringstream err;
    const int code = run_command(cmd, o, err);
    if (err_text) *err_text = err.str();
    return code;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, CycleWritesReportAndEffectiveConfig) {
  ASSERT_EQ(run("cycle", R"({"omega2": 3.0, "r": 0.5})", "out"), kExitOk);
  const json j = json::parse(slurp(dir_ / "out" / "cycle.json"));
  CycleParams p;
  p.sq = SqueezeParams(0.5, 0.0);
  EXPECT_EQ(j["report"]["W_out"].get<double>(), analyze_cycle(p).W_out);
  const json cfg = json::parse(slurp(dir_ / "out" / "config.json"));
  EXPECT_EQ(cfg["seed"].get<long>(), 1);
  EXPECT_EQ(cfg["format"].get<std::string>(), "csv");
}

TEST_F(CliTest, EffectiveConfigReproducesRun) {
  ASSERT_EQ(run("single-reservoir", R"({"r": 0.7, "beta": 0.5})", "a"), kExitOk);
  const std::string cfg = slurp(dir_ / "a" / "config.json");
  ASSERT_EQ(run("single-reservoir", cfg, "b"), kExitOk);
  EXPECT_EQ(slurp(dir_ / "a" / "protocol.json"), slurp(dir_ / "b" / "protocol.json"));
  EXPECT_EQ(cfg, slurp(dir_ / "b" / "config.json"));
}

TEST_F(CliTest, UnknownKeyIsConfigErrorWithoutOutputs) {
  std::string err;
  EXPECT_EQ(run("cycle", R"({"omega2": 3.0, "omgea1": 1.0})", "out", &err), kExitConfig);
  EXPECT_NE(err.find("omgea1"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, InvalidValuesAreConfigErrors) {
  EXPECT_EQ(run("cycle", R"({"beta1": -1.0})", "a"), kExitConfig);
  EXPECT_EQ(run("cycle", R"({"omega2": "three"})", "b"), kExitConfig);
  EXPECT_EQ(run("cycle", "{not json", "c"), kExitConfig);
  EXPECT_EQ(run("collide", R"({"g_tau": [0.5]})", "d"), kExitConfig);
  EXPECT_EQ(run("frobnicate", "", "e"), kExitConfig);
  EXPECT_FALSE(fs::exists(dir_ / "a"));
}

TEST_F(CliTest, TruncationIsNumericalFailure) {
  std::string err;
  EXPECT_EQ(run("relax", R"({"dim": 12, "r": 1.2, "t_end": 0.1, "n_samples": 3})", "out", &err),
            kExitNumerical);
  EXPECT_NE(err.find("suggested dim"), std::string::npos);
}

TEST_F(CliTest, CollideIsByteIdenticalForSameSeed) {
  const std::string cfg =
      R"({"g_tau": [0.1], "n_traj": 8, "t_end": 20, "n_samples": 5, "trace_collisions": 50})";
  ASSERT_EQ(run("collide", cfg, "a"), kExitOk);
  ASSERT_EQ(run("collide", cfg, "b"), kExitOk);
  for (const auto& e : fs::directory_iterator(dir_ / "a")) {
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "b" / e.path().filename())) << e.path();
  }
}

TEST_F(CliTest, PhaseDiagramJsonFormat) {
  ASSERT_EQ(run("phase-diagram", R"({"format": "json", "n_omega2": 5, "n_r": 4})", "out"), kExitOk);
  const json j = json::parse(slurp(dir_ / "out" / "phase_diagram.json"));
  EXPECT_FALSE(j.empty());
}

}  // namespace
}  // namespace sqt
