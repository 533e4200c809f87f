// Copyright 2026 The modvar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the command-line binary end to end and checks exit codes and outputs.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kCli = MODVAR_CLI;
const fs::path kConfigDir = MODVAR_CONFIG_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("modvar_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    fs::copy_file(kConfigDir / "bell.circ", dir_ / "bell.circ");
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = "'" + kCli.string() + "' " + args + " >'" + (dir_ / "stdout.txt").string() + "' 2>'" +
                            (dir_ / "stderr.txt").string() + "'";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }

  std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

  fs::path dir_;
};

const char* kBell = R"({"grid": {"samples_per_period": 8, "periods": 4}, "weight_family": "constant",
  "circuit": "bell.circ", "inputs": [[0, 0], [0, 0]], "seed": 7})";

}  // namespace

TEST_F(CliTest, run_writes_metrics_and_exits_zero) {
  const fs::path cfg = write("bell.json", kBell);
  ASSERT_EQ(run("run --config " + q(cfg) + " --out " + q(dir_ / "out")), 0) << read(dir_ / "stderr.txt");
  const json m = json::parse(read(dir_ / "out" / "metrics.json"));
  EXPECT_GE(m["ideal_fidelity_min"].get<double>(), 1.0 - 1e-10);
  EXPECT_EQ(m["seed"], 7);
  EXPECT_NE(read(dir_ / "stdout.txt").find("outcome"), std::string::npos);
}

TEST_F(CliTest, seed_flag_overrides_the_config) {
  const fs::path cfg = write("bell.json", kBell);
  ASSERT_EQ(run("run --config " + q(cfg) + " --out " + q(dir_) + " --seed 99"), 0);
  EXPECT_EQ(json::parse(read(dir_ / "metrics.json"))["seed"], 99);
}

TEST_F(CliTest, metrics_are_byte_identical_across_runs_and_worker_counts) {
  const fs::path cfg = write("bell.json", kBell);
  ASSERT_EQ(run("run --config " + q(cfg) + " --out " + q(dir_ / "a")), 0);
  ASSERT_EQ(run("run --config " + q(cfg) + " --out " + q(dir_ / "b") + " --workers 4"), 0);
  EXPECT_EQ(read(dir_ / "a" / "metrics.json"), read(dir_ / "b" / "metrics.json"));
}

TEST_F(CliTest, sweep_writes_a_csv) {
  fs::copy_file(kConfigDir / "rx_quarter.circ", dir_ / "rx_quarter.circ");
  const fs::path cfg = write("sweep.json", R"({"grid": {"samples_per_period": 32, "periods": 4},
    "backend": "ancilla", "weight_family": "cos_theta", "circuit": "rx_quarter.circ",
    "sweep": {"parameter": "k_width", "values": [0.25, 0.125]}})");
  ASSERT_EQ(run("run --config " + q(cfg) + " --out " + q(dir_)), 0) << read(dir_ / "stderr.txt");
  const std::string csv = read(dir_ / "sweep.csv");
  EXPECT_EQ(csv.rfind("parameter,value,bits,probability,ideal_fidelity,cv_overlap\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST_F(CliTest, dump_state_round_trips_into_a_run) {
  const fs::path cfg = write("bell.json", kBell);
  ASSERT_EQ(run("dump-state --config " + q(cfg) + " --out " + q(dir_)), 0) << read(dir_ / "stderr.txt");
  ASSERT_TRUE(fs::exists(dir_ / "states" / "input.json"));
  ASSERT_TRUE(fs::exists(dir_ / "states" / "branch_final.json"));
  const fs::path replay = write("replay.json", R"({"grid": {"samples_per_period": 8, "periods": 4},
    "weight_family": "constant", "circuit": "bell.circ", "input_state": "states/input.json"})");
  ASSERT_EQ(run("run --config " + q(replay) + " --out " + q(dir_)), 0) << read(dir_ / "stderr.txt");
  EXPECT_EQ(json::parse(read(dir_ / "metrics.json"))["input_source"], "state_dump");
}

TEST_F(CliTest, state_dump_on_a_different_grid_is_rejected) {
  const fs::path cfg = write("bell.json", kBell);
  ASSERT_EQ(run("dump-state --config " + q(cfg) + " --out " + q(dir_)), 0);
  const fs::path replay = write("replay.json", R"({"grid": {"samples_per_period": 8, "periods": 2},
    "weight_family": "constant", "circuit": "bell.circ", "input_state": "states/input.json"})");
  EXPECT_EQ(run("run --config " + q(replay) + " --out " + q(dir_)), 2);
  EXPECT_NE(read(dir_ / "stderr.txt").find("grid"), std::string::npos);
}

TEST_F(CliTest, configuration_errors_exit_two) {
  EXPECT_EQ(run("run --config " + q(write("bad.json", "{\"colour\": 1}"))), 2);
  EXPECT_EQ(run("run --config " + q(dir_ / "missing.json")), 2);
  EXPECT_EQ(run("run --config " + q(write("odd.json", R"({"grid": {"samples_per_period": 7, "periods": 4},
    "circuit": "bell.circ"})"))),
            2);
  write("bad.circ", "qubits 1\nCNOT 0 1\n");
  EXPECT_EQ(run("run --config " + q(write("c.json", R"({"circuit": "bad.circ"})"))), 2);
  EXPECT_NE(read(dir_ / "stderr.txt").find("qubit out of range"), std::string::npos);
}

TEST_F(CliTest, usage_errors_exit_two) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("run"), 2);
  EXPECT_EQ(run("run --config x.json --frobnicate"), 2);
  EXPECT_EQ(run("transmogrify"), 2);
  EXPECT_EQ(run("verify nonsense"), 2);
  EXPECT_EQ(run("grid-info --ns 5 --nn 2"), 2);
  EXPECT_EQ(run("run --config x.json --workers 0"), 2);
}

TEST_F(CliTest, invariant_violations_exit_three) {
  const fs::path cfg = write("tight.json", R"({"grid": {"samples_per_period": 16, "periods": 4},
    "backend": "ancilla", "weight_family": "cos_theta", "circuit": "bell.circ",
    "inputs": [[0.3, 0], [1, 0]], "tolerance": 1e-300})");
  EXPECT_EQ(run("run --config " + q(cfg) + " --out " + q(dir_)), 3);
  EXPECT_NE(read(dir_ / "stderr.txt").find("invariant violated"), std::string::npos);
  // Metrics are still written so the violation can be inspected.
  EXPECT_FALSE(json::parse(read(dir_ / "metrics.json"))["invariant_violations"].empty());
}

TEST_F(CliTest, unwritable_output_exits_four) {
  const fs::path cfg = write("bell.json", kBell);
  write("blocker", "not a directory");
  EXPECT_EQ(run("run --config " + q(cfg) + " --out " + q(dir_ / "blocker" / "out")), 4);
}

TEST_F(CliTest, verify_and_grid_info) {
  EXPECT_EQ(run("verify zak --seed 3"), 0);
  EXPECT_NE(read(dir_ / "stdout.txt").find("PASS"), std::string::npos);
  EXPECT_EQ(run("grid-info --ns 32 --nn 16"), 0);
  EXPECT_NE(read(dir_ / "stdout.txt").find("512"), std::string::npos);
  EXPECT_EQ(run("grid-info --config " + q(write("bell.json", kBell))), 0);
  EXPECT_EQ(run("--help"), 0);
}
