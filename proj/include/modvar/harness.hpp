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

#ifndef MODVAR_HARNESS_HPP
#define MODVAR_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modvar/compiler.hpp"

namespace modvar {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitInvariant = 3, kExitIo = 4 };

/// Bad configuration or input (exit 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable file (exit 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnvelopeConfig {
  EnvelopeFamily family = EnvelopeFamily::gaussian;
  GaussianEnvelopeParams gaussian;
  std::size_t fiber_s = 0;  // single_fiber only
  std::size_t fiber_m = 0;
};

/// Optional parameter sweep; every value reruns the circuit and adds CSV rows.
struct SweepConfig {
  std::string parameter;  // "theta_width" or "k_width"
  std::vector<double> values;
};

struct RunConfig {
  std::size_t samples_per_period = 64;
  std::size_t periods = 4;
  EnvelopeConfig envelope;
  WeightFamily weight_family = WeightFamily::cos_theta;
  Backend backend = Backend::exact;
  std::string circuit_text;               // loaded from circuit_path
  std::filesystem::path circuit_path;
  std::vector<std::pair<double, double>> inputs;  // (chi, phi) per qubit; default |0>
  std::optional<std::filesystem::path> input_state;  // state dump used instead of encoding
  std::optional<SweepConfig> sweep;
  std::filesystem::path metrics_file = "metrics.json";
  std::filesystem::path sweep_file = "sweep.csv";
  std::filesystem::path state_dir = "states";
  std::uint64_t seed = 0;
  double tolerance = 1e-10;  // hard-invariant tolerance
};

/// Parses a JSON config. Relative paths resolve against `base_dir`.
/// Throws ConfigError for malformed JSON, unknown keys/values or violated
/// preconditions or unreadable referenced files (missing inputs are input
/// errors; IoError is reserved for failed writes).
RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

GridSpec config_grid(const RunConfig& config);
Envelope config_envelope(const RunConfig& config, const GridSpec& grid);

struct RunOutcome {
  ExecutionResult result;
  EncodedState input;
  std::string metrics_json;  // sorted keys, trailing newline
  std::string sweep_csv;     // empty without a sweep
  std::vector<std::string> violations;
};

/// Compile + execute + decode; metrics are a pure function of the config.
RunOutcome run_experiment(const RunConfig& config);

/// State dump: JSON with grid header and separate real/imaginary arrays in
/// position representation, each number printed with 17 significant digits.
std::string dump_state(const EncodedState& state);

/// Parses a dump; throws ConfigError on malformed content or when the grid
/// differs from `expected`.
EncodedState load_state(const std::string& json_text, const GridSpec& expected);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

struct VerifyCheck {
  std::string suite;
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

/// Suites: zak, povm, circuit11, circuit13, backends, all. Throws
/// ConfigError("unknown suite") otherwise.
std::vector<VerifyCheck> run_verify_suite(const std::string& suite, std::uint64_t seed);
std::string format_verify_table(const std::vector<VerifyCheck>& checks);

/// One-line-per-field description of a grid.
std::string grid_info(const GridSpec& grid);

}  // namespace modvar

#endif  // MODVAR_HARNESS_HPP
