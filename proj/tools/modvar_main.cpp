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

// Command-line entry point: run, verify, dump-state, grid-info.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "modvar/harness.hpp"

namespace {

using namespace modvar;

std::filesystem::path under(const std::filesystem::path& dir, const std::filesystem::path& p) {
  return p.is_absolute() ? p : dir / p;
}

std::string bits_name(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s += static_cast<char>('0' + b);
  return s.empty() ? "final" : s;
}

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string out = ".";
  std::string suite;
  std::size_t ns = 0;
  std::size_t nn = 0;
};

RunConfig load(const Options& o) {
  RunConfig cfg = load_run_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  return cfg;
}

int cmd_run(const Options& o) {
  const RunConfig cfg = load(o);
  const RunOutcome run = run_experiment(cfg);
  const std::filesystem::path dir(o.out);
  write_text_file(under(dir, cfg.metrics_file), run.metrics_json);
  if (!run.sweep_csv.empty()) write_text_file(under(dir, cfg.sweep_file), run.sweep_csv);
  for (const auto& b : run.result.branches) {
    std::printf("outcome %-6s probability %.12f\n", bits_name(b.bits).c_str(), b.probability);
  }
  for (const auto& v : run.violations) std::fprintf(stderr, "invariant violated: %s\n", v.c_str());
  return run.violations.empty() ? kExitOk : kExitInvariant;
}

int cmd_dump_state(const Options& o) {
  const RunConfig cfg = load(o);
  const RunOutcome run = run_experiment(cfg);
  const std::filesystem::path dir = under(std::filesystem::path(o.out), cfg.state_dir);
  write_text_file(dir / "input.json", dump_state(run.input));
  for (const auto& b : run.result.branches) {
    write_text_file(dir / ("branch_" + bits_name(b.bits) + ".json"), dump_state(b.state));
  }
  std::printf("wrote %zu state dumps to %s\n", run.result.branches.size() + 1, dir.string().c_str());
  return run.violations.empty() ? kExitOk : kExitInvariant;
}

int cmd_verify(const Options& o) {
  const auto checks = run_verify_suite(o.suite, o.seed.value_or(42));
  std::fputs(format_verify_table(checks).c_str(), stdout);
  for (const auto& c : checks) {
    if (!c.passed) return kExitInvariant;
  }
  return kExitOk;
}

int cmd_grid_info(const Options& o) {
  GridSpec grid = !o.config.empty() ? config_grid(load(o)) : make_grid(o.ns, o.nn);
  std::fputs(grid_info(grid).c_str(), stdout);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modvar: modular-variable qubit encodings on a discretized phase grid"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "seed for randomized suites (recorded in metrics)");
    sub->add_option("--workers", o.workers, "worker count (results do not depend on it)")->check(CLI::PositiveNumber);
  };

  CLI::App* run = app.add_subcommand("run", "compile, execute and decode a circuit; write metrics");
  run->add_option("--config", o.config, "JSON run configuration")->required();
  run->add_option("--out", o.out, "output directory");
  add_common(run);

  CLI::App* dump = app.add_subcommand("dump-state", "run, then write input and branch state dumps");
  dump->add_option("--config", o.config, "JSON run configuration")->required();
  dump->add_option("--out", o.out, "output directory");
  add_common(dump);

  CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", o.suite, "zak, povm, circuit11, circuit13, backends or all")->required();
  add_common(verify);

  CLI::App* info = app.add_subcommand("grid-info", "print grid parameters");
  info->add_option("--config", o.config, "JSON run configuration");
  info->add_option("--ns", o.ns, "samples per period");
  info->add_option("--nn", o.nn, "number of periods");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(o);
    if (dump->parsed()) return cmd_dump_state(o);
    if (verify->parsed()) return cmd_verify(o);
    return cmd_grid_info(o);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInvariant;
  }
}
