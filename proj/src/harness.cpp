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

#include "modvar/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace modvar {

using nlohmann::json;

namespace {

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

template <class T>
T get_as(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

double get_finite(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + "." + key + ": not finite");
  return x;
}

std::size_t get_count(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(where + "." + key + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

EnvelopeFamily envelope_family_from_string(const std::string& name) {
  if (name == "uniform") return EnvelopeFamily::uniform;
  if (name == "gaussian") return EnvelopeFamily::gaussian;
  if (name == "single_fiber") return EnvelopeFamily::single_fiber;
  throw ConfigError("envelope.family: unknown family '" + name + "'");
}

std::string envelope_family_name(EnvelopeFamily family) {
  switch (family) {
    case EnvelopeFamily::uniform: return "uniform";
    case EnvelopeFamily::gaussian: return "gaussian";
    case EnvelopeFamily::single_fiber: return "single_fiber";
    case EnvelopeFamily::custom: return "custom";
  }
  return "custom";
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown_keys(root,
                      {"grid", "envelope", "weight_family", "backend", "circuit", "inputs", "input_state", "sweep",
                       "output", "seed", "tolerance"},
                      "config");
  RunConfig cfg;
  if (root.contains("grid")) {
    const json& grid = root["grid"];
    reject_unknown_keys(grid, {"samples_per_period", "periods"}, "grid");
    if (grid.contains("samples_per_period")) cfg.samples_per_period = get_count(grid, "samples_per_period", "grid");
    if (grid.contains("periods")) cfg.periods = get_count(grid, "periods", "grid");
  }
  try {
    (void)make_grid(cfg.samples_per_period, cfg.periods);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }

  if (root.contains("envelope")) {
    const json& env = root["envelope"];
    reject_unknown_keys(env, {"family", "theta_center", "theta_width", "k_center", "k_width", "fiber"}, "envelope");
    if (env.contains("family")) cfg.envelope.family = envelope_family_from_string(get_as<std::string>(env, "family", "envelope"));
    auto& g = cfg.envelope.gaussian;
    if (env.contains("theta_center")) g.theta_center = get_finite(env, "theta_center", "envelope");
    if (env.contains("theta_width")) g.theta_width = get_finite(env, "theta_width", "envelope");
    if (env.contains("k_center")) g.k_center = get_finite(env, "k_center", "envelope");
    if (env.contains("k_width")) g.k_width = get_finite(env, "k_width", "envelope");
    if (env.contains("fiber")) {
      const json& f = env["fiber"];
      if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() || !f[1].is_number_integer() ||
          f[0].get<long long>() < 0 || f[1].get<long long>() < 0) {
        throw ConfigError("envelope.fiber: expected [s, m]");
      }
      cfg.envelope.fiber_s = f[0].get<std::size_t>();
      cfg.envelope.fiber_m = f[1].get<std::size_t>();
    }
  }
  if (root.contains("weight_family")) {
    const auto name = get_as<std::string>(root, "weight_family", "config");
    try {
      cfg.weight_family = weight_family_from_string(name);
    } catch (const std::exception&) {
      throw ConfigError("weight_family: unknown family '" + name + "'");
    }
    if (cfg.weight_family == WeightFamily::custom) throw ConfigError("weight_family: custom weights need code");
  }
  if (root.contains("backend")) {
    const auto name = get_as<std::string>(root, "backend", "config");
    try {
      cfg.backend = backend_from_string(name);
    } catch (const std::exception&) {
      throw ConfigError("backend: unknown backend '" + name + "'");
    }
  }
  if (!root.contains("circuit")) throw ConfigError("config: missing 'circuit'");
  cfg.circuit_path = resolve(base_dir, get_as<std::string>(root, "circuit", "config"));
  cfg.circuit_text = read_text_file(cfg.circuit_path);

  if (root.contains("inputs")) {
    const json& in = root["inputs"];
    if (!in.is_array()) throw ConfigError("inputs: expected an array of [chi, phi]");
    for (const json& q : in) {
      if (!q.is_array() || q.size() != 2 || !q[0].is_number() || !q[1].is_number()) {
        throw ConfigError("inputs: expected an array of [chi, phi]");
      }
      const double chi = q[0].get<double>();
      const double phi = q[1].get<double>();
      if (!std::isfinite(chi) || !std::isfinite(phi)) throw ConfigError("inputs: not finite");
      cfg.inputs.emplace_back(chi, phi);
    }
  }
  if (root.contains("input_state")) {
    cfg.input_state = resolve(base_dir, get_as<std::string>(root, "input_state", "config"));
  }
  if (root.contains("sweep")) {
    const json& sw = root["sweep"];
    reject_unknown_keys(sw, {"parameter", "values"}, "sweep");
    SweepConfig s;
    s.parameter = sw.contains("parameter") ? get_as<std::string>(sw, "parameter", "sweep") : "";
    if (s.parameter != "theta_width" && s.parameter != "k_width") {
      throw ConfigError("sweep.parameter: expected 'theta_width' or 'k_width'");
    }
    if (!sw.contains("values") || !sw["values"].is_array() || sw["values"].empty()) {
      throw ConfigError("sweep.values: expected a non-empty array");
    }
    for (const json& v : sw["values"]) {
      if (!v.is_number() || !(v.get<double>() > 0.0) || !std::isfinite(v.get<double>())) {
        throw ConfigError("sweep.values: expected positive numbers");
      }
      s.values.push_back(v.get<double>());
    }
    cfg.sweep = s;
  }
  if (root.contains("output")) {
    const json& out = root["output"];
    reject_unknown_keys(out, {"metrics", "sweep", "states"}, "output");
    if (out.contains("metrics")) cfg.metrics_file = get_as<std::string>(out, "metrics", "output");
    if (out.contains("sweep")) cfg.sweep_file = get_as<std::string>(out, "sweep", "output");
    if (out.contains("states")) cfg.state_dir = get_as<std::string>(out, "states", "output");
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("tolerance")) {
    cfg.tolerance = get_finite(root, "tolerance", "config");
    if (!(cfg.tolerance > 0.0)) throw ConfigError("tolerance: must be positive");
  }
  if (!(cfg.envelope.gaussian.theta_width > 0.0) || !(cfg.envelope.gaussian.k_width > 0.0)) {
    throw ConfigError("envelope: widths must be positive");
  }
  int qubits = 0;
  try {
    qubits = parse_circuit(cfg.circuit_text).qubit_count;
  } catch (const CircuitParseError& e) {
    throw ConfigError(cfg.circuit_path.string() + ": " + e.what());
  }
  if (!cfg.inputs.empty() && cfg.inputs.size() != static_cast<std::size_t>(qubits)) {
    throw ConfigError("inputs: expected " + std::to_string(qubits) + " entries for a " + std::to_string(qubits) +
                      "-qubit circuit");
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_text_file(path), path.parent_path());
}

GridSpec config_grid(const RunConfig& config) {
  try {
    return make_grid(config.samples_per_period, config.periods);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

Envelope config_envelope(const RunConfig& config, const GridSpec& grid) {
  try {
    switch (config.envelope.family) {
      case EnvelopeFamily::uniform: return uniform_envelope(grid);
      case EnvelopeFamily::gaussian: return gaussian_envelope(grid, config.envelope.gaussian);
      case EnvelopeFamily::single_fiber:
        return single_fiber_envelope(grid, config.envelope.fiber_s, config.envelope.fiber_m);
      case EnvelopeFamily::custom: break;
    }
  } catch (const std::exception& e) {
    throw ConfigError(std::string("envelope: ") + e.what());
  }
  throw ConfigError("envelope: custom envelopes need code");
}

// ---------------------------------------------------------------------------
// State dumps

std::string dump_state(const EncodedState& state) {
  const bool single = std::holds_alternative<CvState>(state);
  GridSpec grid = single ? std::get<CvState>(state).grid() : std::get<TwoModeState>(state).grid_a();
  CVector amps = single ? in_position(std::get<CvState>(state)).amplitudes() : std::get<TwoModeState>(state).flatten();
  std::string out = "{\n";
  out += "  \"format\": \"modvar-state\",\n";
  out += "  \"grid\": {\"periods\": " + std::to_string(grid.period_count()) +
         ", \"samples_per_period\": " + std::to_string(grid.samples_per_period()) + "},\n";
  out += "  \"modes\": " + std::string(single ? "1" : "2") + ",\n";
  out += "  \"representation\": \"position\",\n";
  auto array = [&](bool imag) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      if (i) s += ", ";
      s += fmt17(imag ? amps[i].imag() : amps[i].real());
    }
    return s + "]";
  };
  out += "  \"re\": " + array(false) + ",\n";
  out += "  \"im\": " + array(true) + "\n}\n";
  return out;
}

EncodedState load_state(const std::string& json_text, const GridSpec& expected) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("state dump is not valid JSON: ") + e.what());
  }
  reject_unknown_keys(root, {"format", "grid", "modes", "representation", "re", "im"}, "state");
  if (!root.contains("format") || root["format"] != "modvar-state") throw ConfigError("state: not a state dump");
  if (!root.contains("grid")) throw ConfigError("state: missing grid header");
  const json& grid = root["grid"];
  reject_unknown_keys(grid, {"samples_per_period", "periods"}, "state.grid");
  const std::size_t ns = get_count(grid, "samples_per_period", "state.grid");
  const std::size_t nn = get_count(grid, "periods", "state.grid");
  if (ns != expected.samples_per_period() || nn != expected.period_count()) {
    throw ConfigError("state: grid (" + std::to_string(ns) + ", " + std::to_string(nn) +
                      ") does not match the configured grid (" + std::to_string(expected.samples_per_period()) +
                      ", " + std::to_string(expected.period_count()) + ")");
  }
  if (root.value("representation", std::string("position")) != "position") {
    throw ConfigError("state: only position representation is supported");
  }
  const int modes = root.contains("modes") ? get_as<int>(root, "modes", "state") : 1;
  if (modes != 1 && modes != 2) throw ConfigError("state: modes must be 1 or 2");
  const std::size_t d = expected.dimension();
  const std::size_t total = modes == 1 ? d : d * d;
  if (!root.contains("re") || !root.contains("im") || !root["re"].is_array() || !root["im"].is_array() ||
      root["re"].size() != total || root["im"].size() != total) {
    throw ConfigError("state: re/im arrays must have " + std::to_string(total) + " entries");
  }
  CVector amps(static_cast<Eigen::Index>(total));
  for (std::size_t i = 0; i < total; ++i) {
    const json& re = root["re"][i];
    const json& im = root["im"][i];
    if (!re.is_number() || !im.is_number()) throw ConfigError("state: non-numeric amplitude");
    amps[static_cast<Eigen::Index>(i)] = Complex(re.get<double>(), im.get<double>());
  }
  if (!amps.allFinite()) throw ConfigError("state: non-finite amplitude");
  if (modes == 1) return CvState(expected, Representation::position, amps);
  return TwoModeState::unflatten(expected, expected, amps);
}

// ---------------------------------------------------------------------------
// Runs

namespace {

Eigen::Vector3d bloch_of(const CMatrix& rho2) {
  return {2.0 * rho2(1, 0).real(), 2.0 * rho2(1, 0).imag(), (rho2(0, 0) - rho2(1, 1)).real()};
}

json vec_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

json bits_json(const std::vector<int>& bits) { return json(bits); }

std::string bits_string(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s += static_cast<char>('0' + b);
  return s.empty() ? "-" : s;
}

struct Pass {
  ExecutionResult result;
  std::optional<BackendComparison> comparison;
};

Pass run_once(const RunConfig& cfg, const CircuitIR& ir, const EncodedState& input) {
  Pass p;
  const GridSpec grid = config_grid(cfg);
  p.result = execute(compile(ir, cfg.backend, cfg.weight_family, grid), input);
  if (cfg.backend == Backend::ancilla) p.comparison = compare_backends(ir, input, cfg.weight_family);
  return p;
}

}  // namespace

RunOutcome run_experiment(const RunConfig& cfg) {
  const GridSpec grid = config_grid(cfg);
  CircuitIR ir;
  try {
    ir = parse_circuit(cfg.circuit_text);
  } catch (const CircuitParseError& e) {
    throw ConfigError(cfg.circuit_path.string() + ": " + e.what());
  }
  if (grid.dimension() > (ir.qubit_count == 2 ? 1024u : kDefaultMaxDimension)) {
    throw ConfigError("grid too large for a " + std::to_string(ir.qubit_count) + "-qubit run");
  }
  std::vector<std::pair<double, double>> inputs = cfg.inputs;
  if (inputs.empty()) inputs.assign(static_cast<std::size_t>(ir.qubit_count), {0.0, 0.0});
  if (static_cast<int>(inputs.size()) != ir.qubit_count) {
    throw ConfigError("inputs: expected " + std::to_string(ir.qubit_count) + " entries");
  }

  auto make_input = [&](const Envelope& env) -> EncodedState {
    if (cfg.input_state) {
      EncodedState s = load_state(read_text_file(*cfg.input_state), grid);
      const bool single = std::holds_alternative<CvState>(s);
      if (single != (ir.qubit_count == 1)) throw ConfigError("input_state: mode count does not match the circuit");
      const double n = std::visit([](const auto& x) { return x.norm(); }, s);
      if (std::abs(n - 1.0) > 1e-8) throw ConfigError("input_state: state is not normalized");
      return s;
    }
    return encode_inputs(inputs, env);
  };

  const Envelope env = config_envelope(cfg, grid);
  RunOutcome out{ExecutionResult{}, make_input(env), {}, {}, {}};
  Pass pass = run_once(cfg, ir, out.input);
  out.result = pass.result;
  const ExecutionResult& res = out.result;

  const bool ideal_known = !cfg.input_state.has_value();
  Eigen::VectorXcd ideal;
  CMatrix ideal_rho;
  if (ideal_known) {
    ideal = ideal_logical_output(ir, inputs);
    ideal_rho = ideal * ideal.adjoint();
  }

  json metrics;
  metrics["backend"] = std::string(to_string(cfg.backend));
  metrics["circuit"] = to_text(ir);
  metrics["grid"] = {{"samples_per_period", grid.samples_per_period()},
                     {"periods", grid.period_count()},
                     {"dimension", grid.dimension()}};
  json env_json = {{"family", envelope_family_name(cfg.envelope.family)}};
  if (cfg.envelope.family == EnvelopeFamily::gaussian) {
    env_json["theta_center"] = cfg.envelope.gaussian.theta_center;
    env_json["theta_width"] = cfg.envelope.gaussian.theta_width;
    env_json["k_center"] = cfg.envelope.gaussian.k_center;
    env_json["k_width"] = cfg.envelope.gaussian.k_width;
  } else if (cfg.envelope.family == EnvelopeFamily::single_fiber) {
    env_json["fiber"] = {cfg.envelope.fiber_s, cfg.envelope.fiber_m};
  }
  metrics["envelope"] = env_json;
  metrics["weight_family"] = std::string(to_string(cfg.weight_family));
  metrics["seed"] = cfg.seed;
  metrics["input_source"] = cfg.input_state ? "state_dump" : "encoded";
  json in_json = json::array();
  for (const auto& [chi, phi] : inputs) in_json.push_back({chi, phi});
  metrics["inputs"] = in_json;

  json branches = json::array();
  double weighted_fidelity = 0.0;
  double min_fidelity = 1.0;
  for (const ExecutionBranch& b : res.branches) {
    json bj;
    bj["bits"] = bits_json(b.bits);
    bj["probability"] = b.probability;
    bj["corrections"] = b.corrections;
    if (b.readout) {
      const CMatrix& rho = b.readout->density;
      bj["purity"] = b.readout->purity;
      if (ir.qubit_count == 1) {
        bj["bloch"] = vec_json(bloch_of(rho));
      } else {
        bj["bloch"] = {vec_json(bloch_of(partial_trace_second(rho))), vec_json(bloch_of(partial_trace_first(rho)))};
        bj["entanglement_entropy_bits"] = entropy_bits(partial_trace_second(rho));
      }
      if (ideal_known) {
        const double f = logical_fidelity(rho, ideal_rho);
        bj["ideal_fidelity"] = f;
        weighted_fidelity += b.probability * f;
        min_fidelity = std::min(min_fidelity, f);
      }
    }
    branches.push_back(bj);
  }
  metrics["branches"] = branches;
  metrics["total_probability"] = res.total_probability;
  metrics["max_unitarity_defect"] = res.max_unitarity_defect;
  if (ideal_known) {
    metrics["ideal_fidelity_weighted"] = weighted_fidelity;
    metrics["ideal_fidelity_min"] = min_fidelity;
  }
  json log = json::array();
  for (const OutcomeLogEntry& e : res.log) {
    log.push_back({{"step", e.step}, {"gate", e.label}, {"bits", bits_json(e.bits)},
                   {"probability", e.probability}, {"correction", e.correction}});
  }
  metrics["outcome_log"] = log;
  if (pass.comparison) {
    json rows = json::array();
    for (const auto& r : pass.comparison->rows) {
      rows.push_back({{"bits", bits_json(r.bits)}, {"probability", r.probability},
                      {"logical_fidelity", r.logical_fidelity}, {"cv_overlap", r.cv_overlap}});
    }
    metrics["backend_comparison"] = {{"rows", rows},
                                     {"total_probability", pass.comparison->total_probability},
                                     {"mixture_fidelity", pass.comparison->mixture_fidelity}};
  }

  // Hard invariants.
  const double tol = cfg.tolerance;
  if (std::abs(res.total_probability - 1.0) > tol) {
    out.violations.push_back("total probability " + fmt17(res.total_probability) + " differs from 1");
  }
  if (res.max_unitarity_defect > tol) {
    out.violations.push_back("controlled operator unitarity defect " + fmt17(res.max_unitarity_defect));
  }
  if (cfg.backend == Backend::exact && ideal_known && min_fidelity < 1.0 - tol) {
    out.violations.push_back("exact backend decode fidelity " + fmt17(min_fidelity) + " below 1");
  }
  metrics["invariant_violations"] = out.violations;
  out.metrics_json = metrics.dump(2) + "\n";

  if (cfg.sweep) {
    std::string csv = "parameter,value,bits,probability,ideal_fidelity,cv_overlap\n";
    for (double v : cfg.sweep->values) {
      RunConfig c = cfg;
      c.sweep.reset();
      c.envelope.family = EnvelopeFamily::gaussian;
      (cfg.sweep->parameter == "theta_width" ? c.envelope.gaussian.theta_width : c.envelope.gaussian.k_width) = v;
      const EncodedState in = make_input(config_envelope(c, grid));
      Pass p = run_once(c, ir, in);
      for (std::size_t i = 0; i < p.result.branches.size(); ++i) {
        const ExecutionBranch& b = p.result.branches[i];
        std::string fid = "nan";
        if (b.readout && ideal_known) fid = fmt17(logical_fidelity(b.readout->density, ideal_rho));
        std::string ov = "1";
        if (p.comparison) {
          ov = "nan";
          for (const auto& r : p.comparison->rows) {
            if (r.bits == b.bits) ov = fmt17(r.cv_overlap);
          }
        }
        csv += cfg.sweep->parameter + "," + fmt17(v) + "," + bits_string(b.bits) + "," + fmt17(b.probability) + "," +
               fid + "," + ov + "\n";
      }
    }
    out.sweep_csv = csv;
  }
  return out;
}

std::string grid_info(const GridSpec& grid) {
  std::string s;
  s += "samples_per_period " + std::to_string(grid.samples_per_period()) + "\n";
  s += "periods            " + std::to_string(grid.period_count()) + "\n";
  s += "dimension          " + std::to_string(grid.dimension()) + "\n";
  s += "fibers             " + std::to_string(grid.fiber_count()) + "\n";
  s += "theta_step         " + fmt17(grid.theta_step()) + "\n";
  s += "k_step             " + fmt17(grid.k_step()) + "\n";
  return s;
}

}  // namespace modvar
