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

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <random>

#include "modvar/dense.hpp"
#include "modvar/harness.hpp"
#include "modvar/zak.hpp"

namespace modvar {

namespace {

using Rng = std::mt19937_64;

CvState random_state(const GridSpec& grid, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CVector v(static_cast<Eigen::Index>(grid.dimension()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(n(rng), n(rng));
  v /= v.norm();
  return CvState(grid, Representation::position, v);
}

TwoModeState random_two_mode_state(const GridSpec& grid, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(grid.dimension());
  CMatrix m(d, d);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(n(rng), n(rng));
  m /= m.norm();
  return TwoModeState(grid, grid, m);
}

GaussianGate random_gaussian_gate(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> count(1, 4);
  std::vector<GaussianFactor> factors;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const double p = u(rng);
    switch (kind(rng)) {
      case 0: factors.push_back(GaussianFactor::shift(kPi * p)); break;
      case 1: factors.push_back(GaussianFactor::boost(4.0 * p)); break;
      case 2: factors.push_back(GaussianFactor::pos_shear(0.1 * p)); break;
      default: factors.push_back(GaussianFactor::mom_shear(kPi * p)); break;
    }
  }
  return GaussianGate(factors, std::polar(1.0, kPi * u(rng)));
}

Gate random_gate(int qubits, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, qubits == 2 ? 9 : 7);
  std::uniform_int_distribution<int> which(0, qubits - 1);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::normal_distribution<double> n(0.0, 1.0);
  Gate g{static_cast<GateKind>(pick(rng)), {}, 0.0, Eigen::Vector3d::UnitX(), 0};
  if (g.kind == GateKind::CNOT || g.kind == GateKind::CZ) {
    const int c = which(rng);
    g.qubits = {c, 1 - c};
    return g;
  }
  g.qubits = {which(rng)};
  if (g.kind >= GateKind::RX) g.angle = angle(rng);
  if (g.kind == GateKind::RN) g.axis = Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized();
  return g;
}

struct Collector {
  std::string suite;
  std::vector<VerifyCheck>* out;
  void check(const std::string& name, double value, double tolerance, bool below = true) {
    const bool ok = std::isfinite(value) && (below ? value <= tolerance : value >= tolerance);
    out->push_back({suite, name, value, tolerance, ok});
  }
};

void suite_zak(Collector c, std::uint64_t seed) {
  Rng rng(seed);
  const GridSpec grid(32, 16);
  double parseval = 0.0;
  double round_trip = 0.0;
  for (int i = 0; i < 100; ++i) {
    const CvState psi = random_state(grid, rng);
    const ModularField g = zak_forward(psi);
    parseval = std::max(parseval, std::abs(g.values().squaredNorm() - psi.squared_norm()));
    round_trip = std::max(round_trip, (zak_inverse(g).amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff());
  }
  c.check("parseval (32,16) x100", parseval, 1e-12);
  c.check("round trip (32,16) x100", round_trip, 1e-12);
  c.check("dense zak unitarity (16,8)", unitarity_defect(zak_matrix(GridSpec(16, 8))), 1e-12);
}

void suite_povm(Collector c) {
  const GridSpec grid(16, 8);
  const CMatrix id = CMatrix::Identity(16 * 8, 16 * 8);
  for (WeightFamily family : {WeightFamily::cos_theta, WeightFamily::cos_pi_k, WeightFamily::paper_mixed}) {
    for (const Axis& axis : {axis_x(), axis_z()}) {
      const auto [g, gp] = povm_pair(make_gamma(axis, make_weight(family, grid)));
      const CMatrix a = materialize(grid, [&](const CvState& s) { return apply_gamma(s, g); }).matrix;
      const CMatrix b = materialize(grid, [&](const CvState& s) { return apply_gamma(s, gp); }).matrix;
      const std::string name = std::string("completeness ") + std::string(to_string(family)) +
                               (axis.isApprox(axis_x()) ? " x" : " z");
      c.check(name, compare(a * a + b * b, id), 1e-12);
    }
  }
}

void suite_circuit11(Collector c, std::uint64_t seed) {
  Rng rng(seed);
  const GridSpec grid(32, 4);
  double residual = 0.0;
  double prob = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Operator u1(random_gaussian_gate(rng));
    const Operator u2(random_gaussian_gate(rng));
    const SingleCircuitRun run = run_single_qubit_circuit(random_state(grid, rng), u1, u2);
    residual = std::max(residual, run.formula_residual);
    prob = std::max(prob, std::abs(run.outcomes[0].probability + run.outcomes[1].probability - 1.0));
  }
  c.check("branch formula x20", residual, 1e-12);
  c.check("probability sum x20", prob, 1e-12);
}

void suite_circuit13(Collector c, std::uint64_t seed) {
  Rng rng(seed);
  const GridSpec grid(8, 4);
  double residual = 0.0;
  double prob = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Operator u1(random_gaussian_gate(rng)), u2(random_gaussian_gate(rng)), u3(random_gaussian_gate(rng)),
        u4(random_gaussian_gate(rng));
    const TwoCircuitRun run = run_two_qubit_circuit(random_two_mode_state(grid, rng), u1, u2, u3, u4);
    residual = std::max(residual, run.formula_residual);
    double total = 0.0;
    for (const auto& o : run.outcomes) total += o.probability;
    prob = std::max(prob, std::abs(total - 1.0));
  }
  c.check("branch formula x10", residual, 1e-10);
  c.check("probability sum x10", prob, 1e-12);
}

void suite_backends(Collector c, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  double ideal_gap = 0.0;
  double branch_gap = 0.0;
  double prob = 0.0;
  for (int qubits : {1, 2}) {
    const GridSpec grid = qubits == 1 ? GridSpec(32, 4) : GridSpec(8, 4);
    const Envelope env = gaussian_envelope(grid);
    for (int trial = 0; trial < 5; ++trial) {
      CircuitIR ir{qubits, {}};
      for (int g = 0; g < 4; ++g) ir.gates.push_back(random_gate(qubits, rng));
      std::vector<std::pair<double, double>> inputs;
      for (int q = 0; q < qubits; ++q) inputs.emplace_back(angle(rng), 2.0 * angle(rng));
      const EncodedState input = encode_inputs(inputs, env);
      const ExecutionResult exact = execute(compile(ir, Backend::exact, WeightFamily::constant, grid), input);
      const Eigen::VectorXcd ideal = ideal_logical_output(ir, inputs);
      ideal_gap = std::max(ideal_gap,
                           1.0 - logical_fidelity(exact.branches.front().readout->density, ideal * ideal.adjoint()));
      const BackendComparison cmp = compare_backends(ir, input, WeightFamily::constant);
      prob = std::max(prob, std::abs(cmp.total_probability - 1.0));
      for (const auto& row : cmp.rows) branch_gap = std::max(branch_gap, std::abs(1.0 - row.cv_overlap));
    }
  }
  c.check("exact decode vs ideal (1 - F)", ideal_gap, 1e-10);
  c.check("unit-weight ancilla vs exact (1 - overlap)", branch_gap, 1e-12);
  c.check("ancilla probability sum", prob, 1e-12);
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite(const std::string& suite, std::uint64_t seed) {
  static const std::vector<std::string> kSuites{"zak", "povm", "circuit11", "circuit13", "backends"};
  if (suite != "all" && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end()) {
    throw ConfigError("unknown suite '" + suite + "' (expected zak, povm, circuit11, circuit13, backends or all)");
  }
  std::vector<VerifyCheck> out;
  for (const std::string& name : kSuites) {
    if (suite != "all" && suite != name) continue;
    Collector c{name, &out};
    if (name == "zak") suite_zak(c, seed);
    if (name == "povm") suite_povm(c);
    if (name == "circuit11") suite_circuit11(c, seed);
    if (name == "circuit13") suite_circuit13(c, seed);
    if (name == "backends") suite_backends(c, seed);
  }
  return out;
}

std::string format_verify_table(const std::vector<VerifyCheck>& checks) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %-44s %-12s %-10s %s\n", "suite", "check", "value", "tolerance", "result");
  out += buf;
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%-10s %-44s %-12.3e %-10.0e %s\n", c.suite.c_str(), c.name.c_str(), c.value,
                  c.tolerance, c.passed ? "PASS" : "FAIL");
    out += buf;
  }
  return out;
}

}  // namespace modvar
