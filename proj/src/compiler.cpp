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

#include "modvar/compiler.hpp"

#include <cmath>
#include <stdexcept>

namespace modvar {

std::string_view to_string(Backend backend) { return backend == Backend::exact ? "exact" : "ancilla"; }

Backend backend_from_string(std::string_view name) {
  if (name == "exact") return Backend::exact;
  if (name == "ancilla") return Backend::ancilla;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

namespace {

const Complex kI(0.0, 1.0);

// Single-qubit gate written as phase * exp(i alpha n.sigma).
struct RotationForm {
  Axis axis;
  double alpha;
  Complex phase;
};

RotationForm rotation_form(const Gate& g) {
  switch (g.kind) {
    case GateKind::X: return {axis_x(), kPi / 2.0, -kI};
    case GateKind::Y: return {axis_y(), kPi / 2.0, -kI};
    case GateKind::Z: return {axis_z(), kPi / 2.0, -kI};
    case GateKind::H: return {Axis(1.0, 0.0, 1.0).normalized(), kPi / 2.0, -kI};
    case GateKind::RX: return {axis_x(), -g.angle / 2.0, 1.0};
    case GateKind::RY: return {axis_y(), -g.angle / 2.0, 1.0};
    case GateKind::RZ: return {axis_z(), -g.angle / 2.0, 1.0};
    case GateKind::RN: return {g.axis, -g.angle / 2.0, 1.0};
    default: throw std::invalid_argument("rotation_form: not a single-qubit gate");
  }
}

bool is_two_qubit(GateKind k) { return k == GateKind::CNOT || k == GateKind::CZ; }

FiberOperator unit_gamma(const GridSpec& grid, const Axis& axis) {
  return FiberOperator::uniform(grid, pauli_block(axis));
}

FiberOperator exact_single(const Gate& g, const GridSpec& grid) {
  const WeightSpec one = make_weight(WeightFamily::constant, grid, 1.0);
  switch (g.kind) {
    case GateKind::X: return make_gamma(axis_x(), one).fiber_operator();
    case GateKind::Y: return make_gamma(axis_y(), one).fiber_operator();
    case GateKind::Z: return make_gamma(axis_z(), one).fiber_operator();
    case GateKind::H:
      return Complex(1.0 / std::sqrt(2.0)) *
             (make_gamma(axis_x(), one).fiber_operator() + make_gamma(axis_z(), one).fiber_operator());
    default: {
      const RotationForm r = rotation_form(g);
      return rotation_operator(r.axis, r.alpha, one);
    }
  }
}

std::string step_label(const Gate& g) {
  std::string s(gate_name(g.kind));
  for (int q : g.qubits) s += " " + std::to_string(q);
  return s;
}

// exp(-i pi/4 sigma_z), the local factor in CZ = e^{i pi/4} (L x L) e^{i pi/4 Z x Z}.
Block2 quarter_z() {
  Block2 b = Block2::Zero();
  b(0, 0) = std::polar(1.0, -kPi / 4.0);
  b(1, 1) = std::polar(1.0, kPi / 4.0);
  return b;
}

Block2 hadamard_block() { return pauli_block(Axis(1.0, 0.0, 1.0).normalized()); }

ScheduleStep ancilla_two_qubit_step(const Gate& g, std::size_t index, const GridSpec& grid) {
  // CZ = e^{i pi/4} (L x L)(1 + i Z x Z)/sqrt 2 with L = exp(-i pi/4 Z); the
  // even-parity outcome carries CZ psi / 2 and the odd one -i CZ (Z x Z) psi / 2.
  const Block2 l = quarter_z();
  const Block2 z = pauli_block(axis_z());
  const Complex e = std::polar(1.0, kPi / 4.0);
  std::array<Block2, 2> pair_first{e * kI * l * z, l * z};  // U1 on mode a, U2 on mode b
  std::array<Block2, 2> pair_second{e * l, l};              // U3 on mode a, U4 on mode b
  Axis corr_a = axis_z();
  Axis corr_b = axis_z();
  if (g.kind == GateKind::CNOT) {
    // CNOT = (1 x H_t) CZ (1 x H_t); conjugate the target-mode operators.
    const std::size_t target = static_cast<std::size_t>(g.qubits[1]);
    const Block2 h = hadamard_block();
    pair_first[target] = h * pair_first[target] * h;
    pair_second[target] = h * pair_second[target] * h;
    (target == 0 ? corr_a : corr_b) = axis_x();
  }
  ScheduleStep step{ScheduleStep::Kind::ancilla_two, index, step_label(g), g.qubits, "constant", std::nullopt,
                    std::nullopt, {}, CorrectionPolicy::parity(corr_a, corr_b)};
  step.controlled = {FiberOperator::uniform(grid, pair_first[0]), FiberOperator::uniform(grid, pair_first[1]),
                     FiberOperator::uniform(grid, pair_second[0]), FiberOperator::uniform(grid, pair_second[1])};
  return step;
}

ScheduleStep exact_two_qubit_step(const Gate& g, std::size_t index, const GridSpec& grid) {
  TwoModeFiberOperator op;
  const FiberOperator id = FiberOperator::identity(grid);
  if (g.kind == GateKind::CZ) {
    const FiberOperator z = unit_gamma(grid, axis_z());
    const Complex h = 0.5;
    op.terms = {{h * id, id}, {h * z, id}, {id, h * z}, {Complex(-0.5) * z, z}};
  } else {
    Block2 p0 = Block2::Zero();
    Block2 p1 = Block2::Zero();
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const FiberOperator base = FiberOperator::uniform(grid, p0);
    const FiberOperator shifted = FiberOperator::uniform(grid, p1);
    const FiberOperator flip = unit_gamma(grid, axis_x());
    if (g.qubits[0] == 0) {
      op.terms = {{base, id}, {shifted, flip}};
    } else {
      op.terms = {{id, base}, {flip, shifted}};
    }
  }
  return {ScheduleStep::Kind::fiber_two_mode, index, step_label(g), g.qubits, "constant", std::nullopt, op, {},
          CorrectionPolicy::none()};
}

}  // namespace

CompiledSchedule compile(const CircuitIR& ir, Backend backend, WeightFamily weight_family, const GridSpec& grid) {
  if (ir.qubit_count < 1 || ir.qubit_count > 2) throw std::invalid_argument("compile: 1 or 2 qubits supported");
  if (weight_family == WeightFamily::custom) {
    throw std::invalid_argument("compile: custom weights are not supported by the compiler");
  }
  CompiledSchedule out{backend, ir.qubit_count, grid, weight_family, {}};
  const WeightSpec zeta = make_weight(weight_family, grid, 1.0);
  for (std::size_t index = 0; index < ir.gates.size(); ++index) {
    const Gate& g = ir.gates[index];
    for (int q : g.qubits) {
      if (q < 0 || q >= ir.qubit_count) throw std::invalid_argument("compile: qubit out of range");
    }
    if (is_two_qubit(g.kind)) {
      if (ir.qubit_count != 2) throw std::invalid_argument("compile: two-qubit gate on a one-qubit circuit");
      out.steps.push_back(backend == Backend::exact ? exact_two_qubit_step(g, index, grid)
                                                    : ancilla_two_qubit_step(g, index, grid));
      continue;
    }
    if (backend == Backend::exact) {
      out.steps.push_back({ScheduleStep::Kind::fiber, index, step_label(g), g.qubits, "constant", exact_single(g, grid),
                           std::nullopt, {}, CorrectionPolicy::none()});
      continue;
    }
    const RotationForm r = rotation_form(g);
    const auto [gamma, partner] = povm_pair(make_gamma(r.axis, zeta));
    RotationPair pair = make_rotation_pair(r.axis, r.alpha, gamma.weight, partner.weight, r.axis,
                                           PairNormalization::unitary);
    out.steps.push_back({ScheduleStep::Kind::ancilla_single, index, step_label(g), g.qubits,
                         std::string(to_string(weight_family)), std::nullopt, std::nullopt,
                         {r.phase * pair.u1, r.phase * pair.u2}, CorrectionPolicy::pauli_axis(r.axis)});
  }
  return out;
}

EncodedState encode_inputs(const std::vector<std::pair<double, double>>& inputs, const Envelope& envelope) {
  if (inputs.size() == 1) return encode_logical(inputs[0].first, inputs[0].second, envelope);
  if (inputs.size() == 2) {
    return TwoModeState::product(encode_logical(inputs[0].first, inputs[0].second, envelope),
                                 encode_logical(inputs[1].first, inputs[1].second, envelope));
  }
  throw std::invalid_argument("encode_inputs: 1 or 2 qubits supported");
}

namespace {

double squared_norm(const EncodedState& s) {
  return std::visit([](const auto& x) { return x.squared_norm(); }, s);
}

LogicalReadout decode(const EncodedState& s) {
  return std::visit([](const auto& x) { return decode_logical(x); }, s);
}

EncodedState apply_single(const FiberOperator& op, int qubit, const EncodedState& s) {
  if (const auto* one = std::get_if<CvState>(&s)) return apply(op, *one);
  TwoModeFiberOperator two;
  const FiberOperator id = FiberOperator::identity(op.grid());
  two.terms.push_back(qubit == 0 ? TwoModeFiberOperator::Term{op, id} : TwoModeFiberOperator::Term{id, op});
  return apply(two, std::get<TwoModeState>(s));
}

struct Branch {
  std::vector<int> bits;
  EncodedState state;
  std::vector<std::string> corrections;
};

}  // namespace

ExecutionResult execute(const CompiledSchedule& schedule, const EncodedState& input) {
  const bool single = std::holds_alternative<CvState>(input);
  if (single != (schedule.qubit_count == 1)) {
    throw std::invalid_argument("execute: input does not match the circuit's qubit count");
  }
  if (single) {
    if (!(std::get<CvState>(input).grid() == schedule.grid)) throw std::invalid_argument("execute: grid mismatch");
  } else {
    const auto& two = std::get<TwoModeState>(input);
    if (!(two.grid_a() == schedule.grid) || !(two.grid_b() == schedule.grid)) {
      throw std::invalid_argument("execute: grid mismatch");
    }
  }

  ExecutionResult result;
  std::vector<Branch> branches{{{}, single ? EncodedState(in_position(std::get<CvState>(input))) : input, {}}};
  for (std::size_t step_index = 0; step_index < schedule.steps.size(); ++step_index) {
    const ScheduleStep& step = schedule.steps[step_index];
    std::vector<Branch> next;
    for (const Branch& b : branches) {
      switch (step.kind) {
        case ScheduleStep::Kind::fiber:
          next.push_back({b.bits, apply_single(*step.fiber, step.qubits[0], b.state), b.corrections});
          break;
        case ScheduleStep::Kind::fiber_two_mode:
          next.push_back({b.bits, apply(*step.fiber_two_mode, std::get<TwoModeState>(b.state)), b.corrections});
          break;
        case ScheduleStep::Kind::ancilla_single: {
          const Operator u1(step.controlled[0]);
          const Operator u2(step.controlled[1]);
          result.max_unitarity_defect =
              std::max({result.max_unitarity_defect, u1.unitarity_defect(schedule.grid),
                        u2.unitarity_defect(schedule.grid)});
          const FiberOperator correction = FiberOperator::uniform(schedule.grid, pauli_block(step.correction.axis));
          std::vector<std::pair<int, EncodedState>> outs;
          if (single) {
            for (auto& rec : run_single_qubit_circuit(std::get<CvState>(b.state), u1, u2).outcomes) {
              outs.emplace_back(rec.bits[0], std::move(rec.state));
            }
          } else {
            for (auto& rec : run_single_qubit_circuit(std::get<TwoModeState>(b.state), step.qubits[0], u1, u2)) {
              outs.emplace_back(rec.bits[0], std::move(rec.state));
            }
          }
          for (auto& [bit, st] : outs) {
            Branch nb{b.bits, std::move(st), b.corrections};
            nb.bits.push_back(bit);
            std::string tag = "identity";
            if (bit == 1 && step.correction.kind != CorrectionPolicy::Kind::none) {
              nb.state = apply_single(correction, step.qubits[0], nb.state);
              tag = step.correction.name();
            }
            nb.corrections.push_back(tag);
            result.log.push_back({step_index, step.label, {bit}, squared_norm(nb.state), tag});
            next.push_back(std::move(nb));
          }
          break;
        }
        case ScheduleStep::Kind::ancilla_two: {
          const Operator u1(step.controlled[0]), u2(step.controlled[1]), u3(step.controlled[2]),
              u4(step.controlled[3]);
          TwoCircuitRun run = run_two_qubit_circuit(std::get<TwoModeState>(b.state), u1, u2, u3, u4);
          result.max_unitarity_defect = std::max(result.max_unitarity_defect, run.unitarity_defect);
          for (auto& rec : run.outcomes) {
            const TwoModeOutcomeRecord corrected = apply_frame_correction(rec, step.correction);
            Branch nb{b.bits, corrected.state, b.corrections};
            nb.bits.insert(nb.bits.end(), rec.bits.begin(), rec.bits.end());
            nb.corrections.push_back(corrected.correction);
            result.log.push_back({step_index, step.label, rec.bits, corrected.state.squared_norm(),
                                  corrected.correction});
            next.push_back(std::move(nb));
          }
          break;
        }
      }
      if (next.size() > kMaxBranches) throw std::length_error("execute: branch budget exceeded");
    }
    branches = std::move(next);
  }

  for (auto& b : branches) {
    ExecutionBranch eb{b.bits, squared_norm(b.state), b.state, std::nullopt, b.corrections};
    if (eb.probability > 1e-300) eb.readout = decode(b.state);
    result.total_probability += eb.probability;
    result.branches.push_back(std::move(eb));
  }
  return result;
}

namespace {

Complex overlap(const EncodedState& a, const EncodedState& b) {
  if (const auto* x = std::get_if<CvState>(&a)) return inner_product(*x, std::get<CvState>(b));
  return inner_product(std::get<TwoModeState>(a), std::get<TwoModeState>(b));
}

GridSpec grid_of(const EncodedState& s) {
  if (const auto* x = std::get_if<CvState>(&s)) return x->grid();
  return std::get<TwoModeState>(s).grid_a();
}

}  // namespace

BackendComparison compare_backends(const CircuitIR& ir, const EncodedState& input, WeightFamily weight_family) {
  const GridSpec grid = grid_of(input);
  const ExecutionResult exact = execute(compile(ir, Backend::exact, weight_family, grid), input);
  const ExecutionResult anc = execute(compile(ir, Backend::ancilla, weight_family, grid), input);
  const ExecutionBranch& ref = exact.branches.front();
  const double ref_sq = ref.probability;
  BackendComparison report;
  report.total_probability = anc.total_probability;
  for (const auto& b : anc.branches) {
    if (!b.readout) continue;
    const double ov = std::abs(overlap(ref.state, b.state)) / std::sqrt(ref_sq * b.probability);
    report.rows.push_back({b.bits, b.probability, logical_fidelity(b.readout->density, ref.readout->density), ov});
    report.mixture_fidelity += b.probability * ov * ov;
  }
  return report;
}

Eigen::VectorXcd ideal_logical_output(const CircuitIR& ir, const std::vector<std::pair<double, double>>& inputs) {
  if (static_cast<int>(inputs.size()) != ir.qubit_count) {
    throw std::invalid_argument("ideal_logical_output: one input per qubit required");
  }
  auto qubit = [](double chi, double phi) {
    Eigen::Vector2cd v(std::cos(chi / 2.0), std::polar(std::sin(chi / 2.0), phi));
    return v;
  };
  Eigen::VectorXcd state = qubit(inputs[0].first, inputs[0].second);
  if (ir.qubit_count == 2) {
    const Eigen::Vector2cd b = qubit(inputs[1].first, inputs[1].second);
    Eigen::VectorXcd joint(4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) joint[2 * i + j] = state[i] * b[j];
    state = joint;
  }
  const int dim = 1 << ir.qubit_count;
  for (const Gate& g : ir.gates) {
    Eigen::MatrixXcd full;
    if (is_two_qubit(g.kind)) {
      full = Eigen::MatrixXcd::Identity(4, 4);
      const int c = g.qubits[0];
      const int t = g.qubits[1];
      for (int idx = 0; idx < 4; ++idx) {
        const int bit_c = (idx >> (1 - c)) & 1;
        const int bit_t = (idx >> (1 - t)) & 1;
        if (g.kind == GateKind::CZ && bit_c && bit_t) full(idx, idx) = -1.0;
        if (g.kind == GateKind::CNOT && bit_c) {
          full(idx, idx) = 0.0;
          full(idx ^ (1 << (1 - t)), idx) = 1.0;
        }
      }
    } else {
      const RotationForm r = rotation_form(g);
      const Block2 u = r.phase * (std::cos(r.alpha) * Block2::Identity() + kI * std::sin(r.alpha) * pauli_block(r.axis));
      if (dim == 2) {
        full = u;
      } else {
        const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
        const Eigen::Matrix2cd& a = g.qubits[0] == 0 ? u : id;
        const Eigen::Matrix2cd& b = g.qubits[0] == 0 ? id : u;
        full.resize(4, 4);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) full.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
      }
    }
    state = full * state;
  }
  return state;
}

}  // namespace modvar
