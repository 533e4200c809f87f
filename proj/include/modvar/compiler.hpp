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

#ifndef MODVAR_COMPILER_HPP
#define MODVAR_COMPILER_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modvar/ancilla.hpp"
#include "modvar/circuit.hpp"
#include "modvar/codec.hpp"

namespace modvar {

enum class Backend { exact, ancilla };

std::string_view to_string(Backend backend);
Backend backend_from_string(std::string_view name);

/// One primitive step of a compiled schedule.
///
/// exact backend: `fiber` (one qubit) or `fiber_two_mode` (acting on both
/// modes) is applied directly.
/// ancilla backend: `controlled` holds (U1, U2) for the single-ancilla
/// circuit or (U1, U2, U3, U4) for the two-ancilla circuit; `correction`
/// relabels the odd outcomes.
struct ScheduleStep {
  enum class Kind { fiber, fiber_two_mode, ancilla_single, ancilla_two };
  Kind kind;
  std::size_t gate_index;
  std::string label;
  std::vector<int> qubits;
  std::string weight_family;
  std::optional<FiberOperator> fiber;
  std::optional<TwoModeFiberOperator> fiber_two_mode;
  std::vector<FiberOperator> controlled;
  CorrectionPolicy correction;
};

struct CompiledSchedule {
  Backend backend;
  int qubit_count;
  GridSpec grid;
  WeightFamily weight_family;
  std::vector<ScheduleStep> steps;
};

/// Exact backend: X, Y, Z -> unit-weight Gamma; H -> (Gamma_x + Gamma_z)/sqrt 2;
/// rotations -> unit-weight rotation with angle -beta/2; CNOT -> sector
/// projectors on the control; CZ -> (1 + Z1 + 1Z - ZZ)/2.
/// Ancilla backend: single-qubit gates become rotation pairs with weights
/// (zeta, sqrt(1 - zeta^2)) from `weight_family`; two-qubit gates become
/// unit-weight four-operator schedules for the two-ancilla circuit.
CompiledSchedule compile(const CircuitIR& ir, Backend backend, WeightFamily weight_family, const GridSpec& grid);

using EncodedState = std::variant<CvState, TwoModeState>;

struct ExecutionBranch {
  std::vector<int> bits;  // concatenated ancilla outcomes, in step order
  double probability = 0.0;
  EncodedState state;     // unnormalized, frame-corrected
  std::optional<LogicalReadout> readout;  // absent for zero-probability branches
  std::vector<std::string> corrections;
};

struct OutcomeLogEntry {
  std::size_t step;
  std::string label;
  std::vector<int> bits;
  double probability;  // of this outcome given the parent branch, times parent probability
  std::string correction;
};

struct ExecutionResult {
  std::vector<ExecutionBranch> branches;
  std::vector<OutcomeLogEntry> log;
  double total_probability = 0.0;
  double max_unitarity_defect = 0.0;
};

inline constexpr std::size_t kMaxBranches = 4096;

/// Deterministic replay. The input must match the schedule's qubit count
/// (CvState for one qubit, TwoModeState for two) and grid.
ExecutionResult execute(const CompiledSchedule& schedule, const EncodedState& input);

/// Encodes per-qubit logical inputs (chi, phi) with a shared envelope.
EncodedState encode_inputs(const std::vector<std::pair<double, double>>& inputs, const Envelope& envelope);

struct BackendComparisonRow {
  std::vector<int> bits;
  double probability;
  double logical_fidelity;  // frame-corrected ancilla decode vs exact decode
  double cv_overlap;        // |<exact|branch>| / (|exact| |branch|)
};

struct BackendComparison {
  std::vector<BackendComparisonRow> rows;  // ancilla branches with nonzero probability
  double total_probability = 0.0;
  /// sum_b p_b |<exact|branch_b>|^2 / (|exact|^2 |branch_b|^2): fidelity of
  /// the outcome-averaged, frame-corrected CV state with the exact output.
  double mixture_fidelity = 0.0;
};

BackendComparison compare_backends(const CircuitIR& ir, const EncodedState& input, WeightFamily weight_family);

/// Textbook 2^n state-vector evaluation of the circuit on product inputs
/// cos(chi/2)|0> + exp(i phi) sin(chi/2)|1>. Used for reporting.
Eigen::VectorXcd ideal_logical_output(const CircuitIR& ir, const std::vector<std::pair<double, double>>& inputs);

}  // namespace modvar

#endif  // MODVAR_COMPILER_HPP
