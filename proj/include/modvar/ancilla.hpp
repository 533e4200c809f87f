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

#ifndef MODVAR_ANCILLA_HPP
#define MODVAR_ANCILLA_HPP

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "modvar/fiber_operator.hpp"
#include "modvar/gamma.hpp"
#include "modvar/gaussian.hpp"

namespace modvar {

/// A single-mode operator used as a controlled unitary in the ancilla
/// circuits: a Gaussian gate, a fiberwise operator, or an arbitrary map.
class Operator {
 public:
  Operator(GaussianGate gate);   // NOLINT(google-explicit-constructor)
  Operator(FiberOperator fiber);  // NOLINT(google-explicit-constructor)
  Operator(std::string name, CvMap map);

  static Operator identity() { return Operator(GaussianGate::identity()); }

  CvState operator()(const CvState& state) const;
  CvMap as_map() const;
  std::string describe() const;

  /// Exact for Gaussian gates (pure phases) and fiber operators; for
  /// arbitrary maps it is estimated from a fixed set of random probes.
  double unitarity_defect(const GridSpec& grid) const;

  const GaussianGate* gaussian() const { return std::get_if<GaussianGate>(&impl_); }
  const FiberOperator* fiber() const { return std::get_if<FiberOperator>(&impl_); }

 private:
  struct Custom {
    std::string name;
    CvMap map;
  };
  std::variant<GaussianGate, FiberOperator, Custom> impl_;
};

inline constexpr double kUnitarityWarnThreshold = 1e-10;

/// Outcome-conditioned relabeling of the logical frame. The correction is a
/// uniform fiberwise unitary (a Pauli or Pauli pair) applied to the branch.
struct CorrectionPolicy {
  enum class Kind {
    none,        // never correct
    swap,        // outcome 1: exchange logical 0/1 (sigma_x)
    phase_flip,  // outcome 1: sigma_z
    axis,        // outcome 1: n . sigma
    parity_pair  // two ancillas, odd parity: (P_a, P_b)
  };
  Kind kind = Kind::none;
  Axis axis = Axis::UnitX();
  Axis axis_b = Axis::UnitX();

  static CorrectionPolicy none() { return {}; }
  static CorrectionPolicy swap() { return {Kind::swap, Axis::UnitX(), Axis::UnitX()}; }
  static CorrectionPolicy phase_flip() { return {Kind::phase_flip, Axis::UnitZ(), Axis::UnitZ()}; }
  static CorrectionPolicy pauli_axis(const Axis& n) { return {Kind::axis, n, n}; }
  static CorrectionPolicy parity(const Axis& a, const Axis& b) { return {Kind::parity_pair, a, b}; }

  std::string name() const;
};

/// "none", "swap", "phase_flip"; throws std::invalid_argument("unknown policy").
CorrectionPolicy correction_policy_from_string(std::string_view name);

struct OutcomeRecord {
  std::vector<int> bits;
  double probability = 0.0;  // squared norm of the unnormalized branch
  CvState state;             // unnormalized branch
  std::string correction = "none";
};

struct TwoModeOutcomeRecord {
  std::vector<int> bits;
  double probability = 0.0;
  TwoModeState state;
  std::string correction = "none";
};

/// Ancilla branches of a composite ancilla (x) CV state, indexed by the
/// ancilla basis label (first ancilla most significant).
template <class State>
struct CompositeState {
  std::vector<State> branches;

  double squared_norm() const {
    double acc = 0.0;
    for (const auto& b : branches) acc += b.squared_norm();
    return acc;
  }
};

struct SingleCircuitRun {
  std::vector<OutcomeRecord> outcomes;  // outcome 0 then 1
  double unitarity_defect = 0.0;        // max over U1, U2
  double formula_residual = 0.0;        // max |branch_i - (U1 + (-1)^i U2) psi / 2|
  std::vector<std::string> warnings;
};

/// Ancilla in |0>, Hadamard, U1 on the ancilla-|0> branch and U2 on the
/// ancilla-|1> branch, final Hadamard. Outcome i carries
/// (U1 + (-1)^i U2) psi / 2.
SingleCircuitRun run_single_qubit_circuit(const CvState& psi, const Operator& u1, const Operator& u2);

/// The same circuit with the controlled operators acting on one mode of a
/// two-mode state (mode 0 or 1). Records carry a single outcome bit.
std::vector<TwoModeOutcomeRecord> run_single_qubit_circuit(const TwoModeState& psi, int mode, const Operator& u1,
                                                           const Operator& u2);

struct TwoCircuitRun {
  std::vector<TwoModeOutcomeRecord> outcomes;  // (0,0), (0,1), (1,0), (1,1)
  double unitarity_defect = 0.0;
  /// Fitted constants c_ij with branch_ij = c_ij * formula_ij, where formula_ij
  /// is the closed-form product branch, and the worst residual
  /// max|branch - c formula| over outcomes (zero branches excluded).
  std::array<Complex, 4> formula_constant{};
  double formula_residual = 0.0;
  std::vector<std::string> warnings;
};

/// Ancillas prepared in (|00> + |11>)/sqrt(2); on mode A the ancilla-1 branch
/// receives U1 and the ancilla-0 branch U3; on mode B likewise U2 / U4;
/// Hadamards on both ancillas. Outcome (i, j) carries
/// (U3 (x) U4 + (-1)^(i xor j) U1 (x) U2) psi / (2 sqrt 2).
TwoCircuitRun run_two_qubit_circuit(const TwoModeState& psi, const Operator& u1, const Operator& u2,
                                    const Operator& u3, const Operator& u4);

/// ((-1)^i U1 (x) U2 + (-1)^j U3 (x) U4) psi / 4, evaluated directly.
TwoModeState two_qubit_formula_branch(const TwoModeState& psi, const Operator& u1, const Operator& u2,
                                      const Operator& u3, const Operator& u4, int i, int j);

enum class PairNormalization {
  as_printed,  // 1/sqrt(2) prefactor: U_k^dagger U_k = 1/2 fiberwise
  unitary,     // prefactor dropped: exactly unitary when axis' = axis
};

struct RotationPair {
  FiberOperator u1;
  FiberOperator u2;
  double unitarity_defect;
};

/// U_k = c [R(axis, alpha, zeta) + (-1)^(k+1) R(axis', alpha - pi/2, zeta')]
/// with R the weighted rotation and c = 1/sqrt(2) or 1. Then
/// (U1 + U2)/2 = c R(axis, alpha, zeta) and (U1 - U2)/2 = c R(axis', alpha - pi/2, zeta').
/// Throws std::invalid_argument("weights not complementary") unless
/// zeta^2 + zeta'^2 = 1 to 1e-12 on every fiber.
RotationPair make_rotation_pair(const Axis& axis, double alpha, const WeightSpec& zeta, const WeightSpec& zeta_prime,
                                const Axis& axis_prime,
                                PairNormalization normalization = PairNormalization::as_printed);

OutcomeRecord apply_frame_correction(const OutcomeRecord& record, const CorrectionPolicy& policy);
TwoModeOutcomeRecord apply_frame_correction(const TwoModeOutcomeRecord& record, const CorrectionPolicy& policy);

}  // namespace modvar

#endif  // MODVAR_ANCILLA_HPP
