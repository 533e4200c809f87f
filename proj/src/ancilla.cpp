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

#include "modvar/ancilla.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace modvar {

Operator::Operator(GaussianGate gate) : impl_(std::move(gate)) {}
Operator::Operator(FiberOperator fiber) : impl_(std::move(fiber)) {}
Operator::Operator(std::string name, CvMap map) : impl_(Custom{std::move(name), std::move(map)}) {}

CvState Operator::operator()(const CvState& state) const {
  return std::visit(
      [&](const auto& impl) -> CvState {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, GaussianGate>) {
          return apply_gaussian_gate(state, impl);
        } else if constexpr (std::is_same_v<T, FiberOperator>) {
          return apply(impl, state);
        } else {
          return in_position(impl.map(state));
        }
      },
      impl_);
}

CvMap Operator::as_map() const {
  return [op = *this](const CvState& s) { return op(s); };
}

std::string Operator::describe() const {
  if (const auto* g = gaussian()) return g->describe();
  if (fiber()) return "fiber-operator";
  return std::get<Custom>(impl_).name;
}

double Operator::unitarity_defect(const GridSpec& grid) const {
  if (const auto* g = gaussian()) {
    double worst = std::abs(std::abs(g->global_phase()) - 1.0);
    for (const auto& f : g->factors())
      for (std::size_t i = 0; i < grid.dimension(); ++i)
        worst = std::max(worst, std::abs(std::abs(factor_phase(grid, f, i)) - 1.0));
    return worst;
  }
  if (const auto* f = fiber()) return f->unitarity_defect();
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int probe = 0; probe < 4; ++probe) {
    CVector v(static_cast<Eigen::Index>(grid.dimension()));
    for (auto& x : v) x = Complex(normal(rng), normal(rng));
    v.normalize();
    const CvState out = (*this)(CvState(grid, Representation::position, v));
    worst = std::max(worst, std::abs(out.squared_norm() - 1.0));
  }
  return worst;
}

std::string CorrectionPolicy::name() const {
  switch (kind) {
    case Kind::none: return "none";
    case Kind::swap: return "swap";
    case Kind::phase_flip: return "phase_flip";
    case Kind::axis: return "axis";
    case Kind::parity_pair: return "parity_pair";
  }
  return "none";
}

CorrectionPolicy correction_policy_from_string(std::string_view name) {
  if (name == "none") return CorrectionPolicy::none();
  if (name == "swap") return CorrectionPolicy::swap();
  if (name == "phase_flip") return CorrectionPolicy::phase_flip();
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

namespace {

void require_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

void require_finite(const CvState& s) {
  if (!s.amplitudes().allFinite()) throw std::domain_error("non-finite amplitudes");
}

CvState scaled(CvState s, Complex c) {
  s.amplitudes() *= c;
  return s;
}

CvState sum(const CvState& a, const CvState& b, Complex cb = 1.0) {
  CvState out = in_position(a);
  out.amplitudes() += cb * in_position(b).amplitudes();
  return out;
}

TwoModeState sum(const TwoModeState& a, const TwoModeState& b, Complex cb = 1.0) {
  TwoModeState out = a;
  out.amplitudes() += cb * b.amplitudes();
  return out;
}

TwoModeState scaled(TwoModeState s, Complex c) {
  s.amplitudes() *= c;
  return s;
}

// Hadamard on one ancilla of a composite state with `count` ancillas.
template <class State>
void ancilla_hadamard(CompositeState<State>& comp, int which, int count) {
  const double r = 1.0 / std::sqrt(2.0);
  const std::size_t bit = std::size_t{1} << (count - 1 - which);
  for (std::size_t label = 0; label < comp.branches.size(); ++label) {
    if (label & bit) continue;
    const State zero = comp.branches[label];
    const State one = comp.branches[label | bit];
    comp.branches[label] = scaled(sum(zero, one), r);
    comp.branches[label | bit] = scaled(sum(zero, one, -1.0), r);
  }
}

// Ancilla |0>, Hadamard, U1 on the |0> branch, U2 on the |1> branch, Hadamard.
template <class State, class ApplyU1, class ApplyU2>
std::array<State, 2> fig1_branches(const State& psi, const State& zero, ApplyU1 u1, ApplyU2 u2) {
  CompositeState<State> comp{{psi, zero}};
  ancilla_hadamard(comp, 0, 1);
  comp.branches[0] = u1(comp.branches[0]);
  comp.branches[1] = u2(comp.branches[1]);
  ancilla_hadamard(comp, 0, 1);
  return {comp.branches[0], comp.branches[1]};
}

}  // namespace

SingleCircuitRun run_single_qubit_circuit(const CvState& psi_in, const Operator& u1, const Operator& u2) {
  const CvState psi = in_position(psi_in);
  require_finite(psi);
  const GridSpec& grid = psi.grid();
  SingleCircuitRun run;
  run.unitarity_defect = std::max(u1.unitarity_defect(grid), u2.unitarity_defect(grid));
  if (run.unitarity_defect > kUnitarityWarnThreshold) {
    run.warnings.push_back("controlled operators are not unitary (defect " + std::to_string(run.unitarity_defect) +
                           ")");
  }

  const auto branches = fig1_branches(psi, CvState::zero(grid), [&](const CvState& x) { return u1(x); },
                                      [&](const CvState& x) { return u2(x); });
  for (const auto& b : branches) {
    require_grid(b.grid(), grid);
    require_finite(b);
  }

  const CvState a = u1(psi);
  const CvState b = u2(psi);
  for (int i = 0; i < 2; ++i) {
    const CvState direct = scaled(sum(a, b, i == 0 ? 1.0 : -1.0), 0.5);
    const auto& branch = branches[static_cast<std::size_t>(i)];
    run.formula_residual =
        std::max(run.formula_residual, (branch.amplitudes() - direct.amplitudes()).cwiseAbs().maxCoeff());
    run.outcomes.push_back({{i}, branch.squared_norm(), branch, "none"});
  }
  return run;
}

std::vector<TwoModeOutcomeRecord> run_single_qubit_circuit(const TwoModeState& psi, int mode, const Operator& u1,
                                                           const Operator& u2) {
  if (mode != 0 && mode != 1) throw std::invalid_argument("run_single_qubit_circuit: mode must be 0 or 1");
  auto on_mode = [mode](const Operator& op) {
    return [mode, map = op.as_map()](const TwoModeState& x) {
      return mode == 0 ? apply_local(x, map, nullptr) : apply_local(x, nullptr, map);
    };
  };
  const auto branches =
      fig1_branches(psi, TwoModeState::zero(psi.grid_a(), psi.grid_b()), on_mode(u1), on_mode(u2));
  std::vector<TwoModeOutcomeRecord> out;
  for (int i = 0; i < 2; ++i) {
    const auto& b = branches[static_cast<std::size_t>(i)];
    out.push_back({{i}, b.squared_norm(), b, "none"});
  }
  return out;
}

TwoModeState two_qubit_formula_branch(const TwoModeState& psi, const Operator& u1, const Operator& u2,
                                      const Operator& u3, const Operator& u4, int i, int j) {
  const TwoModeState p12 = apply_local(psi, u1.as_map(), u2.as_map());
  const TwoModeState p34 = apply_local(psi, u3.as_map(), u4.as_map());
  const double si = (i % 2 == 0) ? 1.0 : -1.0;
  const double sj = (j % 2 == 0) ? 1.0 : -1.0;
  return scaled(sum(scaled(p12, si), p34, sj), 0.25);
}

TwoCircuitRun run_two_qubit_circuit(const TwoModeState& psi, const Operator& u1, const Operator& u2,
                                    const Operator& u3, const Operator& u4) {
  if (!psi.amplitudes().allFinite()) throw std::domain_error("non-finite amplitudes");
  const GridSpec& ga = psi.grid_a();
  const GridSpec& gb = psi.grid_b();
  TwoCircuitRun run;
  run.unitarity_defect = std::max({u1.unitarity_defect(ga), u3.unitarity_defect(ga), u2.unitarity_defect(gb),
                                   u4.unitarity_defect(gb)});
  if (run.unitarity_defect > kUnitarityWarnThreshold) {
    run.warnings.push_back("controlled operators are not unitary (defect " + std::to_string(run.unitarity_defect) +
                           ")");
  }

  const TwoModeState zero = TwoModeState::zero(ga, gb);
  CompositeState<TwoModeState> comp{{psi, zero, zero, zero}};
  // Entangler: H on ancilla A, then CNOT A -> B.
  ancilla_hadamard(comp, 0, 2);
  std::swap(comp.branches[2], comp.branches[3]);
  for (std::size_t label = 0; label < 4; ++label) {
    const bool a_one = (label & 2U) != 0;
    const bool b_one = (label & 1U) != 0;
    const Operator& on_a = a_one ? u1 : u3;
    const Operator& on_b = b_one ? u2 : u4;
    comp.branches[label] = apply_local(comp.branches[label], on_a.as_map(), on_b.as_map());
  }
  ancilla_hadamard(comp, 0, 2);
  ancilla_hadamard(comp, 1, 2);

  for (int label = 0; label < 4; ++label) {
    const int i = label >> 1;
    const int j = label & 1;
    const TwoModeState& branch = comp.branches[static_cast<std::size_t>(label)];
    const TwoModeState formula = two_qubit_formula_branch(psi, u1, u2, u3, u4, i, j);
    const Complex ff = inner_product(formula, formula);
    Complex c = 0.0;
    if (std::abs(ff) > 0.0) c = inner_product(formula, branch) / ff;
    run.formula_constant[static_cast<std::size_t>(label)] = c;
    const double residual = (branch.amplitudes() - c * formula.amplitudes()).cwiseAbs().maxCoeff();
    run.formula_residual = std::max(run.formula_residual, residual);
    run.outcomes.push_back({{i, j}, branch.squared_norm(), branch, "none"});
  }
  return run;
}

RotationPair make_rotation_pair(const Axis& axis, double alpha, const WeightSpec& zeta, const WeightSpec& zeta_prime,
                                const Axis& axis_prime, PairNormalization normalization) {
  if (!(zeta.grid == zeta_prime.grid)) throw std::invalid_argument("make_rotation_pair: grid mismatch");
  const Eigen::ArrayXXd completeness = zeta.values.array().square() + zeta_prime.values.array().square();
  if ((completeness - 1.0).abs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("weights not complementary");
  }
  const FiberOperator first = rotation_operator(axis, alpha, zeta);
  const FiberOperator second = rotation_operator(axis_prime, alpha - kPi / 2.0, zeta_prime);
  const Complex c = normalization == PairNormalization::as_printed ? 1.0 / std::sqrt(2.0) : 1.0;
  RotationPair pair{c * (first + second), c * (first - second), 0.0};
  pair.unitarity_defect = std::max(pair.u1.unitarity_defect(), pair.u2.unitarity_defect());
  return pair;
}

namespace {

FiberOperator correction_operator(const GridSpec& grid, const Axis& axis) {
  return FiberOperator::uniform(grid, pauli_block(axis));
}

}  // namespace

OutcomeRecord apply_frame_correction(const OutcomeRecord& record, const CorrectionPolicy& policy) {
  if (record.bits.size() != 1) throw std::invalid_argument("apply_frame_correction: expected one outcome bit");
  OutcomeRecord out = record;
  if (record.bits[0] == 0 || policy.kind == CorrectionPolicy::Kind::none) {
    out.correction = "identity";
    return out;
  }
  if (policy.kind == CorrectionPolicy::Kind::parity_pair) {
    throw std::invalid_argument("parity_pair policy needs two outcome bits");
  }
  out.state = apply(correction_operator(record.state.grid(), policy.axis), record.state);
  out.correction = policy.name();
  return out;
}

TwoModeOutcomeRecord apply_frame_correction(const TwoModeOutcomeRecord& record, const CorrectionPolicy& policy) {
  if (record.bits.size() != 2) throw std::invalid_argument("apply_frame_correction: expected two outcome bits");
  TwoModeOutcomeRecord out = record;
  const bool odd = ((record.bits[0] ^ record.bits[1]) & 1) != 0;
  if (!odd || policy.kind == CorrectionPolicy::Kind::none) {
    out.correction = "identity";
    return out;
  }
  TwoModeFiberOperator op;
  op.terms.push_back({correction_operator(record.state.grid_a(), policy.axis),
                      correction_operator(record.state.grid_b(), policy.axis_b)});
  out.state = apply(op, record.state);
  out.correction = policy.name();
  return out;
}

}  // namespace modvar
