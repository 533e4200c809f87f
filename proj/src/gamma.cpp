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

#include "modvar/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace modvar {

std::string_view to_string(WeightFamily family) {
  switch (family) {
    case WeightFamily::constant: return "constant";
    case WeightFamily::cos_theta: return "cos_theta";
    case WeightFamily::sin_theta: return "sin_theta";
    case WeightFamily::cos_pi_k: return "cos_pi_k";
    case WeightFamily::paper_mixed: return "paper_mixed";
    case WeightFamily::custom: return "custom";
  }
  return "custom";
}

WeightFamily weight_family_from_string(std::string_view name) {
  for (auto f : {WeightFamily::constant, WeightFamily::cos_theta, WeightFamily::sin_theta, WeightFamily::cos_pi_k,
                 WeightFamily::paper_mixed, WeightFamily::custom}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown weight family '" + std::string(name) + "'");
}

WeightSpec make_weight(WeightFamily family, const GridSpec& grid, double constant) {
  const auto half = static_cast<Eigen::Index>(grid.half_samples());
  const auto nn = static_cast<Eigen::Index>(grid.period_count());
  Eigen::MatrixXd v(half, nn);
  for (Eigen::Index s = 0; s < half; ++s) {
    const double th = grid.theta_bar(static_cast<std::size_t>(s));
    for (Eigen::Index m = 0; m < nn; ++m) {
      const double k = grid.k_bar(static_cast<std::size_t>(m));
      switch (family) {
        case WeightFamily::constant: v(s, m) = constant; break;
        case WeightFamily::cos_theta: v(s, m) = std::cos(th); break;
        case WeightFamily::sin_theta: v(s, m) = std::sin(th); break;
        case WeightFamily::cos_pi_k: v(s, m) = std::cos(kPi * k); break;
        case WeightFamily::paper_mixed: v(s, m) = std::cos(th - kPi * k); break;
        case WeightFamily::custom:
          throw std::invalid_argument("make_weight: custom family needs a table");
      }
    }
  }
  if (!v.allFinite()) throw std::invalid_argument("weight must be real");
  return {grid, family, std::move(v)};
}

WeightSpec make_weight(const GridSpec& grid, const Eigen::MatrixXd& values) {
  if (static_cast<std::size_t>(values.rows()) != grid.half_samples() ||
      static_cast<std::size_t>(values.cols()) != grid.period_count()) {
    throw std::invalid_argument("make_weight: table must be (samples/2) x periods");
  }
  if (!values.allFinite()) throw std::invalid_argument("weight must be real");
  return {grid, WeightFamily::custom, values};
}

WeightSpec make_weight(const GridSpec& grid, const Eigen::MatrixXcd& values) {
  if (!values.allFinite() || values.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("weight must be real");
  }
  return make_weight(grid, Eigen::MatrixXd(values.real()));
}

WeightSpec operator*(const WeightSpec& a, const WeightSpec& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("weight product: grid mismatch");
  return {a.grid, WeightFamily::custom, a.values.cwiseProduct(b.values)};
}

Block2 pauli_block(const Axis& axis, double twist) {
  const Complex i(0.0, 1.0);
  Block2 b;
  b(0, 0) = axis.z();
  b(1, 1) = -axis.z();
  b(0, 1) = (axis.x() - i * axis.y()) * std::polar(1.0, twist);
  b(1, 0) = (axis.x() + i * axis.y()) * std::polar(1.0, -twist);
  return b;
}

namespace {

void require_unit_axis(const Axis& axis) {
  if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("axis must be a finite unit vector");
  }
}

void require_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

}  // namespace

GammaOperator make_gamma(const Axis& axis, WeightSpec weight) {
  require_unit_axis(axis);
  return {axis, std::move(weight), std::nullopt};
}

FiberOperator GammaOperator::fiber_operator() const {
  require_unit_axis(axis);
  const auto& grid = weight.grid;
  std::vector<Block2> blocks(grid.fiber_count());
  const Block2 plain = pauli_block(axis);
  for (std::size_t m = 0; m < grid.period_count(); ++m) {
    for (std::size_t s = 0; s < grid.half_samples(); ++s) {
      const Block2 p =
          twist ? pauli_block(axis, (*twist)(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(m))) : plain;
      blocks[s + grid.half_samples() * m] = weight(s, m) * p;
    }
  }
  return FiberOperator(grid, std::move(blocks));
}

CvState apply_gamma(const CvState& state, const GammaOperator& op) {
  require_grid(state.grid(), op.weight.grid);
  return apply(op.fiber_operator(), state);
}

FiberOperator modulated_identity(const WeightSpec& weight) {
  const auto& grid = weight.grid;
  std::vector<Block2> blocks(grid.fiber_count());
  for (std::size_t m = 0; m < grid.period_count(); ++m)
    for (std::size_t s = 0; s < grid.half_samples(); ++s)
      blocks[s + grid.half_samples() * m] = weight(s, m) * Block2::Identity();
  return FiberOperator(grid, std::move(blocks));
}

CvState apply_modulated_identity(const CvState& state, const WeightSpec& weight) {
  require_grid(state.grid(), weight.grid);
  return apply(modulated_identity(weight), state);
}

FiberOperator rotation_operator(const Axis& axis, double beta, const WeightSpec& weight) {
  require_unit_axis(axis);
  if (!std::isfinite(beta)) throw std::invalid_argument("rotation angle must be finite");
  const Complex i(0.0, 1.0);
  // exp(i beta n.sigma) = cos(beta) 1 + i sin(beta) n.sigma since (n.sigma)^2 = 1.
  const Block2 unit = std::cos(beta) * Block2::Identity() + i * std::sin(beta) * pauli_block(axis);
  const auto& grid = weight.grid;
  std::vector<Block2> blocks(grid.fiber_count());
  for (std::size_t m = 0; m < grid.period_count(); ++m)
    for (std::size_t s = 0; s < grid.half_samples(); ++s)
      blocks[s + grid.half_samples() * m] = weight(s, m) * unit;
  return FiberOperator(grid, std::move(blocks));
}

CvState apply_rotation(const CvState& state, const Axis& axis, double beta, const WeightSpec& weight) {
  require_grid(state.grid(), weight.grid);
  return apply(rotation_operator(axis, beta, weight), state);
}

std::pair<GammaOperator, GammaOperator> povm_pair(const GammaOperator& op) {
  const Eigen::MatrixXd& z = op.weight.values;
  if (z.cwiseAbs().maxCoeff() > 1.0 + 1e-12) {
    throw std::domain_error("not completable: |zeta| > 1");
  }
  Eigen::MatrixXd complement = (1.0 - z.array().square()).max(0.0).sqrt().matrix();
  GammaOperator partner{op.axis, {op.weight.grid, WeightFamily::custom, std::move(complement)}, op.twist};
  if (op.weight.family == WeightFamily::cos_theta) partner.weight.family = WeightFamily::sin_theta;
  return {op, partner};
}

TwoModeFiberOperator two_mode_gamma(const std::vector<GammaTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("two-mode operator needs at least one term");
  if (terms.size() > kMaxTwoModeTerms) throw std::invalid_argument("two-mode operator limited to 4 terms");
  TwoModeFiberOperator op;
  for (const auto& t : terms) {
    op.terms.push_back({make_gamma(t.axis_a, t.weight_a).fiber_operator(),
                        make_gamma(t.axis_b, t.weight_b).fiber_operator()});
  }
  return op;
}

TwoModeState apply_two_mode_gamma(const TwoModeState& state, const std::vector<GammaTerm>& terms) {
  return apply(two_mode_gamma(terms), state);
}

}  // namespace modvar
