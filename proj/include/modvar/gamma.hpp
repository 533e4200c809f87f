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

#ifndef MODVAR_GAMMA_HPP
#define MODVAR_GAMMA_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modvar/fiber_operator.hpp"

namespace modvar {

enum class WeightFamily {
  constant,     // zeta = c
  cos_theta,    // cos(theta_bar)
  sin_theta,    // sin(theta_bar)
  cos_pi_k,     // cos(pi k_bar)
  paper_mixed,  // cos(theta_bar - pi k_bar)
  custom,
};

std::string_view to_string(WeightFamily family);
/// Accepts the names returned by to_string. Throws std::invalid_argument.
WeightFamily weight_family_from_string(std::string_view name);

/// Real weight zeta(s, m) tabulated on the half-grid, (N_s/2) x N_n.
struct WeightSpec {
  GridSpec grid;
  WeightFamily family;
  Eigen::MatrixXd values;

  double operator()(std::size_t s, std::size_t m) const {
    return values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(m));
  }
};

/// Tabulates a named family. `constant` reads its value from the argument.
WeightSpec make_weight(WeightFamily family, const GridSpec& grid, double constant = 1.0);
/// Custom weight from a real table; throws "weight must be real" on
/// non-finite entries or on complex entries with nonzero imaginary part.
WeightSpec make_weight(const GridSpec& grid, const Eigen::MatrixXd& values);
WeightSpec make_weight(const GridSpec& grid, const Eigen::MatrixXcd& values);

WeightSpec operator*(const WeightSpec& a, const WeightSpec& b);

using Axis = Eigen::Vector3d;

inline Axis axis_x() { return Axis::UnitX(); }
inline Axis axis_y() { return Axis::UnitY(); }
inline Axis axis_z() { return Axis::UnitZ(); }

/// n . sigma with sigma_y = -i|0><1| + i|1><0|, optionally twisted so that
/// |0><1| picks up exp(i tau) and |1><0| exp(-i tau).
Block2 pauli_block(const Axis& axis, double twist = 0.0);

/// zeta(theta_bar, k_bar) * (n . sigma) on every fiber.
struct GammaOperator {
  Axis axis;
  WeightSpec weight;
  std::optional<Eigen::MatrixXd> twist;

  FiberOperator fiber_operator() const;
};

GammaOperator make_gamma(const Axis& axis, WeightSpec weight);

CvState apply_gamma(const CvState& state, const GammaOperator& op);

/// 1_zeta: multiplies both fiber components by zeta.
FiberOperator modulated_identity(const WeightSpec& weight);
CvState apply_modulated_identity(const CvState& state, const WeightSpec& weight);

/// zeta * exp(i beta n.sigma) per fiber = cos(beta) 1_zeta + i sin(beta) Gamma.
FiberOperator rotation_operator(const Axis& axis, double beta, const WeightSpec& weight);
CvState apply_rotation(const CvState& state, const Axis& axis, double beta, const WeightSpec& weight);

/// Completes Gamma with zeta' = sqrt(1 - zeta^2) (same axis and twist).
/// Throws std::domain_error("not completable") if |zeta| > 1 anywhere.
std::pair<GammaOperator, GammaOperator> povm_pair(const GammaOperator& op);

/// One term Gamma_a (x) Gamma_b of a two-mode operator sum.
struct GammaTerm {
  Axis axis_a;
  WeightSpec weight_a;
  Axis axis_b;
  WeightSpec weight_b;
};

inline constexpr std::size_t kMaxTwoModeTerms = 4;

TwoModeFiberOperator two_mode_gamma(const std::vector<GammaTerm>& terms);
/// Sum over terms of Gamma_a (x) Gamma_b. Throws on an empty list, on more
/// than kMaxTwoModeTerms terms, or on a grid mismatch.
TwoModeState apply_two_mode_gamma(const TwoModeState& state, const std::vector<GammaTerm>& terms);

}  // namespace modvar

#endif  // MODVAR_GAMMA_HPP
