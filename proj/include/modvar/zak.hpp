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

#ifndef MODVAR_ZAK_HPP
#define MODVAR_ZAK_HPP

#include <cstddef>
#include <vector>

#include "modvar/grid.hpp"

namespace modvar {

/// Coefficients g(theta_bar_s, k_bar_m) of a state in the modular basis
///   |(theta_bar, k_bar)> = N_n^{-1/2} sum_n exp(i 2pi n k_bar) |theta_bar + 2pi n>.
/// values() is samples_per_period x period_count, row s, column m.
class ModularField {
 public:
  ModularField(GridSpec grid, CMatrix values);

  static ModularField zero(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  const CMatrix& values() const { return values_; }
  CMatrix& values() { return values_; }

  Complex operator()(std::size_t s, std::size_t m) const {
    return values_(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(m));
  }
  Complex& operator()(std::size_t s, std::size_t m) {
    return values_(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(m));
  }

  double squared_norm() const { return values_.squaredNorm(); }

 private:
  GridSpec grid_;
  CMatrix values_;
};

/// Unitary map from the position grid to the modular basis.
ModularField zak_forward(const CvState& state);
/// Exact inverse of zak_forward; the state comes back in position representation.
CvState zak_inverse(const ModularField& field);

/// Zak transform of every column of a D x c block (each column a position
/// vector on grid). Row index of the result is s + samples * m.
CMatrix zak_forward_columns(const GridSpec& grid, const CMatrix& columns);
CMatrix zak_inverse_columns(const GridSpec& grid, const CMatrix& columns);

/// Flat index of (s, m) used by the *_columns helpers and by the two-mode code.
inline std::size_t zak_flat_index(const GridSpec& grid, std::size_t s, std::size_t m) {
  return s + grid.samples_per_period() * m;
}

/// The pair (g(s, m), g(s + N_s/2, m)): one qubit per fiber.
struct FiberQubit {
  std::size_t s;
  std::size_t m;
  Eigen::Vector2cd amplitude;
};

/// Throws std::out_of_range("not a base-sector index") when s >= N_s/2.
FiberQubit fiber_view(const ModularField& field, std::size_t s, std::size_t m);

/// Per-fiber decomposition
///   v = global_phase * f * (cos(alpha/2), sin(alpha/2) exp(i phi)).
/// Arrays are (N_s/2) x N_n.
struct QubitParams {
  GridSpec grid;
  Eigen::MatrixXd weight;        // f >= 0
  Eigen::MatrixXd alpha;         // [0, pi]
  Eigen::MatrixXd phi;           // [0, 2pi)
  Eigen::MatrixXd global_phase;  // arg of the base component
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> zero_fiber;
};

QubitParams extract_qubit_params(const ModularField& field);
ModularField rebuild_field(const QubitParams& params);

}  // namespace modvar

#endif  // MODVAR_ZAK_HPP
