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

#ifndef MODVAR_DENSE_HPP
#define MODVAR_DENSE_HPP

#include <functional>
#include <vector>

#include "modvar/two_mode.hpp"

namespace modvar {

/// Brute-force matrix of a linear map in the position basis. For two modes
/// the basis index is j_a * D_b + j_b.
struct DenseOperator {
  std::vector<GridSpec> grids;
  CMatrix matrix;
};

inline constexpr std::size_t kMaxDenseSingleMode = 4096;
inline constexpr std::size_t kMaxDenseTwoMode = 1024;

using TwoModeMap = std::function<TwoModeState(const TwoModeState&)>;

/// Column j is op applied to position basis state j. Throws
/// std::length_error when the dimension exceeds the dense budget.
DenseOperator materialize(const GridSpec& grid, const CvMap& op);
DenseOperator materialize(const GridSpec& grid_a, const GridSpec& grid_b, const TwoModeMap& op);

/// Diagonal operator in position representation.
DenseOperator position_diagonal(const GridSpec& grid, const std::function<Complex(double)>& symbol);

/// max |a_ij - b_ij|. Throws std::invalid_argument on shape mismatch.
double compare(const DenseOperator& a, const DenseOperator& b);
double compare(const CMatrix& a, const CMatrix& b);

double hermiticity_defect(const CMatrix& a);
double unitarity_defect(const CMatrix& a);
inline double hermiticity_defect(const DenseOperator& a) { return hermiticity_defect(a.matrix); }
inline double unitarity_defect(const DenseOperator& a) { return unitarity_defect(a.matrix); }

/// The Zak map as a D x D matrix: rows indexed by zak_flat_index.
CMatrix zak_matrix(const GridSpec& grid);

/// Largest |entry| of an operator expressed in the Zak basis that couples
/// two different fibers (or a fiber to itself outside the 2x2 block).
double off_fiber_mass(const GridSpec& grid, const CMatrix& position_matrix);

}  // namespace modvar

#endif  // MODVAR_DENSE_HPP
