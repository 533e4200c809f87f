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

#ifndef MODVAR_FIBER_OPERATOR_HPP
#define MODVAR_FIBER_OPERATOR_HPP

#include <cstddef>
#include <vector>

#include "modvar/grid.hpp"
#include "modvar/two_mode.hpp"
#include "modvar/zak.hpp"

namespace modvar {

using Block2 = Eigen::Matrix2cd;
using Block4 = Eigen::Matrix4cd;

/// Operator acting independently on every fiber {(s, m), (s + N_s/2, m)}
/// with a 2x2 block, in the (base, shifted) component order.
class FiberOperator {
 public:
  FiberOperator(GridSpec grid, std::vector<Block2> blocks);

  static FiberOperator identity(const GridSpec& grid);
  static FiberOperator uniform(const GridSpec& grid, const Block2& block);

  const GridSpec& grid() const { return grid_; }
  const Block2& block(std::size_t s, std::size_t m) const { return blocks_[index(s, m)]; }
  Block2& block(std::size_t s, std::size_t m) { return blocks_[index(s, m)]; }
  const std::vector<Block2>& blocks() const { return blocks_; }

  std::size_t index(std::size_t s, std::size_t m) const { return s + grid_.half_samples() * m; }

  FiberOperator adjoint() const;

  /// max over fibers of max|B^dagger B - 1|.
  double unitarity_defect() const;
  double hermiticity_defect() const;

  friend FiberOperator operator*(const FiberOperator& a, const FiberOperator& b);
  friend FiberOperator operator+(const FiberOperator& a, const FiberOperator& b);
  friend FiberOperator operator-(const FiberOperator& a, const FiberOperator& b);
  friend FiberOperator operator*(Complex c, const FiberOperator& a);

 private:
  GridSpec grid_;
  std::vector<Block2> blocks_;
};

ModularField apply(const FiberOperator& op, const ModularField& field);
/// Zak transform, blockwise multiply, inverse Zak. Output in position representation.
CvState apply(const FiberOperator& op, const CvState& state);

/// Operator on two modes that is a sum of tensor products of fiber operators.
/// Acts fiberwise with 4x4 blocks in |q_a q_b> order (mode a most significant).
struct TwoModeFiberOperator {
  struct Term {
    FiberOperator a;
    FiberOperator b;
  };
  std::vector<Term> terms;

  Block4 block(std::size_t fiber_a, std::size_t fiber_b) const;
};

TwoModeState apply(const TwoModeFiberOperator& op, const TwoModeState& state);

/// Double Zak transform of a two-mode state: rows indexed by
/// zak_flat_index(grid_a, ...), columns by zak_flat_index(grid_b, ...).
CMatrix zak_forward_two_mode(const TwoModeState& state);
TwoModeState zak_inverse_two_mode(const GridSpec& grid_a, const GridSpec& grid_b, const CMatrix& g);

}  // namespace modvar

#endif  // MODVAR_FIBER_OPERATOR_HPP
