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

#ifndef MODVAR_TWO_MODE_HPP
#define MODVAR_TWO_MODE_HPP

#include <functional>

#include "modvar/grid.hpp"

namespace modvar {

/// Joint position-representation amplitudes of two CV modes:
/// amplitudes()(j_a, j_b).
class TwoModeState {
 public:
  TwoModeState(GridSpec grid_a, GridSpec grid_b, CMatrix amplitudes);

  static TwoModeState product(const CvState& a, const CvState& b);
  static TwoModeState zero(const GridSpec& grid_a, const GridSpec& grid_b);

  const GridSpec& grid_a() const { return grid_a_; }
  const GridSpec& grid_b() const { return grid_b_; }
  const CMatrix& amplitudes() const { return amps_; }
  CMatrix& amplitudes() { return amps_; }

  double norm() const { return amps_.norm(); }
  double squared_norm() const { return amps_.squaredNorm(); }

  /// Row-major flattening, index j_a * D_b + j_b.
  CVector flatten() const;
  static TwoModeState unflatten(const GridSpec& grid_a, const GridSpec& grid_b, const CVector& flat);

 private:
  GridSpec grid_a_;
  GridSpec grid_b_;
  CMatrix amps_;
};

using CvMap = std::function<CvState(const CvState&)>;

/// (op_a tensor op_b) applied column/row-wise. Either map may be empty,
/// meaning identity on that mode.
TwoModeState apply_local(const TwoModeState& state, const CvMap& op_a, const CvMap& op_b);

/// <a|b> for two-mode states on the same grids.
Complex inner_product(const TwoModeState& a, const TwoModeState& b);
Complex inner_product(const CvState& a, const CvState& b);

}  // namespace modvar

#endif  // MODVAR_TWO_MODE_HPP
