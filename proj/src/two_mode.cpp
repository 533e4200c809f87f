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

#include "modvar/two_mode.hpp"

#include <stdexcept>

namespace modvar {

TwoModeState::TwoModeState(GridSpec grid_a, GridSpec grid_b, CMatrix amplitudes)
    : grid_a_(grid_a), grid_b_(grid_b), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.rows()) != grid_a_.dimension() ||
      static_cast<std::size_t>(amps_.cols()) != grid_b_.dimension()) {
    throw std::invalid_argument("TwoModeState: amplitude shape does not match grids");
  }
}

TwoModeState TwoModeState::product(const CvState& a, const CvState& b) {
  const CvState pa = in_position(a);
  const CvState pb = in_position(b);
  return TwoModeState(pa.grid(), pb.grid(), pa.amplitudes() * pb.amplitudes().transpose());
}

TwoModeState TwoModeState::zero(const GridSpec& grid_a, const GridSpec& grid_b) {
  return TwoModeState(grid_a, grid_b,
                      CMatrix::Zero(static_cast<Eigen::Index>(grid_a.dimension()),
                                    static_cast<Eigen::Index>(grid_b.dimension())));
}

CVector TwoModeState::flatten() const {
  CVector flat(amps_.size());
  const auto db = amps_.cols();
  for (Eigen::Index ja = 0; ja < amps_.rows(); ++ja) {
    flat.segment(ja * db, db) = amps_.row(ja).transpose();
  }
  return flat;
}

TwoModeState TwoModeState::unflatten(const GridSpec& grid_a, const GridSpec& grid_b, const CVector& flat) {
  const auto da = static_cast<Eigen::Index>(grid_a.dimension());
  const auto db = static_cast<Eigen::Index>(grid_b.dimension());
  if (flat.size() != da * db) {
    throw std::invalid_argument("TwoModeState::unflatten: length mismatch");
  }
  CMatrix amps(da, db);
  for (Eigen::Index ja = 0; ja < da; ++ja) {
    amps.row(ja) = flat.segment(ja * db, db).transpose();
  }
  return TwoModeState(grid_a, grid_b, std::move(amps));
}

TwoModeState apply_local(const TwoModeState& state, const CvMap& op_a, const CvMap& op_b) {
  CMatrix amps = state.amplitudes();
  if (op_a) {
    for (Eigen::Index c = 0; c < amps.cols(); ++c) {
      const CvState col(state.grid_a(), Representation::position, amps.col(c));
      amps.col(c) = in_position(op_a(col)).amplitudes();
    }
  }
  if (op_b) {
    for (Eigen::Index r = 0; r < amps.rows(); ++r) {
      const CvState row(state.grid_b(), Representation::position, amps.row(r).transpose());
      amps.row(r) = in_position(op_b(row)).amplitudes().transpose();
    }
  }
  return TwoModeState(state.grid_a(), state.grid_b(), std::move(amps));
}

Complex inner_product(const TwoModeState& a, const TwoModeState& b) {
  if (!(a.grid_a() == b.grid_a()) || !(a.grid_b() == b.grid_b())) {
    throw std::invalid_argument("inner_product: grid mismatch");
  }
  return (a.amplitudes().conjugate().cwiseProduct(b.amplitudes())).sum();
}

Complex inner_product(const CvState& a, const CvState& b) {
  if (!(a.grid() == b.grid())) {
    throw std::invalid_argument("inner_product: grid mismatch");
  }
  return in_position(a).amplitudes().dot(in_position(b).amplitudes());
}

}  // namespace modvar
