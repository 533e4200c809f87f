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

#include "modvar/dense.hpp"

#include <stdexcept>
#include <string>

#include "modvar/zak.hpp"

namespace modvar {

DenseOperator materialize(const GridSpec& grid, const CvMap& op) {
  const std::size_t d = grid.dimension();
  if (d > kMaxDenseSingleMode) throw std::length_error("materialize: dense budget exceeded");
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const CvState out = in_position(op(CvState::position_basis(grid, static_cast<std::size_t>(j))));
    if (!(out.grid() == grid)) throw std::invalid_argument("materialize: operator changed the grid");
    m.col(j) = out.amplitudes();
  }
  return {{grid}, std::move(m)};
}

DenseOperator materialize(const GridSpec& grid_a, const GridSpec& grid_b, const TwoModeMap& op) {
  const std::size_t d = grid_a.dimension() * grid_b.dimension();
  if (d > kMaxDenseTwoMode) throw std::length_error("materialize: dense budget exceeded");
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    CVector e = CVector::Zero(n);
    e[j] = 1.0;
    m.col(j) = op(TwoModeState::unflatten(grid_a, grid_b, e)).flatten();
  }
  return {{grid_a, grid_b}, std::move(m)};
}

DenseOperator position_diagonal(const GridSpec& grid, const std::function<Complex(double)>& symbol) {
  const auto n = static_cast<Eigen::Index>(grid.dimension());
  CVector diag(n);
  for (Eigen::Index j = 0; j < n; ++j) diag[j] = symbol(grid.theta(static_cast<std::size_t>(j)));
  return {{grid}, diag.asDiagonal()};
}

double compare(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("compare: dimension mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double compare(const DenseOperator& a, const DenseOperator& b) { return compare(a.matrix, b.matrix); }

double hermiticity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("hermiticity_defect: matrix not square");
  return compare(a, a.adjoint());
}

double unitarity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("unitarity_defect: matrix not square");
  return compare(a.adjoint() * a, CMatrix::Identity(a.rows(), a.cols()));
}

CMatrix zak_matrix(const GridSpec& grid) {
  const auto n = static_cast<Eigen::Index>(grid.dimension());
  return zak_forward_columns(grid, CMatrix::Identity(n, n));
}

double off_fiber_mass(const GridSpec& grid, const CMatrix& position_matrix) {
  const CMatrix z = zak_matrix(grid);
  const CMatrix in_zak = z * position_matrix * z.adjoint();
  const std::size_t ns = grid.samples_per_period();
  const std::size_t half = grid.half_samples();
  auto fiber_of = [&](std::size_t flat) {
    const std::size_t s = flat % ns;
    const std::size_t m = flat / ns;
    return (s % half) + half * m;
  };
  double worst = 0.0;
  for (Eigen::Index r = 0; r < in_zak.rows(); ++r) {
    for (Eigen::Index c = 0; c < in_zak.cols(); ++c) {
      if (fiber_of(static_cast<std::size_t>(r)) != fiber_of(static_cast<std::size_t>(c))) {
        worst = std::max(worst, std::abs(in_zak(r, c)));
      }
    }
  }
  return worst;
}

}  // namespace modvar
