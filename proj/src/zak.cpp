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

#include "modvar/zak.hpp"

#include <cmath>
#include <stdexcept>

namespace modvar {

ModularField::ModularField(GridSpec grid, CMatrix values) : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.rows()) != grid_.samples_per_period() ||
      static_cast<std::size_t>(values_.cols()) != grid_.period_count()) {
    throw std::invalid_argument("ModularField: shape does not match grid");
  }
}

ModularField ModularField::zero(const GridSpec& grid) {
  return ModularField(grid, CMatrix::Zero(static_cast<Eigen::Index>(grid.samples_per_period()),
                                          static_cast<Eigen::Index>(grid.period_count())));
}

namespace {

// Position vector viewed as an N_s x N_n matrix: entry (s, n) = psi_{s + N_s n}.
// Row-wise DFT over n gives the Zak coefficients.
CMatrix forward_block(const GridSpec& grid, const CVector& psi) {
  const auto ns = static_cast<Eigen::Index>(grid.samples_per_period());
  const auto nn = static_cast<Eigen::Index>(grid.period_count());
  Eigen::Map<const CMatrix> by_period(psi.data(), ns, nn);
  CMatrix out(ns, nn);
  for (Eigen::Index s = 0; s < ns; ++s) {
    out.row(s) = dft_forward(by_period.row(s).transpose()).transpose();
  }
  return out;
}

CVector inverse_block(const GridSpec& grid, const CMatrix& g) {
  const auto ns = static_cast<Eigen::Index>(grid.samples_per_period());
  const auto nn = static_cast<Eigen::Index>(grid.period_count());
  CMatrix by_period(ns, nn);
  for (Eigen::Index s = 0; s < ns; ++s) {
    by_period.row(s) = dft_inverse(g.row(s).transpose()).transpose();
  }
  return Eigen::Map<const CVector>(by_period.data(), ns * nn);
}

}  // namespace

ModularField zak_forward(const CvState& state) {
  const CvState pos = in_position(state);
  return ModularField(pos.grid(), forward_block(pos.grid(), pos.amplitudes()));
}

CvState zak_inverse(const ModularField& field) {
  return CvState(field.grid(), Representation::position, inverse_block(field.grid(), field.values()));
}

CMatrix zak_forward_columns(const GridSpec& grid, const CMatrix& columns) {
  CMatrix out(columns.rows(), columns.cols());
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    const CMatrix g = forward_block(grid, columns.col(c));
    out.col(c) = Eigen::Map<const CVector>(g.data(), g.size());
  }
  return out;
}

CMatrix zak_inverse_columns(const GridSpec& grid, const CMatrix& columns) {
  const auto ns = static_cast<Eigen::Index>(grid.samples_per_period());
  const auto nn = static_cast<Eigen::Index>(grid.period_count());
  CMatrix out(columns.rows(), columns.cols());
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    const CVector col = columns.col(c);
    Eigen::Map<const CMatrix> g(col.data(), ns, nn);
    out.col(c) = inverse_block(grid, g);
  }
  return out;
}

FiberQubit fiber_view(const ModularField& field, std::size_t s, std::size_t m) {
  const auto& grid = field.grid();
  if (s >= grid.half_samples()) {
    throw std::out_of_range("not a base-sector index");
  }
  if (m >= grid.period_count()) {
    throw std::out_of_range("fiber_view: k_bar index outside grid");
  }
  return {s, m, Eigen::Vector2cd(field(s, m), field(s + grid.half_samples(), m))};
}

QubitParams extract_qubit_params(const ModularField& field) {
  const auto& grid = field.grid();
  const auto half = static_cast<Eigen::Index>(grid.half_samples());
  const auto nn = static_cast<Eigen::Index>(grid.period_count());
  QubitParams p{grid,
                Eigen::MatrixXd::Zero(half, nn),
                Eigen::MatrixXd::Zero(half, nn),
                Eigen::MatrixXd::Zero(half, nn),
                Eigen::MatrixXd::Zero(half, nn),
                Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(half, nn, false)};
  for (Eigen::Index s = 0; s < half; ++s) {
    for (Eigen::Index m = 0; m < nn; ++m) {
      const Complex v0 = field.values()(s, m);
      const Complex v1 = field.values()(s + half, m);
      const double a0 = std::abs(v0);
      const double a1 = std::abs(v1);
      const double f = std::hypot(a0, a1);
      p.weight(s, m) = f;
      if (f == 0.0) {
        p.zero_fiber(s, m) = true;
        continue;
      }
      p.alpha(s, m) = 2.0 * std::atan2(a1, a0);
      // With one component zero its argument is meaningless; anchor the
      // global phase on the populated one.
      const double base_arg = a0 > 0.0 ? std::arg(v0) : std::arg(v1);
      p.global_phase(s, m) = base_arg;
      if (a0 > 0.0 && a1 > 0.0) {
        double phi = std::fmod(std::arg(v1) - std::arg(v0), kTwoPi);
        if (phi < 0.0) phi += kTwoPi;
        if (phi >= kTwoPi) phi = 0.0;
        p.phi(s, m) = phi;
      }
    }
  }
  return p;
}

ModularField rebuild_field(const QubitParams& params) {
  ModularField out = ModularField::zero(params.grid);
  const auto half = static_cast<Eigen::Index>(params.grid.half_samples());
  for (Eigen::Index s = 0; s < params.weight.rows(); ++s) {
    for (Eigen::Index m = 0; m < params.weight.cols(); ++m) {
      if (params.zero_fiber(s, m)) continue;
      const Complex g = std::polar(params.weight(s, m), params.global_phase(s, m));
      const double a = params.alpha(s, m) / 2.0;
      out.values()(s, m) = g * std::cos(a);
      out.values()(s + half, m) = g * std::sin(a) * std::polar(1.0, params.phi(s, m));
    }
  }
  return out;
}

}  // namespace modvar
