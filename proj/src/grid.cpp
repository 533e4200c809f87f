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

#include "modvar/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace modvar {

GridSpec::GridSpec(std::size_t samples_per_period, std::size_t period_count)
    : samples_(samples_per_period), periods_(period_count) {
  if (samples_ < 2 || samples_ % 2 != 0) {
    throw std::invalid_argument("sector pairing impossible: samples per period must be even and >= 2, got " +
                                std::to_string(samples_));
  }
  if (periods_ < 1) {
    throw std::invalid_argument("period count must be >= 1");
  }
}

double GridSpec::momentum(std::size_t u) const {
  const auto d = static_cast<std::int64_t>(dimension());
  const auto half = d / 2;
  const std::int64_t centered = ((static_cast<std::int64_t>(u) + half) % d) - half;
  return static_cast<double>(centered) * k_step();
}

GridSpec make_grid(std::size_t samples_per_period, std::size_t period_count, std::size_t max_dimension) {
  GridSpec grid(samples_per_period, period_count);
  if (grid.dimension() > max_dimension) {
    throw std::length_error("grid too large: dimension " + std::to_string(grid.dimension()) + " exceeds limit " +
                            std::to_string(max_dimension));
  }
  return grid;
}

ThetaDecomposition modular_decompose_theta(double theta) {
  if (!std::isfinite(theta)) {
    throw std::domain_error("modular_decompose_theta: non-finite input");
  }
  const double n = std::floor(theta / kTwoPi);
  double rest = theta - kTwoPi * n;
  auto integer = static_cast<std::int64_t>(n);
  // Rounding can land exactly on the upper edge or a hair below zero.
  if (rest >= kTwoPi) {
    rest -= kTwoPi;
    ++integer;
  } else if (rest < 0.0) {
    rest += kTwoPi;
    --integer;
  }
  if (rest >= kTwoPi) rest = 0.0;
  return {integer, rest};
}

MomentumDecomposition modular_decompose_k(double k) {
  if (!std::isfinite(k)) {
    throw std::domain_error("modular_decompose_k: non-finite input");
  }
  const double m = std::floor(k);
  double rest = k - m;
  auto integer = static_cast<std::int64_t>(m);
  if (rest >= 1.0) {
    rest -= 1.0;
    ++integer;
  }
  return {integer, rest};
}

CvState::CvState(GridSpec grid, Representation rep, CVector amplitudes)
    : grid_(grid), rep_(rep), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != grid_.dimension()) {
    throw std::invalid_argument("CvState: amplitude count does not match grid dimension");
  }
}

CvState CvState::zero(const GridSpec& grid, Representation rep) {
  return CvState(grid, rep, CVector::Zero(static_cast<Eigen::Index>(grid.dimension())));
}

CvState CvState::position_basis(const GridSpec& grid, std::size_t j) {
  if (j >= grid.dimension()) {
    throw std::out_of_range("position_basis: index outside grid");
  }
  CvState out = zero(grid);
  out.amplitudes()[static_cast<Eigen::Index>(j)] = 1.0;
  return out;
}

namespace {

std::vector<Complex> to_std(const CVector& v) { return {v.data(), v.data() + v.size()}; }

CVector from_std(const std::vector<Complex>& v) {
  return Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

CVector dft_forward(const CVector& values) {
  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.fwd(out, to_std(values));
  return from_std(out) / std::sqrt(static_cast<double>(values.size()));
}

CVector dft_inverse(const CVector& values) {
  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.inv(out, to_std(values));  // includes 1/D
  return from_std(out) * std::sqrt(static_cast<double>(values.size()));
}

CvState to_momentum(const CvState& state) {
  if (state.representation() != Representation::position) {
    throw std::logic_error("to_momentum: state is not in position representation");
  }
  return CvState(state.grid(), Representation::momentum, dft_forward(state.amplitudes()));
}

CvState to_position(const CvState& state) {
  if (state.representation() != Representation::momentum) {
    throw std::logic_error("to_position: state is not in momentum representation");
  }
  return CvState(state.grid(), Representation::position, dft_inverse(state.amplitudes()));
}

CvState in_position(const CvState& state) {
  return state.representation() == Representation::position ? state : to_position(state);
}

CvState in_momentum(const CvState& state) {
  return state.representation() == Representation::momentum ? state : to_momentum(state);
}

}  // namespace modvar
