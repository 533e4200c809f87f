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

#ifndef MODVAR_GRID_HPP
#define MODVAR_GRID_HPP

#include <complex>
#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace modvar {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Largest total dimension accepted by make_grid unless overridden.
inline constexpr std::size_t kDefaultMaxDimension = 4096;

/// Discretized periodic phase space.
///
/// Position samples theta_j = j * 2pi / samples_per_period for j in [0, D),
/// D = samples_per_period * period_count. Momentum values are the centered
/// DFT frequencies k_u with step 1 / period_count. The flat position index
/// splits as j = s + samples_per_period * n, where s labels the modular
/// position theta_bar_s and n the integer part.
class GridSpec {
 public:
  GridSpec(std::size_t samples_per_period, std::size_t period_count);

  std::size_t samples_per_period() const { return samples_; }
  std::size_t period_count() const { return periods_; }
  std::size_t dimension() const { return samples_ * periods_; }
  std::size_t half_samples() const { return samples_ / 2; }
  /// Number of fibers: (samples/2) * periods.
  std::size_t fiber_count() const { return half_samples() * periods_; }

  double theta_step() const { return kTwoPi / static_cast<double>(samples_); }
  double k_step() const { return 1.0 / static_cast<double>(periods_); }

  double theta(std::size_t j) const { return static_cast<double>(j) * theta_step(); }
  double momentum(std::size_t u) const;

  double theta_bar(std::size_t s) const { return theta(s); }
  double k_bar(std::size_t m) const { return static_cast<double>(m) * k_step(); }

  std::size_t flat_index(std::size_t s, std::size_t n) const { return s + samples_ * n; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::size_t samples_;
  std::size_t periods_;
};

/// Validating constructor. Throws std::invalid_argument on odd or zero
/// samples ("sector pairing impossible") and std::length_error when the
/// dimension exceeds max_dimension ("grid too large").
GridSpec make_grid(std::size_t samples_per_period, std::size_t period_count,
                   std::size_t max_dimension = kDefaultMaxDimension);

struct ThetaDecomposition {
  std::int64_t integer_part;
  double modular_part;  // in [0, 2pi)
};

struct MomentumDecomposition {
  std::int64_t integer_part;
  double modular_part;  // in [0, 1)
};

/// theta = 2pi N + theta_bar with theta_bar in [0, 2pi).
ThetaDecomposition modular_decompose_theta(double theta);
/// k = M + k_bar with k_bar in [0, 1).
MomentumDecomposition modular_decompose_k(double k);

enum class Representation { position, momentum };

/// One continuous-variable mode sampled on a grid. In position
/// representation amplitudes()[j] = psi(theta_j) * sqrt(dtheta) so the
/// squared norm of the array is the state norm.
class CvState {
 public:
  CvState(GridSpec grid, Representation rep, CVector amplitudes);

  static CvState zero(const GridSpec& grid, Representation rep = Representation::position);
  static CvState position_basis(const GridSpec& grid, std::size_t j);

  const GridSpec& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  const CVector& amplitudes() const { return amps_; }
  CVector& amplitudes() { return amps_; }

  double norm() const { return amps_.norm(); }
  double squared_norm() const { return amps_.squaredNorm(); }

 private:
  GridSpec grid_;
  Representation rep_;
  CVector amps_;
};

/// Unitary DFT phi_u = D^{-1/2} sum_j psi_j exp(-i k_u theta_j).
/// Throws std::logic_error if the state is not in position representation.
CvState to_momentum(const CvState& state);
/// Inverse of to_momentum. Throws std::logic_error on representation mismatch.
CvState to_position(const CvState& state);

/// Converts if needed.
CvState in_position(const CvState& state);
CvState in_momentum(const CvState& state);

/// Raw DFT helpers on flat arrays of length D; these are the maps used by
/// to_momentum/to_position.
CVector dft_forward(const CVector& values);
CVector dft_inverse(const CVector& values);

}  // namespace modvar

#endif  // MODVAR_GRID_HPP
