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

#ifndef MODVAR_CODEC_HPP
#define MODVAR_CODEC_HPP

#include <array>
#include <string>

#include "modvar/gamma.hpp"
#include "modvar/two_mode.hpp"

namespace modvar {

/// Parameters of the separable, periodically wrapped gaussian envelope.
/// |f|^2 has standard deviation sigma_theta (sigma_k) along each axis
/// before wrapping; theta_bar wraps with period pi, k_bar with period 1.
struct GaussianEnvelopeParams {
  double theta_center = kPi / 2.0;
  double theta_width = kPi / 8.0;
  double k_center = 0.5;
  double k_width = 1.0 / 8.0;
};

enum class EnvelopeFamily { uniform, gaussian, single_fiber, custom };

/// Normalized complex weight f(s, m) on the half-grid.
struct Envelope {
  GridSpec grid;
  EnvelopeFamily family;
  Eigen::MatrixXcd values;
};

Envelope uniform_envelope(const GridSpec& grid);
/// Throws std::invalid_argument for non-positive widths and
/// std::domain_error("degenerate envelope") if the tabulation underflows.
Envelope gaussian_envelope(const GridSpec& grid, const GaussianEnvelopeParams& params = {});
Envelope single_fiber_envelope(const GridSpec& grid, std::size_t s, std::size_t m);
/// Normalizes an arbitrary table; throws "degenerate envelope" on zero norm.
Envelope custom_envelope(const GridSpec& grid, const Eigen::MatrixXcd& values);

/// cos(chi/2) |0_L> + exp(i phi) sin(chi/2) |1_L> with shared envelope.
CvState encode_logical(double chi, double phi, const Envelope& envelope);
inline CvState logical_zero(const Envelope& env) { return encode_logical(0.0, 0.0, env); }
inline CvState logical_one(const Envelope& env) { return encode_logical(kPi, 0.0, env); }

/// Logical density matrix obtained by tracing out the fiber index.
struct LogicalReadout {
  CMatrix density;      // 2^n x 2^n, unit trace
  double input_norm;    // norm of the state before renormalization
  double trace;         // trace of density (1 up to rounding)
  double purity;
  Eigen::Vector3d bloch = Eigen::Vector3d::Zero();  // only for one mode
};

/// Throws std::domain_error on zero-norm input.
LogicalReadout decode_logical(const CvState& state);
LogicalReadout decode_logical(const TwoModeState& state);

/// Fiber amplitudes of a two-mode state: column per fiber pair, rows ordered
/// |00>, |01>, |10>, |11> (mode a most significant).
CMatrix two_mode_fiber_amplitudes(const TwoModeState& state);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 in [0, 1].
/// Throws std::invalid_argument if either input has an eigenvalue below -1e-10.
double logical_fidelity(const CMatrix& rho, const CMatrix& sigma);

/// Von Neumann entropy in bits.
double entropy_bits(const CMatrix& rho);
/// Reduced one-qubit density matrix of a two-qubit density matrix.
CMatrix partial_trace_second(const CMatrix& rho4);
CMatrix partial_trace_first(const CMatrix& rho4);

/// (<Gamma_x>, <Gamma_y>, <Gamma_z>, <1_zeta>) computed fiberwise.
std::array<double, 4> bloch_readout(const CvState& state, const WeightSpec& weight);

}  // namespace modvar

#endif  // MODVAR_CODEC_HPP
