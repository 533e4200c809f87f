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

#include "modvar/codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace modvar {

namespace {

Envelope normalized(const GridSpec& grid, EnvelopeFamily family, Eigen::MatrixXcd values) {
  const double n = values.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::domain_error("degenerate envelope");
  }
  values /= n;
  return {grid, family, std::move(values)};
}

// Periodic sum of exp(-(x - center + w period)^2 / (4 width^2)).
double wrapped_gaussian(double x, double center, double width, double period) {
  const int images = static_cast<int>(std::ceil(8.0 * width / period)) + 1;
  double acc = 0.0;
  for (int w = -images; w <= images; ++w) {
    const double d = x - center + w * period;
    acc += std::exp(-d * d / (4.0 * width * width));
  }
  return acc;
}

}  // namespace

Envelope uniform_envelope(const GridSpec& grid) {
  return normalized(grid, EnvelopeFamily::uniform,
                    Eigen::MatrixXcd::Ones(static_cast<Eigen::Index>(grid.half_samples()),
                                           static_cast<Eigen::Index>(grid.period_count())));
}

Envelope gaussian_envelope(const GridSpec& grid, const GaussianEnvelopeParams& p) {
  if (!(p.theta_width > 0.0) || !(p.k_width > 0.0)) {
    throw std::invalid_argument("gaussian envelope widths must be positive");
  }
  const auto half = static_cast<Eigen::Index>(grid.half_samples());
  const auto nn = static_cast<Eigen::Index>(grid.period_count());
  Eigen::VectorXd along_theta(half);
  Eigen::VectorXd along_k(nn);
  for (Eigen::Index s = 0; s < half; ++s) {
    along_theta[s] = wrapped_gaussian(grid.theta_bar(static_cast<std::size_t>(s)), p.theta_center, p.theta_width, kPi);
  }
  for (Eigen::Index m = 0; m < nn; ++m) {
    along_k[m] = wrapped_gaussian(grid.k_bar(static_cast<std::size_t>(m)), p.k_center, p.k_width, 1.0);
  }
  const Eigen::MatrixXd table = along_theta * along_k.transpose();
  return normalized(grid, EnvelopeFamily::gaussian, table.cast<Complex>());
}

Envelope single_fiber_envelope(const GridSpec& grid, std::size_t s, std::size_t m) {
  if (s >= grid.half_samples() || m >= grid.period_count()) {
    throw std::out_of_range("single_fiber_envelope: fiber outside half-grid");
  }
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(grid.half_samples()),
                                              static_cast<Eigen::Index>(grid.period_count()));
  v(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(m)) = 1.0;
  return normalized(grid, EnvelopeFamily::single_fiber, std::move(v));
}

Envelope custom_envelope(const GridSpec& grid, const Eigen::MatrixXcd& values) {
  if (static_cast<std::size_t>(values.rows()) != grid.half_samples() ||
      static_cast<std::size_t>(values.cols()) != grid.period_count()) {
    throw std::invalid_argument("custom_envelope: table must be (samples/2) x periods");
  }
  return normalized(grid, EnvelopeFamily::custom, values);
}

CvState encode_logical(double chi, double phi, const Envelope& env) {
  const auto& grid = env.grid;
  const auto half = static_cast<Eigen::Index>(grid.half_samples());
  ModularField field = ModularField::zero(grid);
  const Complex c0 = std::cos(chi / 2.0);
  const Complex c1 = std::polar(std::sin(chi / 2.0), phi);
  field.values().topRows(half) = c0 * env.values;
  field.values().bottomRows(half) = c1 * env.values;
  return zak_inverse(field);
}

namespace {

LogicalReadout finish(CMatrix accum, double norm_sq) {
  if (!(norm_sq > 0.0)) throw std::domain_error("decode_logical: zero-norm input");
  accum /= norm_sq;
  accum = (0.5 * (accum + accum.adjoint())).eval();
  LogicalReadout r;
  r.input_norm = std::sqrt(norm_sq);
  r.trace = accum.trace().real();
  r.purity = (accum * accum).trace().real();
  r.density = std::move(accum);
  if (r.density.rows() == 2) {
    r.bloch = {2.0 * r.density(1, 0).real(), 2.0 * r.density(1, 0).imag(),
               (r.density(0, 0) - r.density(1, 1)).real()};
  }
  return r;
}

}  // namespace

LogicalReadout decode_logical(const CvState& state) {
  const ModularField field = zak_forward(state);
  const auto half = static_cast<Eigen::Index>(state.grid().half_samples());
  // Columns are fibers: row 0 base sector, row 1 shifted sector.
  CMatrix v(2, half * field.values().cols());
  for (Eigen::Index m = 0; m < field.values().cols(); ++m) {
    v.row(0).segment(m * half, half) = field.values().col(m).head(half).transpose();
    v.row(1).segment(m * half, half) = field.values().col(m).tail(half).transpose();
  }
  return finish(v * v.adjoint(), v.squaredNorm());
}

CMatrix two_mode_fiber_amplitudes(const TwoModeState& state) {
  const CMatrix g = zak_forward_two_mode(state);
  const GridSpec& ga = state.grid_a();
  const GridSpec& gb = state.grid_b();
  const std::size_t half_a = ga.half_samples();
  const std::size_t half_b = gb.half_samples();
  CMatrix v(4, static_cast<Eigen::Index>(ga.fiber_count() * gb.fiber_count()));
  Eigen::Index col = 0;
  for (std::size_t ma = 0; ma < ga.period_count(); ++ma)
    for (std::size_t sa = 0; sa < half_a; ++sa) {
      const auto ra0 = static_cast<Eigen::Index>(zak_flat_index(ga, sa, ma));
      const auto ra1 = static_cast<Eigen::Index>(zak_flat_index(ga, sa + half_a, ma));
      for (std::size_t mb = 0; mb < gb.period_count(); ++mb)
        for (std::size_t sb = 0; sb < half_b; ++sb) {
          const auto cb0 = static_cast<Eigen::Index>(zak_flat_index(gb, sb, mb));
          const auto cb1 = static_cast<Eigen::Index>(zak_flat_index(gb, sb + half_b, mb));
          v.col(col++) << g(ra0, cb0), g(ra0, cb1), g(ra1, cb0), g(ra1, cb1);
        }
    }
  return v;
}

LogicalReadout decode_logical(const TwoModeState& state) {
  const CMatrix v = two_mode_fiber_amplitudes(state);
  return finish(v * v.adjoint(), v.squaredNorm());
}

namespace {

CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -1e-10) throw std::invalid_argument("density matrix is not positive semidefinite");
  const Eigen::VectorXd root = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double logical_fidelity(const CMatrix& rho, const CMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.rows() != rho.cols() || sigma.rows() != sigma.cols()) {
    throw std::invalid_argument("logical_fidelity: dimension mismatch");
  }
  // Nuclear norm of sqrt(rho) sqrt(sigma): symmetric in its arguments and
  // better conditioned than the eigenvalues of sqrt(rho) sigma sqrt(rho).
  const CMatrix product = psd_sqrt(rho) * psd_sqrt(sigma);
  const double t = Eigen::JacobiSVD<CMatrix>(product).singularValues().sum();
  return std::clamp(t * t, 0.0, 1.0);
}

double entropy_bits(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()[i];
    if (p > 1e-300) h -= p * std::log2(p);
  }
  return h;
}

CMatrix partial_trace_second(const CMatrix& rho4) {
  CMatrix out = CMatrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < 2; ++k) out(a, b) += rho4(2 * a + k, 2 * b + k);
  return out;
}

CMatrix partial_trace_first(const CMatrix& rho4) {
  CMatrix out = CMatrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < 2; ++k) out(a, b) += rho4(2 * k + a, 2 * k + b);
  return out;
}

std::array<double, 4> bloch_readout(const CvState& state, const WeightSpec& weight) {
  if (!(state.grid() == weight.grid)) throw std::invalid_argument("bloch_readout: grid mismatch");
  const ModularField field = zak_forward(state);
  const auto& grid = state.grid();
  std::array<double, 4> out{0.0, 0.0, 0.0, 0.0};
  const std::array<Block2, 3> paulis{pauli_block(axis_x()), pauli_block(axis_y()), pauli_block(axis_z())};
  for (std::size_t m = 0; m < grid.period_count(); ++m) {
    for (std::size_t s = 0; s < grid.half_samples(); ++s) {
      const Eigen::Vector2cd v = fiber_view(field, s, m).amplitude;
      const double z = weight(s, m);
      for (int a = 0; a < 3; ++a) out[a] += z * v.dot(paulis[a] * v).real();
      out[3] += z * v.squaredNorm();
    }
  }
  return out;
}

}  // namespace modvar
