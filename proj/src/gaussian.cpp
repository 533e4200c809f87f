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

#include "modvar/gaussian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace modvar {

GaussianGate::GaussianGate(std::vector<GaussianFactor> factors, Complex global_phase)
    : factors_(std::move(factors)), phase_(global_phase) {
  for (const auto& f : factors_) {
    if (!std::isfinite(f.parameter)) {
      throw std::invalid_argument("GaussianGate: non-finite factor parameter");
    }
  }
  if (std::abs(std::abs(phase_) - 1.0) > 1e-12) {
    throw std::invalid_argument("GaussianGate: global phase must have unit modulus");
  }
}

GaussianGate GaussianGate::literal_u1() {
  return GaussianGate({GaussianFactor::mom_shear(kPi / 2.0), GaussianFactor::shift(1.0),
                       GaussianFactor::mom_shear(-kPi / 2.0)});
}

GaussianGate GaussianGate::sheared_shift(double c, double a) {
  return GaussianGate({GaussianFactor::pos_shear(c), GaussianFactor::shift(a), GaussianFactor::pos_shear(-c)});
}

GaussianGate GaussianGate::then_after(const GaussianGate& other) const {
  std::vector<GaussianFactor> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return GaussianGate(std::move(all), phase_ * other.phase_);
}

GaussianGate GaussianGate::adjoint() const {
  std::vector<GaussianFactor> rev;
  rev.reserve(factors_.size());
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    rev.push_back({it->kind, -it->parameter});
  }
  return GaussianGate(std::move(rev), std::conj(phase_));
}

std::string GaussianGate::describe() const {
  std::ostringstream os;
  os.precision(6);
  if (phase_ != Complex(1.0, 0.0)) os << "(" << phase_.real() << "," << phase_.imag() << ")";
  for (const auto& f : factors_) {
    switch (f.kind) {
      case GaussianFactor::Kind::shift: os << "Shift"; break;
      case GaussianFactor::Kind::boost: os << "Boost"; break;
      case GaussianFactor::Kind::pos_shear: os << "PosShear"; break;
      case GaussianFactor::Kind::mom_shear: os << "MomShear"; break;
    }
    os << "(" << f.parameter << ")";
  }
  if (factors_.empty()) os << "I";
  return os.str();
}

Complex factor_phase(const GridSpec& grid, const GaussianFactor& factor, std::size_t idx) {
  double angle = 0.0;
  switch (factor.kind) {
    case GaussianFactor::Kind::shift: angle = factor.parameter * grid.momentum(idx); break;
    case GaussianFactor::Kind::mom_shear: {
      const double k = grid.momentum(idx);
      angle = factor.parameter * k * k;
      break;
    }
    case GaussianFactor::Kind::boost: angle = factor.parameter * grid.theta(idx); break;
    case GaussianFactor::Kind::pos_shear: {
      const double t = grid.theta(idx);
      angle = factor.parameter * t * t;
      break;
    }
  }
  return std::polar(1.0, angle);
}

CvState apply_gaussian_gate(const CvState& state, const GaussianGate& gate) {
  CvState current = state;
  const auto& grid = state.grid();
  const auto dim = grid.dimension();
  for (auto it = gate.factors().rbegin(); it != gate.factors().rend(); ++it) {
    current = it->momentum_diagonal() ? in_momentum(current) : in_position(current);
    auto& amps = current.amplitudes();
    for (std::size_t i = 0; i < dim; ++i) {
      amps[static_cast<Eigen::Index>(i)] *= factor_phase(grid, *it, i);
    }
  }
  current = in_position(current);
  current.amplitudes() *= gate.global_phase();
  return current;
}

}  // namespace modvar
