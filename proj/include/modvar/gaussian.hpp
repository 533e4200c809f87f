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

#ifndef MODVAR_GAUSSIAN_HPP
#define MODVAR_GAUSSIAN_HPP

#include <string>
#include <vector>

#include "modvar/grid.hpp"

namespace modvar {

/// Primitive Gaussian unitaries. Each is diagonal in either the position or
/// the momentum representation, so application is a pointwise phase.
struct GaussianFactor {
  enum class Kind {
    shift,      // exp(i a k): psi(theta) -> psi(theta + a)
    boost,      // exp(i b theta)
    pos_shear,  // exp(i c theta^2)
    mom_shear,  // exp(i d k^2)
  };
  Kind kind;
  double parameter;

  static GaussianFactor shift(double a) { return {Kind::shift, a}; }
  static GaussianFactor boost(double b) { return {Kind::boost, b}; }
  static GaussianFactor pos_shear(double c) { return {Kind::pos_shear, c}; }
  static GaussianFactor mom_shear(double d) { return {Kind::mom_shear, d}; }

  bool momentum_diagonal() const { return kind == Kind::shift || kind == Kind::mom_shear; }
};

/// Ordered product of primitive factors times a unit-modulus phase.
/// factors.front() is the leftmost operator, so application runs from
/// factors.back() to factors.front().
class GaussianGate {
 public:
  GaussianGate() = default;
  explicit GaussianGate(std::vector<GaussianFactor> factors, Complex global_phase = 1.0);

  static GaussianGate identity() { return GaussianGate(); }
  static GaussianGate shift(double a) { return GaussianGate({GaussianFactor::shift(a)}); }
  static GaussianGate boost(double b) { return GaussianGate({GaussianFactor::boost(b)}); }
  static GaussianGate pos_shear(double c) { return GaussianGate({GaussianFactor::pos_shear(c)}); }
  static GaussianGate mom_shear(double d) { return GaussianGate({GaussianFactor::mom_shear(d)}); }

  /// exp(i pi k^2/2) exp(i k) exp(-i pi k^2/2), as written.
  static GaussianGate literal_u1();
  /// exp(i c theta^2) exp(i a k) exp(-i c theta^2): a shift conjugated by a
  /// position shear, which (unlike the momentum-shear conjugation) does not
  /// collapse to the bare shift for c != 0.
  static GaussianGate sheared_shift(double c, double a);

  const std::vector<GaussianFactor>& factors() const { return factors_; }
  Complex global_phase() const { return phase_; }

  /// this * other (other acts first).
  GaussianGate then_after(const GaussianGate& other) const;
  GaussianGate adjoint() const;

  std::string describe() const;

 private:
  std::vector<GaussianFactor> factors_;
  Complex phase_{1.0, 0.0};
};

/// Applies the gate; the result is returned in position representation.
CvState apply_gaussian_gate(const CvState& state, const GaussianGate& gate);

/// Pointwise phase of a single factor at sample index idx, in whichever
/// representation the factor is diagonal.
Complex factor_phase(const GridSpec& grid, const GaussianFactor& factor, std::size_t idx);

}  // namespace modvar

#endif  // MODVAR_GAUSSIAN_HPP
