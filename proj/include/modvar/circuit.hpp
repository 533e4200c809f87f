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

#ifndef MODVAR_CIRCUIT_HPP
#define MODVAR_CIRCUIT_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace modvar {

enum class GateKind { X, Y, Z, H, RX, RY, RZ, RN, CNOT, CZ };

std::string_view gate_name(GateKind kind);

struct Gate {
  GateKind kind;
  std::vector<int> qubits;  // control first for CNOT
  double angle = 0.0;       // rotations only
  Eigen::Vector3d axis = Eigen::Vector3d::UnitX();  // RN only, unit length
  std::size_t line = 0;
};

/// Qubit circuit on one or two qubits.
struct CircuitIR {
  int qubit_count = 1;
  std::vector<Gate> gates;
};

class CircuitParseError : public std::runtime_error {
 public:
  CircuitParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Line-oriented text format:
///
///   # comment
///   qubits 2
///   H 0
///   RX 0 0.785398        (qubit, angle in radians)
///   RN 1 0 0 1 1.5       (qubit, nx ny nz, angle)
///   CNOT 0 1             (control, target)
///
/// The first non-comment line must be "qubits n" with n in {1, 2}.
CircuitIR parse_circuit(std::string_view text);

/// Canonical text form with 17 significant digits; parse_circuit(to_text(ir))
/// reproduces ir (RN axes up to one renormalization rounding).
std::string to_text(const CircuitIR& ir);

}  // namespace modvar

#endif  // MODVAR_CIRCUIT_HPP
