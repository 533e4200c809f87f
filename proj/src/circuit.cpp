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

#include "modvar/circuit.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace modvar {

namespace {

struct GateShape {
  GateKind kind;
  std::string_view name;
  int qubits;
  int reals;  // angles / axis components after the qubit indices
};

constexpr std::array<GateShape, 10> kGateTable{{
    {GateKind::X, "X", 1, 0},
    {GateKind::Y, "Y", 1, 0},
    {GateKind::Z, "Z", 1, 0},
    {GateKind::H, "H", 1, 0},
    {GateKind::RX, "RX", 1, 1},
    {GateKind::RY, "RY", 1, 1},
    {GateKind::RZ, "RZ", 1, 1},
    {GateKind::RN, "RN", 1, 4},
    {GateKind::CNOT, "CNOT", 2, 0},
    {GateKind::CZ, "CZ", 2, 0},
}};

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

int parse_index(const Token& t, std::size_t line) {
  int value = 0;
  const auto* end = t.text.data() + t.text.size();
  const auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
  if (ec != std::errc() || ptr != end || value < 0) {
    throw CircuitParseError(line, t.column, "invalid qubit index '" + std::string(t.text) + "'");
  }
  return value;
}

double parse_real(const Token& t, std::size_t line) {
  // std::from_chars for double is not available in every libstdc++ we target.
  const std::string s(t.text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty() || !std::isfinite(v)) {
    throw CircuitParseError(line, t.column, "invalid number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string_view gate_name(GateKind kind) {
  for (const auto& g : kGateTable)
    if (g.kind == kind) return g.name;
  return "?";
}

CircuitParseError::CircuitParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

CircuitIR parse_circuit(std::string_view text) {
  CircuitIR ir;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (!have_header) {
      if (upper(tokens[0].text) != "QUBITS") {
        throw CircuitParseError(line_no, tokens[0].column, "expected 'qubits n' header");
      }
      if (tokens.size() != 2) {
        throw CircuitParseError(line_no, tokens[0].column, "bad arity: 'qubits' takes one count");
      }
      const int n = parse_index(tokens[1], line_no);
      if (n < 1 || n > 2) {
        throw CircuitParseError(line_no, tokens[1].column, "qubit count must be 1 or 2");
      }
      ir.qubit_count = n;
      have_header = true;
      continue;
    }

    const std::string name = upper(tokens[0].text);
    const GateShape* shape = nullptr;
    for (const auto& g : kGateTable)
      if (g.name == name) shape = &g;
    if (shape == nullptr) {
      throw CircuitParseError(line_no, tokens[0].column, "unknown gate '" + std::string(tokens[0].text) + "'");
    }
    const std::size_t expected = 1 + static_cast<std::size_t>(shape->qubits + shape->reals);
    if (tokens.size() != expected) {
      const std::size_t col = tokens.size() > expected ? tokens[expected].column : tokens.back().column;
      throw CircuitParseError(line_no, col,
                              "bad arity: " + std::string(shape->name) + " takes " +
                                  std::to_string(expected - 1) + " operands");
    }
    Gate gate{shape->kind, {}, 0.0, Eigen::Vector3d::UnitX(), line_no};
    for (int q = 0; q < shape->qubits; ++q) {
      const Token& t = tokens[1 + static_cast<std::size_t>(q)];
      const int idx = parse_index(t, line_no);
      if (idx >= ir.qubit_count) throw CircuitParseError(line_no, t.column, "qubit out of range");
      gate.qubits.push_back(idx);
    }
    if (shape->qubits == 2 && gate.qubits[0] == gate.qubits[1]) {
      throw CircuitParseError(line_no, tokens[2].column, "bad arity: two-qubit gate needs distinct qubits");
    }
    const std::size_t first_real = 1 + static_cast<std::size_t>(shape->qubits);
    if (shape->kind == GateKind::RN) {
      Eigen::Vector3d axis;
      for (int c = 0; c < 3; ++c) axis[c] = parse_real(tokens[first_real + static_cast<std::size_t>(c)], line_no);
      if (!(axis.norm() > 0.0)) {
        throw CircuitParseError(line_no, tokens[first_real].column, "rotation axis must be nonzero");
      }
      gate.axis = axis.normalized();
      gate.angle = parse_real(tokens[first_real + 3], line_no);
    } else if (shape->reals == 1) {
      gate.angle = parse_real(tokens[first_real], line_no);
    }
    ir.gates.push_back(std::move(gate));
  }
  if (!have_header) throw CircuitParseError(line_no, 1, "missing 'qubits n' header");
  return ir;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_text(const CircuitIR& ir) {
  std::string out = "qubits " + std::to_string(ir.qubit_count) + "\n";
  for (const auto& g : ir.gates) {
    out += gate_name(g.kind);
    for (int q : g.qubits) out += " " + std::to_string(q);
    if (g.kind == GateKind::RN) {
      for (int c = 0; c < 3; ++c) out += " " + fmt17(g.axis[c]);
    }
    if (g.kind == GateKind::RX || g.kind == GateKind::RY || g.kind == GateKind::RZ || g.kind == GateKind::RN) {
      out += " " + fmt17(g.angle);
    }
    out += "\n";
  }
  return out;
}

}  // namespace modvar
