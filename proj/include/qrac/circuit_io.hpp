// Copyright 2026 The QRAC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Circuit text formats.
//
// Native (.qrac), one gate per line in application order:
//
//   # qrac-circuit 1
//   # n=3 k=1
//   qubits 2
//   RY 1 0.78539816339744828
//   CNOT 0 1
//   MCRY 1 0:0 1 1.2309594173407747
//
// MCRY lines give the control count, then control:polarity pairs, then the
// target and angle. Wires are 0-based, angles in radians.
//
// OpenQASM 2.0 (.qasm) uses qelib1 gates only; MCRY is expanded first.

#pragma once

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qrac/circuit.hpp"
#include "qrac/json_io.hpp"

namespace qrac {

inline const char* gate_mnemonic(GateKind k) {
  switch (k) {
    case GateKind::H:
      return "H";
    case GateKind::X:
      return "X";
    case GateKind::Z:
      return "Z";
    case GateKind::S:
      return "S";
    case GateKind::Sdg:
      return "SDG";
    case GateKind::RY:
      return "RY";
    case GateKind::RZ:
      return "RZ";
    case GateKind::CNOT:
      return "CNOT";
    case GateKind::MCRY:
      return "MCRY";
  }
  return "?";
}

inline std::string to_native(const Circuit& c) {
  std::string out = "# qrac-circuit 1\n# " + c.info.header() + "\nqubits " + std::to_string(c.num_qubits) + "\n";
  for (const auto& g : c.gates) {
    out += gate_mnemonic(g.kind);
    switch (g.kind) {
      case GateKind::CNOT:
        out += ' ' + std::to_string(g.controls.at(0)) + ' ' + std::to_string(g.target);
        break;
      case GateKind::MCRY:
        out += ' ' + std::to_string(g.controls.size());
        for (std::size_t i = 0; i < g.controls.size(); ++i)
          out += ' ' + std::to_string(g.controls[i]) + ':' + std::to_string(g.polarity[i]);
        out += ' ' + std::to_string(g.target) + ' ' + format_double(g.angle);
        break;
      case GateKind::RY:
      case GateKind::RZ:
        out += ' ' + std::to_string(g.target) + ' ' + format_double(g.angle);
        break;
      default:
        out += ' ' + std::to_string(g.target);
        break;
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, int line_no) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

inline void parse_header(std::string_view text, CircuitInfo& info) {
  for (auto tok : split_ws(text)) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) continue;
    const auto key = tok.substr(0, eq);
    const auto val = tok.substr(eq + 1);
    if (key == "n") info.n = parse_number<int>(val, 0);
    if (key == "k") info.k = parse_number<int>(val, 0);
    if (key == "y") info.encode_input = std::string(val);
  }
}

}  // namespace detail

inline Circuit parse_native(std::string_view text) {
  Circuit c;
  bool have_qubits = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line[0] == '#') {
      if (line.find("n=") != std::string_view::npos) detail::parse_header(line.substr(1), c.info);
      continue;
    }
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    auto need = [&](std::size_t count) {
      if (tok.size() != count) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " + std::to_string(count) +
                                    " fields for " + std::string(tok[0]));
      }
    };
    auto wire = [&](std::string_view s) { return detail::parse_number<int>(s, line_no); };
    auto angle = [&](std::string_view s) { return detail::parse_number<double>(s, line_no); };

    if (tok[0] == "qubits") {
      need(2);
      c.num_qubits = wire(tok[1]);
      have_qubits = true;
      continue;
    }
    if (!have_qubits) throw std::invalid_argument("line " + std::to_string(line_no) + ": gate before 'qubits' line");

    const auto m = tok[0];
    if (m == "H" || m == "X" || m == "Z" || m == "S" || m == "SDG") {
      need(2);
      const GateKind k = m == "H"   ? GateKind::H
                         : m == "X" ? GateKind::X
                         : m == "Z" ? GateKind::Z
                         : m == "S" ? GateKind::S
                                    : GateKind::Sdg;
      c.gates.push_back(Gate::single(k, wire(tok[1])));
    } else if (m == "RY" || m == "RZ") {
      need(3);
      c.gates.push_back(Gate::single(m == "RY" ? GateKind::RY : GateKind::RZ, wire(tok[1]), angle(tok[2])));
    } else if (m == "CNOT") {
      need(3);
      c.gates.push_back(Gate::cnot(wire(tok[1]), wire(tok[2])));
    } else if (m == "MCRY") {
      if (tok.size() < 2) throw std::invalid_argument("line " + std::to_string(line_no) + ": truncated MCRY");
      const int nc = wire(tok[1]);
      if (nc < 0) throw std::invalid_argument("line " + std::to_string(line_no) + ": negative control count");
      need(static_cast<std::size_t>(nc) + 4);
      std::vector<int> controls;
      std::vector<int> polarity;
      for (int i = 0; i < nc; ++i) {
        const auto cp = tok[2 + i];
        const auto colon = cp.find(':');
        if (colon == std::string_view::npos) {
          throw std::invalid_argument("line " + std::to_string(line_no) + ": control must be wire:polarity");
        }
        controls.push_back(wire(cp.substr(0, colon)));
        const int p = wire(cp.substr(colon + 1));
        if (p != 0 && p != 1) throw std::invalid_argument("line " + std::to_string(line_no) + ": polarity must be 0 or 1");
        polarity.push_back(p);
      }
      c.gates.push_back(Gate::mcry(std::move(controls), std::move(polarity), wire(tok[2 + nc]), angle(tok[3 + nc])));
    } else {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown gate '" + std::string(m) + "'");
    }
    const auto& g = c.gates.back();
    detail::check_wire(g.target, c.num_qubits);
    for (int w : g.controls) detail::check_wire(w, c.num_qubits);
  }
  if (!have_qubits) throw std::invalid_argument("missing 'qubits' line");
  return c;
}

/// Decoding circuits (info.k set) end with a full measurement.
inline std::string to_qasm(const Circuit& circuit) {
  const Circuit c = expand_mcry(circuit);
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n// " + c.info.header() + "\n";
  out += "qreg q[" + std::to_string(c.num_qubits) + "];\n";
  if (c.info.k) out += "creg c[" + std::to_string(c.num_qubits) + "];\n";
  auto q = [](int w) { return "q[" + std::to_string(w) + "]"; };
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::H:
        out += "h " + q(g.target);
        break;
      case GateKind::X:
        out += "x " + q(g.target);
        break;
      case GateKind::Z:
        out += "z " + q(g.target);
        break;
      case GateKind::S:
        out += "s " + q(g.target);
        break;
      case GateKind::Sdg:
        out += "sdg " + q(g.target);
        break;
      case GateKind::RY:
        out += "ry(" + format_double(g.angle) + ") " + q(g.target);
        break;
      case GateKind::RZ:
        out += "rz(" + format_double(g.angle) + ") " + q(g.target);
        break;
      case GateKind::CNOT:
        out += "cx " + q(g.controls.at(0)) + "," + q(g.target);
        break;
      case GateKind::MCRY:
        throw std::logic_error("to_qasm: MCRY survived expansion");
    }
    out += ";\n";
  }
  if (c.info.k) out += "measure q -> c;\n";
  return out;
}

}  // namespace qrac
