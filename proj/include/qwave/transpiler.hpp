// Copyright 2026 The qwave Authors
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

#pragma once

/**
 * Lowering to {U1, U2, U3, CNOT} and a sequential pulse-timing model.
 */

#include <fstream>
#include <optional>
#include <sstream>

#include "qwave/circuit.hpp"

namespace qwave {

/// Target-set sequence equivalent to one native gate (global phase aside).
inline std::vector<Gate> lower(const Gate& g) {
  using std::numbers::pi;
  const auto& q = g.qubits;
  const double th = g.params[0];
  switch (g.kind) {
    case GateKind::H:
      return {Gate::u2(q[0], 0, pi)};
    case GateKind::X:
      return {Gate::u3(q[0], pi, 0, pi)};
    case GateKind::RY:
      return {Gate::u3(q[0], 0, 0, th)};
    case GateKind::PH:
      return {Gate::u1(q[0], th)};
    case GateKind::CPH:
      return {Gate::u1(q[0], th / 2), Gate::cnot(q[0], q[1]), Gate::u1(q[1], -th / 2), Gate::cnot(q[0], q[1]),
              Gate::u1(q[1], th / 2)};
    case GateKind::CCNOT: {
      const Qubit a = q[0], b = q[1], t = q[2];
      auto T = [](Qubit x) { return Gate::u1(x, pi / 4); };
      auto Tdg = [](Qubit x) { return Gate::u1(x, -pi / 4); };
      return {Gate::u2(t, 0, pi), Gate::cnot(b, t), Tdg(t),         Gate::cnot(a, t), T(t),
              Gate::cnot(b, t),   Tdg(t),           Gate::cnot(a, t), T(b),          T(t),
              Gate::u2(t, 0, pi), Gate::cnot(a, b), T(a),             Tdg(b),        Gate::cnot(a, b)};
    }
    case GateKind::GlobalPhase:
      return {};
    case GateKind::CNOT:
    case GateKind::U1:
    case GateKind::U2:
    case GateKind::U3:
      return {g};
  }
  throw StructuralError("cannot lower unknown gate kind");
}

struct Transpiled {
  Circuit circuit;
  double global_phase = 0;  // dropped phase of the whole flattened circuit
};

namespace detail {

struct Lowering {
  std::unordered_map<const Circuit*, std::pair<Routine, double>> memo;

  std::pair<Routine, double> run(const Circuit& c) {
    if (auto it = memo.find(&c); it != memo.end()) return it->second;
    CircuitBuilder b(c.name(), c.arity(), c.key());
    double phase = 0;
    for (const auto& ins : c.body()) {
      if (const auto* g = std::get_if<Gate>(&ins)) {
        if (g->kind == GateKind::GlobalPhase) phase += g->params[0];
        for (const Gate& t : lower(*g)) b.add(t);
      } else {
        const auto& call = std::get<Call>(ins);
        auto [sub, sub_phase] = run(c.resolve(call));
        b.call(sub, call.qubits, call.inverted, call.repeat);
        phase += static_cast<double>(call.repeat) * (call.inverted ? -sub_phase : sub_phase);
      }
    }
    auto result = std::make_pair(b.build_routine(), phase);
    memo.emplace(&c, result);
    return result;
  }
};

}  // namespace detail

/// Lowers every routine, keeping the hierarchy and routine names.
inline Transpiled transpile(const Circuit& c) {
  detail::Lowering l;
  auto [r, phase] = l.run(c);
  return {*r, phase};
}

inline bool in_target_set(const Circuit& c) {
  auto h = gate_histogram(c);
  for (std::size_t i = 0; i < kGateKindCount; ++i) {
    auto k = static_cast<GateKind>(i);
    if (h[i] && !(k == GateKind::U1 || k == GateKind::U2 || k == GateKind::U3 || k == GateKind::CNOT)) return false;
  }
  return true;
}

/**
 * Pulse timing, all durations in nanoseconds.
 *
 * Defaults: U1 is a frame change (0), U2 one GD pulse plus buffer, U3 two,
 * CNOT one GF pulse plus buffer. Any of the four can be overridden.
 */
struct TimingModel {
  double gd_ns = 100;
  double gf_ns = 347;
  double buffer_ns = 20;
  std::optional<double> u1_ns, u2_ns, u3_ns, cnot_ns;

  double u1() const { return u1_ns.value_or(0); }
  double u2() const { return u2_ns.value_or(gd_ns + buffer_ns); }
  double u3() const { return u3_ns.value_or(2 * (gd_ns + buffer_ns)); }
  double cnot() const { return cnot_ns.value_or(gf_ns + buffer_ns); }

  /// Duration of a gate; native gates cost their lowering.
  double duration_ns(GateKind k) const {
    switch (k) {
      case GateKind::U1:
      case GateKind::PH:
        return u1();
      case GateKind::U2:
      case GateKind::H:
        return u2();
      case GateKind::U3:
      case GateKind::X:
      case GateKind::RY:
        return u3();
      case GateKind::CNOT:
        return cnot();
      case GateKind::CPH:
        return 3 * u1() + 2 * cnot();
      case GateKind::CCNOT:
        return 2 * u2() + 6 * cnot() + 7 * u1();
      case GateKind::GlobalPhase:
        return 0;
    }
    return 0;
  }

  void validate() const {
    for (double v : {gd_ns, gf_ns, buffer_ns, u1(), u2(), u3(), cnot()}) {
      if (!(v >= 0) || !std::isfinite(v)) throw std::invalid_argument("timing model durations must be >= 0");
    }
  }
};

/// Reads key = value lines (gd_ns, gf_ns, buffer_ns, u1_ns, u2_ns, u3_ns, cnot_ns); '#' starts a comment.
inline TimingModel parse_timing_model(std::istream& in) {
  TimingModel m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw std::invalid_argument("timing model line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    double v;
    try {
      std::size_t used = 0;
      v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw std::invalid_argument("timing model line " + std::to_string(lineno) + ": bad number '" + val + "'");
    }
    if (key == "gd_ns") m.gd_ns = v;
    else if (key == "gf_ns") m.gf_ns = v;
    else if (key == "buffer_ns") m.buffer_ns = v;
    else if (key == "u1_ns") m.u1_ns = v;
    else if (key == "u2_ns") m.u2_ns = v;
    else if (key == "u3_ns") m.u3_ns = v;
    else if (key == "cnot_ns") m.cnot_ns = v;
    else throw std::invalid_argument("timing model line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  m.validate();
  return m;
}

inline TimingModel load_timing_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open timing model " + path);
  return parse_timing_model(in);
}

/// Sequential execution time in seconds of the flattened circuit.
inline double estimate_time(const Circuit& c, const TimingModel& model = {}) {
  std::unordered_map<const Circuit*, double> memo;
  double ns = detail::accumulate_cost(c, memo, [&](const Gate& g) { return model.duration_ns(g.kind); });
  return ns * 1e-9;
}

}  // namespace qwave
