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
 * Hierarchical quantum circuit representation.
 *
 * A Circuit is an immutable named routine acting on `arity` local qubits. Its
 * body is an ordered list of gates and calls to other routines; callees live
 * in the circuit's own routine table, keyed by a unique id. The display name
 * (used by the profiler) may be shared by several definitions, e.g. every
 * `add_const` routine regardless of its constant.
 *
 * Registers are little-endian everywhere: qubit 0 of a register is its least
 * significant bit.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace qwave {

using Qubit = std::uint32_t;
using Register = std::vector<Qubit>;

/// Raised when a circuit or a constructor argument violates a structural rule.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a request exceeds a configured resource cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for inputs outside the supported problem class.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Native kinds first, then the hardware target family.
enum class GateKind : std::uint8_t {
  H,
  X,
  RY,
  PH,
  CPH,
  CNOT,
  CCNOT,
  GlobalPhase,
  U1,
  U2,
  U3,
};

inline constexpr std::size_t kGateKindCount = 11;

constexpr std::size_t qubit_count(GateKind k) {
  switch (k) {
    case GateKind::GlobalPhase:
      return 0;
    case GateKind::CPH:
    case GateKind::CNOT:
      return 2;
    case GateKind::CCNOT:
      return 3;
    default:
      return 1;
  }
}

constexpr std::size_t param_count(GateKind k) {
  switch (k) {
    case GateKind::RY:
    case GateKind::PH:
    case GateKind::CPH:
    case GateKind::GlobalPhase:
    case GateKind::U1:
      return 1;
    case GateKind::U2:
      return 2;
    case GateKind::U3:
      return 3;
    default:
      return 0;
  }
}

constexpr bool is_native(GateKind k) {
  return k <= GateKind::GlobalPhase;
}

constexpr bool is_target(GateKind k) {
  return k == GateKind::U1 || k == GateKind::U2 || k == GateKind::U3 || k == GateKind::CNOT ||
         k == GateKind::GlobalPhase;
}

inline std::string_view gate_name(GateKind k) {
  static constexpr std::array<std::string_view, kGateKindCount> names = {
      "H", "X", "RY", "PH", "CPH", "CNOT", "CCNOT", "GLOBAL_PHASE", "U1", "U2", "U3"};
  return names[static_cast<std::size_t>(k)];
}

inline GateKind gate_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kGateKindCount; ++i) {
    auto k = static_cast<GateKind>(i);
    if (gate_name(k) == name) return k;
  }
  throw StructuralError("unknown gate kind '" + std::string(name) + "'");
}

/**
 * One primitive gate.
 *
 * Qubit roles: controls come first, the target last (CNOT: c, t; CCNOT: c1, c2,
 * t; CPH: c, t). Parameter meaning per kind:
 *  - RY, PH, CPH, GLOBAL_PHASE, U1: one angle.
 *  - U2: (phi, lambda), i.e. U3 with theta = pi/2. H == U2(0, pi).
 *  - U3: (lambda, phi, theta) with matrix
 *    [[cos(t/2), -e^{i l} sin(t/2)], [e^{i p} sin(t/2), e^{i(l+p)} cos(t/2)]].
 */
struct Gate {
  GateKind kind = GateKind::H;
  std::array<Qubit, 3> qubits{};
  std::array<double, 3> params{};

  std::span<const Qubit> targets() const { return {qubits.data(), qubit_count(kind)}; }
  std::span<const double> parameters() const { return {params.data(), param_count(kind)}; }

  static Gate h(Qubit q) { return {GateKind::H, {q, 0, 0}, {}}; }
  static Gate x(Qubit q) { return {GateKind::X, {q, 0, 0}, {}}; }
  static Gate ry(Qubit q, double theta) { return {GateKind::RY, {q, 0, 0}, {theta, 0, 0}}; }
  static Gate ph(Qubit q, double theta) { return {GateKind::PH, {q, 0, 0}, {theta, 0, 0}}; }
  static Gate cph(Qubit c, Qubit t, double theta) { return {GateKind::CPH, {c, t, 0}, {theta, 0, 0}}; }
  static Gate cnot(Qubit c, Qubit t) { return {GateKind::CNOT, {c, t, 0}, {}}; }
  static Gate ccnot(Qubit c1, Qubit c2, Qubit t) { return {GateKind::CCNOT, {c1, c2, t}, {}}; }
  static Gate global_phase(double theta) { return {GateKind::GlobalPhase, {}, {theta, 0, 0}}; }
  static Gate u1(Qubit q, double lambda) { return {GateKind::U1, {q, 0, 0}, {lambda, 0, 0}}; }
  static Gate u2(Qubit q, double phi, double lambda) { return {GateKind::U2, {q, 0, 0}, {phi, lambda, 0}}; }
  static Gate u3(Qubit q, double lambda, double phi, double theta) {
    return {GateKind::U3, {q, 0, 0}, {lambda, phi, theta}};
  }

  friend bool operator==(const Gate& a, const Gate& b) {
    if (a.kind != b.kind) return false;
    return std::ranges::equal(a.targets(), b.targets()) && std::ranges::equal(a.parameters(), b.parameters());
  }
};

/// Adjoint of a single gate.
inline Gate inverse(const Gate& g) {
  Gate r = g;
  switch (g.kind) {
    case GateKind::RY:
    case GateKind::PH:
    case GateKind::CPH:
    case GateKind::GlobalPhase:
    case GateKind::U1:
      r.params[0] = -g.params[0];
      break;
    case GateKind::U2:
      r.params[0] = -g.params[1] + std::numbers::pi;
      r.params[1] = -g.params[0] + std::numbers::pi;
      break;
    case GateKind::U3:
      r.params = {-g.params[1], -g.params[0], -g.params[2]};
      break;
    default:
      break;
  }
  return r;
}

/// Invocation of a routine from the enclosing circuit's table.
struct Call {
  std::string routine;
  Register qubits;  // local qubit i of the callee maps to qubits[i]
  bool inverted = false;
  std::uint64_t repeat = 1;

  friend bool operator==(const Call&, const Call&) = default;
};

using Instruction = std::variant<Gate, Call>;

class Circuit;
using Routine = std::shared_ptr<const Circuit>;
using RoutineTable = std::map<std::string, Routine>;

/**
 * Immutable hierarchical circuit.
 *
 * Construction validates every instruction: qubit indices lie below `arity`,
 * no qubit repeats inside one instruction, every call resolves in `routines`
 * with matching arity, and all angles are finite. The call graph is acyclic
 * by construction since a routine can only reference already-built circuits.
 */
class Circuit {
 public:
  Circuit() = default;

  Circuit(std::string name, std::size_t arity, std::vector<Instruction> body = {}, RoutineTable routines = {},
          std::string key = {})
      : name_(std::move(name)),
        key_(key.empty() ? name_ : std::move(key)),
        arity_(arity),
        body_(std::move(body)),
        routines_(std::move(routines)) {
    validate();
  }

  const std::string& name() const { return name_; }
  const std::string& key() const { return key_; }
  std::size_t arity() const { return arity_; }
  const std::vector<Instruction>& body() const { return body_; }
  const RoutineTable& routines() const { return routines_; }

  const Circuit& resolve(const Call& call) const {
    auto it = routines_.find(call.routine);
    if (it == routines_.end() || !it->second) {
      throw StructuralError("routine '" + call.routine + "' is not defined in '" + key_ + "'");
    }
    return *it->second;
  }

  /// Copy with a new name and key, same body.
  Circuit renamed(std::string name, std::string key = {}) const {
    return Circuit(std::move(name), arity_, body_, routines_, std::move(key));
  }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    if (a.name_ != b.name_ || a.key_ != b.key_ || a.arity_ != b.arity_ || a.body_ != b.body_) return false;
    if (a.routines_.size() != b.routines_.size()) return false;
    for (auto ia = a.routines_.begin(), ib = b.routines_.begin(); ia != a.routines_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return false;
      if (ia->second != ib->second && !(*ia->second == *ib->second)) return false;
    }
    return true;
  }

 private:
  void check_qubits(std::span<const Qubit> qs, const char* what) const {
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (qs[i] >= arity_) {
        throw StructuralError(std::string(what) + " in '" + key_ + "' uses qubit " + std::to_string(qs[i]) +
                              " outside arity " + std::to_string(arity_));
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (qs[i] == qs[j]) {
          throw StructuralError(std::string(what) + " in '" + key_ + "' repeats qubit " + std::to_string(qs[i]));
        }
      }
    }
  }

  void validate() const {
    for (const auto& ins : body_) {
      if (const auto* g = std::get_if<Gate>(&ins)) {
        check_qubits(g->targets(), gate_name(g->kind).data());
        for (double p : g->parameters()) {
          if (!std::isfinite(p)) throw StructuralError("non-finite angle in '" + key_ + "'");
        }
      } else {
        const auto& c = std::get<Call>(ins);
        check_qubits(c.qubits, "call");
        const Circuit& callee = resolve(c);
        if (callee.arity() != c.qubits.size()) {
          throw StructuralError("call to '" + c.routine + "' passes " + std::to_string(c.qubits.size()) +
                                " qubits, routine arity is " + std::to_string(callee.arity()));
        }
        if (c.repeat == 0) throw StructuralError("call to '" + c.routine + "' with zero repetitions");
      }
    }
  }

  std::string name_;
  std::string key_;
  std::size_t arity_ = 0;
  std::vector<Instruction> body_;
  RoutineTable routines_;
};

/**
 * Mutable helper that assembles a Circuit.
 *
 * Registering two different definitions under one key is a structural error.
 */
class CircuitBuilder {
 public:
  CircuitBuilder(std::string name, std::size_t arity, std::string key = {})
      : name_(std::move(name)), key_(std::move(key)), arity_(arity) {}

  CircuitBuilder& add(Gate g) {
    body_.emplace_back(g);
    return *this;
  }

  CircuitBuilder& h(Qubit q) { return add(Gate::h(q)); }
  CircuitBuilder& x(Qubit q) { return add(Gate::x(q)); }
  CircuitBuilder& ry(Qubit q, double a) { return add(Gate::ry(q, a)); }
  CircuitBuilder& ph(Qubit q, double a) { return add(Gate::ph(q, a)); }
  CircuitBuilder& cph(Qubit c, Qubit t, double a) { return add(Gate::cph(c, t, a)); }
  CircuitBuilder& cnot(Qubit c, Qubit t) { return add(Gate::cnot(c, t)); }
  CircuitBuilder& ccnot(Qubit a, Qubit b, Qubit t) { return add(Gate::ccnot(a, b, t)); }
  CircuitBuilder& global_phase(double a) { return add(Gate::global_phase(a)); }

  CircuitBuilder& x_all(std::span<const Qubit> qs) {
    for (Qubit q : qs) x(q);
    return *this;
  }

  CircuitBuilder& call(const Routine& routine, Register qubits, bool inverted = false, std::uint64_t repeat = 1) {
    if (!routine) throw StructuralError("call to a null routine");
    define(routine);
    body_.emplace_back(Call{routine->key(), std::move(qubits), inverted, repeat});
    return *this;
  }

  void define(const Routine& routine) {
    auto [it, inserted] = routines_.emplace(routine->key(), routine);
    if (!inserted && it->second != routine && !(*it->second == *routine)) {
      throw StructuralError("conflicting definitions for routine '" + routine->key() + "'");
    }
  }

  std::size_t size() const { return body_.size(); }

  Circuit build() const { return Circuit(name_, arity_, body_, routines_, key_); }
  Routine build_routine() const { return std::make_shared<const Circuit>(build()); }

 private:
  std::string name_;
  std::string key_;
  std::size_t arity_;
  std::vector<Instruction> body_;
  RoutineTable routines_;
};

inline std::string toggle_dagger(const std::string& name) {
  return name.starts_with("D-") ? name.substr(2) : "D-" + name;
}

/**
 * Adjoint circuit: reversed body, inverted gates, calls flagged inverted.
 *
 * The name and key gain (or lose) a "D-" prefix, so invert is an involution.
 */
inline Circuit invert(const Circuit& c) {
  std::vector<Instruction> body;
  body.reserve(c.body().size());
  for (auto it = c.body().rbegin(); it != c.body().rend(); ++it) {
    if (const auto* g = std::get_if<Gate>(&*it)) {
      body.emplace_back(inverse(*g));
    } else {
      Call call = std::get<Call>(*it);
      call.inverted = !call.inverted;
      body.emplace_back(std::move(call));
    }
  }
  return Circuit(toggle_dagger(c.name()), c.arity(), std::move(body), c.routines(), toggle_dagger(c.key()));
}

/// Walks the gates of `c` in execution order with qubits mapped to the caller's frame.
template <class Visitor>
void for_each_gate(const Circuit& c, std::span<const Qubit> map, bool inverted, Visitor&& visit) {
  auto emit = [&](const Instruction& ins) {
    if (const auto* g = std::get_if<Gate>(&ins)) {
      Gate mapped = inverted ? inverse(*g) : *g;
      for (std::size_t i = 0; i < qubit_count(g->kind); ++i) mapped.qubits[i] = map[g->qubits[i]];
      visit(mapped);
    } else {
      const auto& call = std::get<Call>(ins);
      Register sub(call.qubits.size());
      for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = map[call.qubits[i]];
      const Circuit& callee = c.resolve(call);
      for (std::uint64_t r = 0; r < call.repeat; ++r) for_each_gate(callee, sub, inverted != call.inverted, visit);
    }
  };
  if (inverted) {
    for (auto it = c.body().rbegin(); it != c.body().rend(); ++it) emit(*it);
  } else {
    for (const auto& ins : c.body()) emit(ins);
  }
}

inline Register identity_map(std::size_t n) {
  Register r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<Qubit>(i);
  return r;
}

/// Equivalent call-free circuit. Size is the full expanded gate count.
inline Circuit flatten(const Circuit& c) {
  std::vector<Instruction> body;
  Register map = identity_map(c.arity());
  for_each_gate(c, map, false, [&](const Gate& g) { body.emplace_back(g); });
  return Circuit(c.name(), c.arity(), std::move(body), {}, c.key());
}

enum class GateSet { Native, Transpiled };

/// Number of target-set gates a native gate lowers to (see transpiler.hpp).
constexpr std::uint64_t transpiled_size(GateKind k) {
  switch (k) {
    case GateKind::GlobalPhase:
      return 0;
    case GateKind::CPH:
      return 5;
    case GateKind::CCNOT:
      return 15;
    default:
      return 1;
  }
}

namespace detail {

template <class Cost>
double accumulate_cost(const Circuit& c, std::unordered_map<const Circuit*, double>& memo, const Cost& cost) {
  if (auto it = memo.find(&c); it != memo.end()) return it->second;
  double total = 0;
  for (const auto& ins : c.body()) {
    if (const auto* g = std::get_if<Gate>(&ins)) {
      total += cost(*g);
    } else {
      const auto& call = std::get<Call>(ins);
      total += static_cast<double>(call.repeat) * accumulate_cost(c.resolve(call), memo, cost);
    }
  }
  memo.emplace(&c, total);
  return total;
}

inline std::uint64_t accumulate_count(const Circuit& c, std::unordered_map<const Circuit*, std::uint64_t>& memo,
                                      GateSet set) {
  if (auto it = memo.find(&c); it != memo.end()) return it->second;
  std::uint64_t total = 0;
  for (const auto& ins : c.body()) {
    if (const auto* g = std::get_if<Gate>(&ins)) {
      if (g->kind == GateKind::GlobalPhase) continue;
      total += (set == GateSet::Transpiled && is_native(g->kind) && g->kind != GateKind::CNOT)
                   ? transpiled_size(g->kind)
                   : 1;
    } else {
      const auto& call = std::get<Call>(ins);
      total += call.repeat * accumulate_count(c.resolve(call), memo, set);
    }
  }
  memo.emplace(&c, total);
  return total;
}

}  // namespace detail

/**
 * Gate total of the flattened circuit, computed over the hierarchy.
 *
 * GLOBAL_PHASE counts as zero. With GateSet::Transpiled each native gate counts
 * as the size of its lowering; target gates count as one.
 */
inline std::uint64_t gate_count(const Circuit& c, GateSet set = GateSet::Native) {
  std::unordered_map<const Circuit*, std::uint64_t> memo;
  return detail::accumulate_count(c, memo, set);
}

/// Per-kind histogram of the flattened circuit.
inline std::array<std::uint64_t, kGateKindCount> gate_histogram(const Circuit& c) {
  std::unordered_map<const Circuit*, std::array<std::uint64_t, kGateKindCount>> memo;
  auto rec = [&](auto&& self, const Circuit& cur) -> std::array<std::uint64_t, kGateKindCount> {
    if (auto it = memo.find(&cur); it != memo.end()) return it->second;
    std::array<std::uint64_t, kGateKindCount> h{};
    for (const auto& ins : cur.body()) {
      if (const auto* g = std::get_if<Gate>(&ins)) {
        ++h[static_cast<std::size_t>(g->kind)];
      } else {
        const auto& call = std::get<Call>(ins);
        auto sub = self(self, cur.resolve(call));
        for (std::size_t i = 0; i < kGateKindCount; ++i) h[i] += call.repeat * sub[i];
      }
    }
    memo.emplace(&cur, h);
    return h;
  };
  return rec(rec, c);
}

/// Builds the wrapper circuit `name` of width `arity` that calls `routine` on `qubits`.
inline Circuit place(const Routine& routine, std::size_t arity, Register qubits, std::string name = "main") {
  CircuitBuilder b(std::move(name), arity);
  b.call(routine, std::move(qubits));
  return b.build();
}

}  // namespace qwave
