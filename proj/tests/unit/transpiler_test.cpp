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

#include <gtest/gtest.h>

#include <numbers>
#include <sstream>

#include "../support.hpp"

namespace qwave {
namespace {

using std::numbers::pi;

TEST(Transpiler, EveryRuleIsExactUpToGlobalPhase) {
  std::vector<Gate> gates{Gate::h(1),           Gate::x(2),         Gate::ry(0, 1.234),  Gate::ph(1, -0.3),
                          Gate::cph(2, 0, 1.7), Gate::cnot(0, 2),   Gate::ccnot(1, 2, 0), Gate::u1(0, 2.0),
                          Gate::u2(1, 0.4, 0.5), Gate::u3(2, 0.1, 0.2, 0.3)};
  for (const Gate& g : gates) {
    CircuitBuilder a("g", 3), b("lowered", 3);
    a.add(g);
    for (const Gate& l : lower(g)) {
      EXPECT_TRUE(l.kind == GateKind::U1 || l.kind == GateKind::U2 || l.kind == GateKind::U3 ||
                  l.kind == GateKind::CNOT);
      b.add(l);
    }
    EXPECT_LT(spectral_distance(unitary_of(a.build()), unitary_of(b.build()), true), 1e-10) << gate_name(g.kind);
    EXPECT_LT(spectral_distance(unitary_of(a.build()), unitary_of(b.build())), 1e-10) << gate_name(g.kind);
  }
  EXPECT_TRUE(lower(Gate::global_phase(1.0)).empty());
}

TEST(Transpiler, LoweringSizesMatchTheCountModel) {
  for (std::size_t i = 0; i < kGateKindCount; ++i) {
    auto k = static_cast<GateKind>(i);
    Gate g{k, {0, 1, 2}, {0.3, 0.2, 0.1}};
    EXPECT_EQ(lower(g).size(), transpiled_size(k)) << gate_name(k);
  }
}

TEST(Transpiler, KeepsHierarchyAndTracksDroppedPhase) {
  CircuitBuilder inner("inner", 2);
  inner.h(0).global_phase(0.25).cph(0, 1, 0.5);
  CircuitBuilder top("top", 2);
  top.call(inner.build_routine(), {1, 0}, false, 3);
  top.call(inner.build_routine(), {0, 1}, true);
  Circuit c = top.build();
  Transpiled t = transpile(c);
  EXPECT_TRUE(in_target_set(t.circuit));
  EXPECT_FALSE(in_target_set(c));
  EXPECT_NEAR(t.global_phase, 0.5, 1e-15);
  EXPECT_EQ(t.circuit.routines().size(), 1u);
  EXPECT_EQ(gate_count(t.circuit), gate_count(c, GateSet::Transpiled));
  Matrix restored = std::polar(1.0, t.global_phase) * unitary_of(t.circuit);
  EXPECT_LT(spectral_distance(unitary_of(c), restored), 1e-10);
}

TEST(Transpiler, WholeCircuitEquivalence) {
  for (const Routine& r : {qft(3), csub_const(3, 5), eq_const(4, 6)}) {
    Circuit c = testing::routine_circuit(r);
    Transpiled t = transpile(c);
    EXPECT_LT(spectral_distance(unitary_of(c), unitary_of(t.circuit), true), 1e-10) << r->key();
  }
}

TEST(Timing, DefaultDurations) {
  TimingModel m;
  EXPECT_DOUBLE_EQ(m.duration_ns(GateKind::U1), 0);
  EXPECT_DOUBLE_EQ(m.duration_ns(GateKind::U2), 120);
  EXPECT_DOUBLE_EQ(m.duration_ns(GateKind::U3), 240);
  EXPECT_DOUBLE_EQ(m.duration_ns(GateKind::CNOT), 367);
  EXPECT_DOUBLE_EQ(m.duration_ns(GateKind::CPH), 2 * 367);
  EXPECT_DOUBLE_EQ(m.duration_ns(GateKind::CCNOT), 2 * 120 + 6 * 367);
}

TEST(Timing, NativeAndTranspiledEstimatesAgree) {
  Circuit c = testing::routine_circuit(cmp_lt_const(4, 7));
  TimingModel m;
  EXPECT_NEAR(estimate_time(c, m), estimate_time(transpile(c).circuit, m), 1e-18);
  auto terms = hamiltonian_terms(Discretisation(6));
  Circuit big = trotter_simulate({terms.plus, terms.minus}, {1, 1.0, 1e-3, 1000, Bound::Explicit});
  EXPECT_NEAR(estimate_time(big, m) / estimate_time(transpile(big).circuit, m), 1.0, 1e-12);
}

TEST(Timing, ParsesOverridesAndComments) {
  std::istringstream in("# custom device\ngd_ns = 50\n\ncnot_ns=400 # slow\nu1_ns = 5\n");
  TimingModel m = parse_timing_model(in);
  EXPECT_DOUBLE_EQ(m.u2(), 70);
  EXPECT_DOUBLE_EQ(m.u3(), 140);
  EXPECT_DOUBLE_EQ(m.cnot(), 400);
  EXPECT_DOUBLE_EQ(m.u1(), 5);
}

TEST(Timing, RejectsBadModels) {
  std::istringstream unknown("warp_ns = 3\n"), garbage("gd_ns = fast\n"), negative("gf_ns = -1\n"),
      noeq("gd_ns 100\n");
  EXPECT_THROW(parse_timing_model(unknown), std::invalid_argument);
  EXPECT_THROW(parse_timing_model(garbage), std::invalid_argument);
  EXPECT_THROW(parse_timing_model(negative), std::invalid_argument);
  EXPECT_THROW(parse_timing_model(noeq), std::invalid_argument);
  EXPECT_ANY_THROW(load_timing_model("/nonexistent/model.txt"));
}

}  // namespace
}  // namespace qwave
