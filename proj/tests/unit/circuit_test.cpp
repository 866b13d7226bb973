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

#include "../support.hpp"

namespace qwave {
namespace {

TEST(Gate, InverseIsAnInvolution) {
  std::vector<Gate> gates{Gate::h(0),         Gate::x(1),           Gate::ry(0, 0.4),  Gate::ph(0, -1.2),
                          Gate::cph(0, 1, 2), Gate::cnot(1, 0),     Gate::ccnot(0, 1, 2), Gate::global_phase(0.3),
                          Gate::u1(0, 0.5),   Gate::u2(0, 0.1, 0.7), Gate::u3(0, 0.2, -0.4, 1.9)};
  for (const Gate& g : gates) {
    Gate back = inverse(inverse(g));
    EXPECT_EQ(back.kind, g.kind);
    for (std::size_t i = 0; i < param_count(g.kind); ++i) EXPECT_NEAR(back.params[i], g.params[i], 1e-12);
  }
  EXPECT_EQ(inverse(Gate::ry(0, 0.4)), Gate::ry(0, -0.4));
  EXPECT_EQ(inverse(Gate::ccnot(0, 1, 2)), Gate::ccnot(0, 1, 2));
}

TEST(Gate, NamesRoundTrip) {
  for (std::size_t i = 0; i < kGateKindCount; ++i) {
    auto k = static_cast<GateKind>(i);
    EXPECT_EQ(gate_kind_from_name(gate_name(k)), k);
  }
  EXPECT_ANY_THROW(gate_kind_from_name("TOFFOLI"));
}

TEST(Circuit, RejectsQubitOutsideArity) {
  CircuitBuilder b("c", 2);
  b.cnot(0, 2);
  EXPECT_THROW(b.build(), StructuralError);
}

TEST(Circuit, RejectsRepeatedQubit) {
  CircuitBuilder b("c", 3);
  b.ccnot(0, 1, 1);
  EXPECT_THROW(b.build(), StructuralError);
}

TEST(Circuit, RejectsNonFiniteAngle) {
  CircuitBuilder b("c", 1);
  b.ph(0, std::nan(""));
  EXPECT_THROW(b.build(), StructuralError);
}

TEST(Circuit, RejectsArityMismatchAndZeroRepeat) {
  CircuitBuilder inner("inner", 2);
  inner.cnot(0, 1);
  Routine r = inner.build_routine();
  CircuitBuilder a("outer", 3);
  a.call(r, {0, 1, 2});
  EXPECT_THROW(a.build(), StructuralError);
  CircuitBuilder b("outer", 3);
  b.call(r, {0, 1}, false, 0);
  EXPECT_THROW(b.build(), StructuralError);
}

TEST(Circuit, RejectsConflictingRoutineDefinitions) {
  CircuitBuilder one("same", 1);
  one.h(0);
  CircuitBuilder two("same", 1);
  two.x(0);
  CircuitBuilder b("outer", 1);
  b.call(one.build_routine(), {0});
  EXPECT_THROW(b.call(two.build_routine(), {0}), StructuralError);
}

TEST(Circuit, UnresolvedCallThrows) {
  std::vector<Instruction> body{Call{"missing", {0}}};
  EXPECT_THROW(Circuit("c", 1, body), StructuralError);
}

TEST(Circuit, InvertIsAnInvolutionAndTogglesDaggerPrefix) {
  Circuit c = testing::profile_fixture();
  Circuit inv = invert(c);
  EXPECT_EQ(inv.name(), "D-main");
  EXPECT_EQ(invert(inv), c);
}

TEST(Circuit, FlattenExpandsRepeatsAndInversion) {
  CircuitBuilder inner("inner", 2);
  inner.ry(0, 0.3).cnot(0, 1);
  Routine r = inner.build_routine();
  CircuitBuilder b("top", 2);
  b.call(r, {1, 0}, true, 2);
  Circuit flat = flatten(b.build());
  ASSERT_EQ(flat.body().size(), 4u);
  EXPECT_EQ(std::get<Gate>(flat.body()[0]), Gate::cnot(1, 0));
  EXPECT_EQ(std::get<Gate>(flat.body()[1]), Gate::ry(1, -0.3));
}

TEST(Circuit, GateCountsMatchFlattenedCircuit) {
  Circuit c = testing::profile_fixture();
  Circuit flat = flatten(c);
  EXPECT_EQ(gate_count(c), flat.body().size());
  EXPECT_EQ(gate_count(c), 6u);
  auto h = gate_histogram(c);
  EXPECT_EQ(h[static_cast<std::size_t>(GateKind::H)], 3u);
  EXPECT_EQ(h[static_cast<std::size_t>(GateKind::CNOT)], 2u);
  EXPECT_EQ(h[static_cast<std::size_t>(GateKind::X)], 1u);
}

TEST(Circuit, TranspiledSizeCountsLoweredGates) {
  CircuitBuilder b("c", 3);
  b.h(0).cph(0, 1, 0.2).ccnot(0, 1, 2).global_phase(1.0);
  EXPECT_EQ(gate_count(b.build(), GateSet::Transpiled), 1u + 5u + 15u);
}

TEST(Circuit, PlaceWrapsRoutineOnGivenQubits) {
  CircuitBuilder inner("inner", 1);
  inner.x(0);
  Circuit c = place(inner.build_routine(), 3, {2});
  auto out = testing::run_basis(c, 0);
  ASSERT_TRUE(out);
  EXPECT_EQ(*out, 4u);
}

}  // namespace
}  // namespace qwave
