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

TEST(WaveSolver, DiscretisationBasics) {
  Discretisation d(8);
  EXPECT_EQ(d.n_c(), 6u);
  EXPECT_DOUBLE_EQ(d.delta_x(), 1.0 / 7);
  EXPECT_THROW(Discretisation(2), std::invalid_argument);
}

TEST(WaveSolver, IncidenceFactorsTheLaplacian) {
  for (std::size_t nd : {3, 4, 9, 20}) {
    Discretisation d(nd);
    RealMatrix b = incidence_b(d);
    EXPECT_EQ(RealMatrix(b * b.transpose()), laplacian(d));
  }
}

TEST(WaveSolver, QubitRequirement) {
  QubitCount c = qubit_requirement(Discretisation(8));
  EXPECT_EQ(c.core, 4u);
  EXPECT_EQ(c.total, 15u);
  QubitCount big = qubit_requirement(Discretisation(256));
  EXPECT_EQ(big.core, 9u);
  EXPECT_EQ(big.total, 30u);
}

TEST(WaveSolver, InitialConditionIsANormalisedBump) {
  Discretisation d(33);
  Eigen::VectorXd u = default_initial_position(d);
  EXPECT_NEAR(u.norm(), 1.0, 1e-14);
  Eigen::Index peak = 0;
  u.maxCoeff(&peak);
  EXPECT_EQ(peak, 15);  // x = 0.5
}

TEST(WaveSolver, SmallSolveMatchesEigenReference) {
  Discretisation d(5);
  WaveProblem prob{d, 0.3, 1e-4, 1, {}, {}};
  WaveSolution sol = solve(prob);
  Eigen::VectorXd ref = classical_reference(d, 0.3, default_initial_position(d));
  EXPECT_LT((sol.u_t - ref).cwiseAbs().maxCoeff(), 1e-4);
  EXPECT_LT(sol.diagnostics.norm_drift, 1e-10);
  EXPECT_LT(sol.diagnostics.leakage, 1e-8);
  EXPECT_LT(sol.diagnostics.vertex_imag, 1e-3);
  EXPECT_DOUBLE_EQ(sol.diagnostics.simulated_time, 0.3 * 4);
  ASSERT_TRUE(sol.circuit);
  EXPECT_EQ(sol.diagnostics.gates_native, gate_count(*sol.circuit));
}

TEST(WaveSolver, EnergyIsConserved) {
  Discretisation d(5);
  Eigen::VectorXd u0(3);
  u0 << 0.2, 1.0, -0.4;
  WaveProblem prob{d, 0.25, 1e-5, 2, u0, {}};
  WaveSolution sol = solve(prob);
  const double e0 = discrete_energy(d, u0, Eigen::VectorXd::Zero(3));
  EXPECT_NEAR(discrete_energy(d, sol.u_t, sol.velocity) / e0, 1.0, 1e-3);
  EXPECT_NEAR(sol.scale, u0.norm(), 1e-14);
}

TEST(WaveSolver, ZeroTimeReturnsTheInitialState) {
  Discretisation d(6);
  WaveProblem prob{d, 0.0, 1e-3, 1, {}, {}};
  WaveSolution sol = solve(prob);
  EXPECT_LT((sol.u_t - default_initial_position(d)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(WaveSolver, RejectsUnsupportedInputs) {
  Discretisation d(5);
  Eigen::VectorXd v0 = Eigen::VectorXd::Ones(3);
  EXPECT_THROW(solve({d, 1, 1e-3, 1, {}, v0}), Unsupported);
  EXPECT_THROW(solve({d, 1, 1e-3, 1, Eigen::VectorXd::Zero(3), {}}), std::invalid_argument);
  EXPECT_THROW(solve({d, 1, 1e-3, 1, Eigen::VectorXd::Ones(4), {}}), std::invalid_argument);
  SolveOptions opt;
  opt.qubit_cap = 10;
  EXPECT_THROW(solve({d, 1, 1e-3, 1, {}, {}}, opt), CapacityError);
}

TEST(WaveSolver, ConstructionOnlyDoesNotSimulate) {
  SolveOptions opt;
  opt.simulate = false;
  WaveSolution sol = solve({Discretisation(256), 1.0, 1e-5, 1, {}, {}}, opt);
  EXPECT_EQ(sol.u_t.size(), 0);
  EXPECT_EQ(sol.diagnostics.r, minimised_bound(1, 255.0, 1e-5, 2, 1));
  EXPECT_GT(sol.diagnostics.gates_transpiled, sol.diagnostics.gates_native);
}

TEST(WaveSolver, ExplicitRepetitionsAreHonoured) {
  ProductFormulaPlan p = plan_for(Discretisation(8), 0.5, 1e-3, 1, Bound::Explicit, 42);
  EXPECT_EQ(p.r, 42u);
  EXPECT_DOUBLE_EQ(p.t, 3.5);
  EXPECT_THROW(plan_for(Discretisation(8), 0.5, 1e-3, 1, Bound::Explicit), std::invalid_argument);
}

}  // namespace
}  // namespace qwave
