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

double sim_error(const SparseTerm& term, double t) {
  Circuit c = place(simulate_1sparse(term, t), term.width(), detail::span_reg(0, term.width()));
  double leak = 0;
  Matrix u = logical_unitary(c, layout_of(term).rows(), &leak);
  EXPECT_LT(leak, 1e-10);
  return spectral_distance(u, expm_hermitian(term.matrix, t));
}

TEST(SparseSim, OneSparseTableTermIsExact) {
  // pairs (0,3) negative and (1,2) positive
  SparseTerm term = table_term("pairs", 2, {3, 2, 1, 0}, {1, 1, 1, 1}, {1, 0, 0, 1});
  for (double t : {0.2, 1.0, -0.7}) EXPECT_LT(sim_error(term, t), 1e-10);
}

TEST(SparseSim, PartiallyEmptyRowsStayPut) {
  SparseTerm term = table_term("half", 2, {1, 0, 2, 3}, {1, 1, 0, 0}, {0, 0, 0, 0});
  EXPECT_LT(sim_error(term, 0.9), 1e-10);
}

TEST(SparseSim, DiagonalEntriesNeedTheDiagonalPath) {
  EXPECT_THROW(table_term("d", 2, {0, 2, 1, 3}, {1, 1, 1, 0}, {0, 0, 0, 0}), StructuralError);
  SparseTerm term = table_term("d", 2, {0, 2, 1, 3}, {1, 1, 1, 0}, {1, 0, 0, 0}, true);
  for (double t : {0.4, 2.0}) EXPECT_LT(sim_error(term, t), 1e-10);
}

TEST(SparseSim, ExpZfPhases) {
  const double t = 0.35;
  Matrix u = unitary_of(testing::routine_circuit(exp_zf(t)));
  // index z + 2 f
  EXPECT_NEAR(std::abs(u(0, 0) - 1.0), 0, 1e-12);
  EXPECT_NEAR(std::abs(u(1, 1) - 1.0), 0, 1e-12);
  EXPECT_NEAR(std::abs(u(2, 2) - std::polar(1.0, -t)), 0, 1e-12);
  EXPECT_NEAR(std::abs(u(3, 3) - std::polar(1.0, t)), 0, 1e-12);
}

TEST(SparseSim, IdentityMultipleIsAGlobalPhase) {
  Circuit c = simulate_identity_multiple(2.0, 0.3, 1);
  EXPECT_LT(spectral_distance(unitary_of(c), std::polar(1.0, -0.6) * Matrix::Identity(2, 2)), 1e-12);
  EXPECT_EQ(gate_count(simulate_identity_multiple(0, 1.0)), 0u);
}

TEST(SparseSim, SuzukiCoefficientsSumToLambdaPerTerm) {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t m : {2, 3}) {
      std::vector<double> sums(m, 0);
      auto s = suzuki_coefficients(k, m, 0.7);
      for (auto [j, c] : s) sums[j] += c;
      for (double v : sums) EXPECT_NEAR(v, 0.7, 1e-12);
      EXPECT_EQ(s.size(), 2 * m * static_cast<std::size_t>(std::pow(5, k - 1)));
    }
  }
  auto s = suzuki_coefficients(1, 2, 1.0);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0].first, 0u);
  EXPECT_EQ(s[1].first, 1u);
  EXPECT_EQ(s[2].first, 1u);
  EXPECT_EQ(s[3].first, 0u);
}

TEST(SparseSim, AnchorBounds) {
  EXPECT_EQ(analytic_bound(1, 1, 1e-5, 2, 1), 2409u);
  EXPECT_EQ(minimised_bound(1, 1, 1e-5, 2, 1), 1463u);
  EXPECT_EQ(minimised_bound(1, 0, 1e-5, 2, 1), 1u);
  EXPECT_THROW(minimised_bound(0, 1, 1e-5, 2, 1), std::invalid_argument);
  EXPECT_THROW(analytic_bound(1, 1, 0, 2, 1), std::invalid_argument);
}

TEST(SparseSim, MinimisedBoundIsTheSmallestPassingR) {
  for (double t : {0.5, 3.0, 40.0}) {
    for (std::size_t k : {1, 2}) {
      const double tau = trotter_tau(k, t, 2, 1), tk = 2.0 * double(k);
      auto err = [&](double r) { return std::pow(tau, tk + 1) / (3 * std::pow(r, tk)) * std::exp(tau / r); };
      auto r = minimised_bound(k, t, 1e-4, 2, 1);
      EXPECT_LT(err(double(r)), 1e-4);
      if (r > 1) {
        EXPECT_GE(err(double(r - 1)), 1e-4);
      }
    }
  }
}

TEST(SparseSim, BoundsScaleAsExpected) {
  // r ~ t^{1 + 1/2k} eps^{-1/2k}
  double rt = double(minimised_bound(1, 64, 1e-5, 2, 1)) / double(minimised_bound(1, 16, 1e-5, 2, 1));
  EXPECT_NEAR(std::log(rt) / std::log(4.0), 1.5, 0.05);
  double re = double(minimised_bound(1, 1, 1e-8, 2, 1)) / double(minimised_bound(1, 1, 1e-4, 2, 1));
  EXPECT_NEAR(std::log(re) / std::log(1e4), 0.5, 0.05);
}

TEST(SparseSim, EmpiricBoundMeetsItsTarget) {
  auto terms = hamiltonian_terms(Discretisation(4));
  std::vector<RealMatrix> dense{terms.plus.matrix, terms.minus.matrix};
  auto r = empiric_bound(dense, 1, 1.0, 1e-3);
  EXPECT_LE(trotter_error(dense, 1, 1.0, r), 1e-3);
  if (r > 1) {
    EXPECT_GT(trotter_error(dense, 1, 1.0, r - 1), 1e-3);
  }
  std::vector<RealMatrix> huge{RealMatrix::Zero(8192, 8192)};
  EXPECT_THROW(empiric_bound(huge, 1, 1.0, 1e-3), CapacityError);
}

TEST(SparseSim, TrotterCircuitStructure) {
  auto terms = hamiltonian_terms(Discretisation(5));
  ProductFormulaPlan plan{2, 1.0, 1e-3, 17, Bound::Explicit};
  Circuit c = trotter_simulate({terms.plus, terms.minus}, plan);
  EXPECT_EQ(c.name(), "hamiltonian_simulation");
  ASSERT_EQ(c.body().size(), 1u);
  const auto& call = std::get<Call>(c.body()[0]);
  EXPECT_EQ(call.repeat, 17u);
  const Circuit& formula = c.resolve(call);
  EXPECT_EQ(formula.name(), "trotter_suzuki_formula");
  EXPECT_EQ(formula.body().size(), suzuki_coefficients(2, 2, 1.0).size());
  EXPECT_THROW(trotter_simulate({}, plan), StructuralError);
  plan.r = 0;
  EXPECT_THROW(trotter_simulate({terms.plus}, plan), StructuralError);
}

TEST(SparseSim, TrotterCircuitMatchesDenseProductFormula) {
  auto terms = hamiltonian_terms(Discretisation(3));
  std::vector<RealMatrix> dense{terms.plus.matrix, terms.minus.matrix};
  for (std::size_t k : {1, 2}) {
    Circuit c = trotter_simulate({terms.plus, terms.minus}, {k, 1.3, 1e-3, 3, Bound::Explicit});
    Matrix u = logical_unitary(c, layout_of(terms.plus).rows());
    Matrix exact = expm_hermitian(RealMatrix(dense[0] + dense[1]), 1.3);
    EXPECT_NEAR(spectral_distance(u, exact), trotter_error(dense, k, 1.3, 3), 1e-9);
  }
}

TEST(SparseSim, BoundNamesRoundTrip) {
  for (Bound b : {Bound::Analytic, Bound::Minimised, Bound::Empiric, Bound::Explicit}) {
    EXPECT_EQ(bound_from_name(bound_name(b)), b);
  }
  EXPECT_THROW(bound_from_name("loose"), std::invalid_argument);
}

}  // namespace
}  // namespace qwave
