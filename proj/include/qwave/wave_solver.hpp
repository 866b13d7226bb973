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
 * 1-D wave equation with Dirichlet boundaries as Hamiltonian simulation.
 *
 * The grid has n_d points on [0, 1]; the n_c = n_d - 2 interior points are
 * the graph vertices, and the n_c + 1 edges include a self-loop at each end.
 * The state is (vertex block, edge block) and evolves under
 * H = [[0, B], [B^T, 0]] / dx, with the position read from the vertex block.
 */

#include <cmath>
#include <optional>

#include "qwave/wave_oracles.hpp"

namespace qwave {

struct Discretisation {
  std::size_t n_d = 3;

  explicit Discretisation(std::size_t nd) : n_d(nd) {
    if (nd < 3) throw std::invalid_argument("the grid needs n_d >= 3 points");
  }
  std::size_t n_c() const { return n_d - 2; }
  double delta_x() const { return 1.0 / static_cast<double>(n_d - 1); }
};

/// Dirichlet graph Laplacian of the interior points: tridiag(-1, 2, -1).
inline RealMatrix laplacian(const Discretisation& d) {
  const auto n = static_cast<Eigen::Index>(d.n_c());
  RealMatrix l = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    l(i, i) = 2;
    if (i + 1 < n) l(i, i + 1) = l(i + 1, i) = -1;
  }
  return l;
}

/// Vertex/edge incidence matrix, n_c x (n_c + 1); B B^T is the Laplacian.
inline RealMatrix incidence_b(const Discretisation& d) {
  const auto n = static_cast<Eigen::Index>(d.n_c());
  RealMatrix b = RealMatrix::Zero(n, n + 1);
  b(0, 0) = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i > 0) b(i, i) = -1;
    b(i, i + 1) = 1;
  }
  return b;
}

/// [[0, B], [B^T, 0]] on 2n_c + 1 rows, the integer form of the Hamiltonian.
inline RealMatrix block_hamiltonian(const Discretisation& d) {
  const auto n = static_cast<Eigen::Index>(d.n_c());
  RealMatrix b = incidence_b(d);
  RealMatrix h = RealMatrix::Zero(2 * n + 1, 2 * n + 1);
  h.topRightCorner(n, n + 1) = b;
  h.bottomLeftCorner(n + 1, n) = b.transpose();
  return h;
}

struct HamiltonianTerms {
  SparseTerm plus;
  SparseTerm minus;
  double rescale = 1;  // 1 / dx
};

inline HamiltonianTerms hamiltonian_terms(const Discretisation& d) {
  return {make_term(make_spec(d.n_c(), 1)), make_term(make_spec(d.n_c(), -1)), 1.0 / d.delta_x()};
}

/// Simulated time for physical time t: t (n_d - 1).
inline double rescaled_time(double t, const Discretisation& d) { return t * static_cast<double>(d.n_d - 1); }

struct QubitCount {
  std::size_t core = 0;
  std::size_t total = 0;
};

/**
 * Qubits needed for a grid.
 *
 * core is the bare index register, ceil(log2(2 n_d - 1)). total is the
 * simulation register actually built: row and column registers of
 * ceil(log2(2 n_c + 1)) qubits each, weight, sign, order, and a pool of
 * max(q, 3) clean ancillas (comparator flag plus q - 1 carries).
 */
inline QubitCount qubit_requirement(const Discretisation& d) {
  QubitCount c;
  c.core = static_cast<std::size_t>(std::bit_width(2 * d.n_d - 2));
  OracleSpec s = make_spec(d.n_c(), 1);
  c.total = 2 * s.q() + 3 + s.pool();
  return c;
}

/// Zero-boundary Gaussian bump centred at 0.5, width 0.1, unit norm.
inline Eigen::VectorXd default_initial_position(const Discretisation& d) {
  Eigen::VectorXd u(static_cast<Eigen::Index>(d.n_c()));
  for (std::size_t i = 0; i < d.n_c(); ++i) {
    double x = static_cast<double>(i + 1) * d.delta_x();
    u(static_cast<Eigen::Index>(i)) = std::exp(-std::pow((x - 0.5) / 0.1, 2) / 2);
  }
  return u / u.norm();
}

struct WaveProblem {
  Discretisation disc{8};
  double t = 0;
  double epsilon = 1e-3;
  std::size_t k = 1;
  Eigen::VectorXd u0;
  Eigen::VectorXd v0;  // empty or all zero
};

struct SolveOptions {
  Bound bound = Bound::Minimised;
  std::uint64_t explicit_r = 0;  // used with Bound::Explicit
  bool simulate = true;
  std::size_t qubit_cap = kDefaultQubitCap;
};

struct WaveDiagnostics {
  std::uint64_t r = 0;
  std::uint64_t gates_native = 0;
  std::uint64_t gates_transpiled = 0;
  QubitCount qubits;
  double simulated_time = 0;
  double norm_drift = 0;     // | ||psi_T|| - 1 |
  double leakage = 0;        // weight left outside the row register
  double vertex_imag = 0;    // largest |Im| over the vertex block (times scale)
};

struct WaveSolution {
  Eigen::VectorXd u_t;
  Eigen::VectorXd velocity;  // from the edge block
  double scale = 1;
  WaveDiagnostics diagnostics;
  std::optional<Circuit> circuit;
};

/// Plan for simulating the wave Hamiltonian for physical time t.
inline ProductFormulaPlan plan_for(const Discretisation& d, double t, double epsilon, std::size_t k, Bound bound,
                                   std::uint64_t explicit_r = 0) {
  ProductFormulaPlan p{k, rescaled_time(t, d), epsilon, 1, bound};
  if (bound == Bound::Explicit) {
    if (explicit_r == 0) throw std::invalid_argument("explicit bound needs r >= 1");
    p.r = explicit_r;
  } else if (bound == Bound::Empiric) {
    auto terms = hamiltonian_terms(d);
    std::vector<RealMatrix> dense{terms.plus.matrix, terms.minus.matrix};
    p.r = repetitions(bound, k, p.t, epsilon, 2, 1.0, &dense);
  } else {
    p.r = repetitions(bound, k, p.t, epsilon, 2, 1.0);
  }
  return p;
}

inline Circuit wave_circuit(const Discretisation& d, const ProductFormulaPlan& plan) {
  auto terms = hamiltonian_terms(d);
  return trotter_simulate({terms.plus, terms.minus}, plan);
}

/**
 * Builds the circuit and, if requested, runs it on the statevector.
 *
 * u0 / ||u0|| is written into the vertex rows directly; the rest of the
 * register starts in |0>.
 */
inline WaveSolution solve(const WaveProblem& problem, const SolveOptions& opt = {}) {
  const Discretisation& d = problem.disc;
  const auto n = static_cast<Eigen::Index>(d.n_c());
  Eigen::VectorXd u0 = problem.u0.size() ? problem.u0 : default_initial_position(d);
  if (u0.size() != n) throw std::invalid_argument("u0 must have n_c = " + std::to_string(n) + " samples");
  if (!u0.allFinite()) throw std::invalid_argument("u0 must be finite");
  if (problem.v0.size() && problem.v0.cwiseAbs().maxCoeff() != 0) {
    throw Unsupported("only zero initial velocity is supported");
  }
  const double scale = u0.norm();
  if (!(scale > 0)) throw std::invalid_argument("u0 must be non-zero");

  ProductFormulaPlan plan = plan_for(d, problem.t, problem.epsilon, problem.k, opt.bound, opt.explicit_r);
  Circuit circuit = wave_circuit(d, plan);

  WaveSolution sol;
  sol.scale = scale;
  auto& diag = sol.diagnostics;
  diag.r = plan.r;
  diag.simulated_time = plan.t;
  diag.qubits = qubit_requirement(d);
  diag.gates_native = gate_count(circuit, GateSet::Native);
  diag.gates_transpiled = gate_count(circuit, GateSet::Transpiled);

  if (opt.simulate) {
    if (circuit.arity() > opt.qubit_cap) {
      throw CapacityError("the n_d = " + std::to_string(d.n_d) + " solve needs " + std::to_string(circuit.arity()) +
                          " qubits, above the simulator cap of " + std::to_string(opt.qubit_cap));
    }
    Statevector psi(circuit.arity(), opt.qubit_cap);
    psi[0] = 0;
    for (Eigen::Index i = 0; i < n; ++i) psi[static_cast<std::size_t>(i)] = u0(i) / scale;
    psi.apply(circuit);

    const std::size_t rows = std::size_t{1} << make_spec(d.n_c(), 1).q();
    double outside = 0;
    for (std::size_t i = rows; i < psi.size(); ++i) outside += std::norm(psi[i]);
    diag.norm_drift = std::abs(psi.norm() - 1);
    diag.leakage = std::sqrt(outside);

    sol.u_t.resize(n);
    Eigen::VectorXcd edge(n + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex a = psi[static_cast<std::size_t>(i)];
      sol.u_t(i) = scale * a.real();
      diag.vertex_imag = std::max(diag.vertex_imag, scale * std::abs(a.imag()));
    }
    for (Eigen::Index e = 0; e <= n; ++e) edge(e) = psi[static_cast<std::size_t>(n + e)];
    Eigen::MatrixXcd bt = incidence_b(d).cast<Complex>() / d.delta_x();
    sol.velocity = (Complex(0, -1) * (bt * edge)).real() * scale;
  }
  sol.circuit = std::move(circuit);
  return sol;
}

/// Discrete energy u^T L~ u + |u'|^2 with L~ = L / dx^2.
inline double discrete_energy(const Discretisation& d, const Eigen::VectorXd& u, const Eigen::VectorXd& velocity) {
  RealMatrix lt = laplacian(d) / (d.delta_x() * d.delta_x());
  return u.dot(lt * u) + velocity.squaredNorm();
}

}  // namespace qwave
