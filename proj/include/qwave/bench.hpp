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
 * Classical reference solvers, parameter sweeps, CSV rows and scaling fits.
 */

#include <iomanip>
#include <optional>
#include <ostream>

#include "qwave/transpiler.hpp"
#include "qwave/wave_solver.hpp"

namespace qwave {

enum class ClassicalMethod { Eigen, Leapfrog };

inline ClassicalMethod classical_method_from_name(std::string_view s) {
  if (s == "eigen") return ClassicalMethod::Eigen;
  if (s == "leapfrog") return ClassicalMethod::Leapfrog;
  throw std::invalid_argument("unknown classical method '" + std::string(s) + "'");
}

/**
 * Semi-discrete solution u(t) with u(0) = u0 and zero initial velocity.
 *
 * Eigen: cos(t sqrt(L~)) u0 from the eigendecomposition of L~ = L / dx^2.
 * Leapfrog: explicit central differences in time with step dt (rounded so
 * that an integer number of steps lands on t).
 */
inline Eigen::VectorXd classical_reference(const Discretisation& d, double t, const Eigen::VectorXd& u0,
                                           ClassicalMethod method = ClassicalMethod::Eigen, double dt = 1e-5) {
  if (u0.size() != static_cast<Eigen::Index>(d.n_c())) throw std::invalid_argument("u0 has the wrong length");
  const double dx = d.delta_x();
  RealMatrix lt = laplacian(d) / (dx * dx);
  if (method == ClassicalMethod::Eigen) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(lt);
    Eigen::VectorXd c = (es.eigenvalues().array().sqrt() * t).cos();
    return es.eigenvectors() * c.asDiagonal() * (es.eigenvectors().transpose() * u0);
  }
  if (!(dt > 0)) throw std::invalid_argument("leapfrog needs dt > 0");
  if (dt > dx) {
    throw std::invalid_argument("leapfrog step dt = " + std::to_string(dt) + " violates the CFL condition dt <= dx = " +
                                std::to_string(dx));
  }
  if (t == 0) return u0;
  const auto steps = static_cast<std::uint64_t>(std::ceil(std::abs(t) / dt - 1e-9));
  const double h = std::abs(t) / static_cast<double>(steps);
  Eigen::VectorXd prev = u0;
  Eigen::VectorXd cur = u0 - 0.5 * h * h * (lt * u0);
  for (std::uint64_t s = 1; s < steps; ++s) {
    Eigen::VectorXd next = 2 * cur - prev - h * h * (lt * cur);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

struct SweepRow {
  std::size_t n_d = 0;
  double t = 0;
  double epsilon = 0;
  std::size_t k = 1;
  std::uint64_t r = 0;
  std::size_t qubits_core = 0;
  std::size_t qubits_total = 0;
  std::uint64_t gates_native = 0;
  std::uint64_t gates_transpiled = 0;
  double est_time_s = 0;
  std::optional<double> max_error;
};

inline constexpr const char* kCsvHeader =
    "n_d,t,epsilon,k,r,qubits_core,qubits_total,gates_native,gates_transpiled,est_time_s,max_error";

inline void write_csv_row(std::ostream& out, const SweepRow& row) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << row.n_d << ',' << num(row.t) << ',' << num(row.epsilon) << ',' << row.k << ',' << row.r << ','
      << row.qubits_core << ',' << row.qubits_total << ',' << row.gates_native << ',' << row.gates_transpiled << ','
      << num(row.est_time_s) << ',' << (row.max_error ? num(*row.max_error) : std::string{}) << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) write_csv_row(out, r);
}

/// What a sweep point simulates: the wave solve (time rescaled by n_d - 1) or the bare Hamiltonian.
enum class SweepKind { Solve, Hamsim };

struct SweepPoint {
  std::size_t n_d = 32;
  double t = 1;
  double epsilon = 1e-5;
  std::size_t k = 1;
  Bound bound = Bound::Minimised;
  SweepKind kind = SweepKind::Solve;
  bool simulate = false;
};

/// Hamiltonian-simulation plan for the integer wave terms at time t (no rescaling).
inline ProductFormulaPlan hamsim_plan(const Discretisation& d, double t, double epsilon, std::size_t k, Bound bound,
                                      std::uint64_t explicit_r = 0) {
  ProductFormulaPlan p{k, t, epsilon, 1, bound};
  if (bound == Bound::Explicit) {
    if (explicit_r == 0) throw std::invalid_argument("explicit bound needs r >= 1");
    p.r = explicit_r;
  } else if (bound == Bound::Empiric) {
    auto terms = hamiltonian_terms(d);
    std::vector<RealMatrix> dense{terms.plus.matrix, terms.minus.matrix};
    p.r = repetitions(bound, k, t, epsilon, 2, 1.0, &dense);
  } else {
    p.r = repetitions(bound, k, t, epsilon, 2, 1.0);
  }
  return p;
}

/**
 * One sweep row. Construction only unless `simulate` is set.
 *
 * Simulated solve rows report the largest deviation from the eigen oracle;
 * simulated hamsim rows report the spectral error of the circuit on the row
 * register against the dense exponential.
 */
inline SweepRow sweep_row(const SweepPoint& p, const TimingModel& model = {}) {
  Discretisation d(p.n_d);
  SweepRow row;
  row.n_d = p.n_d;
  row.t = p.t;
  row.epsilon = p.epsilon;
  row.k = p.k;
  QubitCount qc = qubit_requirement(d);
  row.qubits_core = qc.core;
  row.qubits_total = qc.total;

  if (p.kind == SweepKind::Solve && p.simulate) {
    WaveProblem prob{d, p.t, p.epsilon, p.k, {}, {}};
    SolveOptions opt;
    opt.bound = p.bound;
    WaveSolution sol = solve(prob, opt);
    Eigen::VectorXd ref = classical_reference(d, p.t, default_initial_position(d));
    row.r = sol.diagnostics.r;
    row.gates_native = sol.diagnostics.gates_native;
    row.gates_transpiled = sol.diagnostics.gates_transpiled;
    row.est_time_s = estimate_time(*sol.circuit, model);
    row.max_error = (sol.u_t - ref).cwiseAbs().maxCoeff();
    return row;
  }

  ProductFormulaPlan plan = p.kind == SweepKind::Solve ? plan_for(d, p.t, p.epsilon, p.k, p.bound)
                                                       : hamsim_plan(d, p.t, p.epsilon, p.k, p.bound);
  Circuit c = wave_circuit(d, plan);
  row.r = plan.r;
  row.gates_native = gate_count(c, GateSet::Native);
  row.gates_transpiled = gate_count(c, GateSet::Transpiled);
  row.est_time_s = estimate_time(c, model);
  if (p.simulate) {
    auto terms = hamiltonian_terms(d);
    SimLayout L = layout_of(terms.plus);
    Matrix u = logical_unitary(c, L.rows());
    Matrix exact = expm_hermitian(RealMatrix(terms.plus.matrix + terms.minus.matrix), p.t);
    row.max_error = spectral_distance(u, exact);
  }
  return row;
}

struct ScalingFit {
  double c = 0;
  double p = 0;
  double residual = 0;  // RMS of the log-space residuals
};

/// Least squares for log y = log c + p log x.
inline ScalingFit fit_power(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs at least two points");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("fit needs positive data");
    a(i, 0) = 1;
    a(i, 1) = std::log(x[i]);
    b(i) = std::log(y[i]);
  }
  Eigen::VectorXd sol = a.colPivHouseholderQr().solve(b);
  Eigen::VectorXd res = a * sol - b;
  return {std::exp(sol(0)), sol(1), std::sqrt(res.squaredNorm() / static_cast<double>(n))};
}

/// Fit of gates = c N_d^p log2(N_d)^2 over sweep rows (native gate counts).
inline ScalingFit fit_scaling(const std::vector<SweepRow>& rows) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    double l = std::log2(static_cast<double>(r.n_d));
    x.push_back(static_cast<double>(r.n_d));
    y.push_back(static_cast<double>(r.gates_native) / (l * l));
  }
  return fit_power(x, y);
}

/// Pearson correlation, used to compare estimated time with gate counts.
inline double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  Eigen::Map<const Eigen::VectorXd> x(a.data(), static_cast<Eigen::Index>(a.size()));
  Eigen::Map<const Eigen::VectorXd> y(b.data(), static_cast<Eigen::Index>(b.size()));
  Eigen::VectorXd xc = x.array() - x.mean(), yc = y.array() - y.mean();
  return xc.dot(yc) / (xc.norm() * yc.norm());
}

}  // namespace qwave
