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
 * Exact simulation of 1-sparse signed terms and product formulas.
 *
 * A term is given by a combined oracle O acting on
 *
 *     row[q] col[q] weight sign pool[P]
 *
 * with |x>|0>|0>|0> -> |x>|m(x)>|v(x)>|s(x)>, pool clean. Its matrix has the
 * entry (-1)^s(x) v(x) at (x, m(x)). The simulation register appends an order
 * qubit (and, for terms with diagonal entries, a diag flag) before the pool:
 *
 *     row[q] col[q] weight sign order [diag] pool[P]
 */

#include <cstdio>
#include <limits>

#include "qwave/statevector.hpp"
#include "qwave/std_gates.hpp"

namespace qwave {

struct SparseTerm {
  std::string label;
  std::size_t q = 0;
  std::size_t pool = 0;
  Routine oracle;  // arity 2q + 2 + pool
  RealMatrix matrix;
  double norm = 0;
  bool diagonal = false;  // emit the self-loop path (rows with m(x) = x)

  std::size_t width() const { return 2 * q + 3 + (diagonal ? 1 : 0) + pool; }
};

/// Qubit offsets of the simulation register for a term shape.
struct SimLayout {
  std::size_t q = 0;
  std::size_t pool = 0;
  bool diagonal = false;

  Qubit row(std::size_t i) const { return static_cast<Qubit>(i); }
  Qubit col(std::size_t i) const { return static_cast<Qubit>(q + i); }
  Qubit weight() const { return static_cast<Qubit>(2 * q); }
  Qubit sign() const { return static_cast<Qubit>(2 * q + 1); }
  Qubit order() const { return static_cast<Qubit>(2 * q + 2); }
  Qubit diag() const { return static_cast<Qubit>(2 * q + 3); }
  Qubit pool_at(std::size_t i) const { return static_cast<Qubit>(2 * q + 3 + (diagonal ? 1 : 0) + i); }
  std::size_t width() const { return 2 * q + 3 + (diagonal ? 1 : 0) + pool; }

  Register rows() const { return detail::span_reg(row(0), q); }
  Register cols() const { return detail::span_reg(col(0), q); }
  Register pools() const { return detail::span_reg(q ? pool_at(0) : 0, pool); }

  // Qubit map for a call to the combined oracle.
  Register oracle_map() const {
    Register r = rows();
    for (Qubit c : cols()) r.push_back(c);
    r.push_back(weight());
    r.push_back(sign());
    for (Qubit p : pools()) r.push_back(p);
    return r;
  }
};

inline SimLayout layout_of(const SparseTerm& t) { return {t.q, t.pool, t.diagonal}; }

inline std::string angle_key(double a) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", a);
  return buf;
}

/// Largest singular value of a real dense matrix.
inline double real_spectral_norm(const RealMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  return svd.singularValues()(0);
}

/**
 * Oracle from explicit tables, for generic test terms.
 *
 * Each row x is matched by an equality test into pool[0] (pool[1] is the
 * test's ancilla), which then writes m, v, s with CNOTs. O(2^q q) gates.
 */
inline SparseTerm table_term(std::string label, std::size_t q, const std::vector<std::uint64_t>& m,
                             const std::vector<int>& v, const std::vector<int>& s, bool diagonal = false) {
  const std::size_t dim = std::size_t{1} << q;
  if (m.size() != dim || v.size() != dim || s.size() != dim) throw StructuralError("table_term: table size mismatch");
  const std::size_t pool = 2;
  const std::size_t arity = 2 * q + 2 + pool;
  CircuitBuilder b("oracle_" + label, arity, "table_oracle_" + label);
  const auto flag = static_cast<Qubit>(2 * q + 2);
  Register eq_map = detail::span_reg(0, q);
  eq_map.push_back(flag);
  eq_map.push_back(flag + 1);

  RealMatrix mat = RealMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  bool has_diag = false;
  for (std::uint64_t x = 0; x < dim; ++x) {
    if (m[x] >= dim) throw StructuralError("table_term: column out of range");
    std::vector<Qubit> targets;
    for (std::size_t i = 0; i < q; ++i) {
      if ((m[x] >> i) & 1) targets.push_back(static_cast<Qubit>(q + i));
    }
    if (v[x]) targets.push_back(static_cast<Qubit>(2 * q));
    if (s[x]) targets.push_back(static_cast<Qubit>(2 * q + 1));
    if (v[x]) {
      mat(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(m[x])) = s[x] ? -1.0 : 1.0;
      has_diag = has_diag || m[x] == x;
    }
    if (targets.empty()) continue;
    Routine eq = eq_const(q, x);
    b.call(eq, eq_map);
    for (Qubit t : targets) b.cnot(flag, t);
    b.call(eq, eq_map);
  }
  if (has_diag && !diagonal) throw StructuralError("table_term: diagonal entries need diagonal = true");
  SparseTerm term{std::move(label), q, pool, b.build_routine(), mat, 0, diagonal};
  term.norm = real_spectral_norm(mat);
  return term;
}

/// e^{-i alpha t} as a zero-qubit phase.
inline Circuit simulate_identity_multiple(double alpha, double t, std::size_t arity = 0) {
  CircuitBuilder b("identity_multiple", arity);
  if (alpha * t != 0) b.global_phase(-alpha * t);
  return b.build();
}

/// diag phase e^{-i t f (-1)^z} on |z>|f>. Layout: z, f.
inline Routine exp_zf(double t) {
  std::string key = "exp_zf_" + angle_key(t);
  return detail::cached(key, [=] {
    CircuitBuilder b("exp_zf", 2, key);
    b.ph(1, -t).cph(0, 1, 2 * t);
    return b.build_routine();
  });
}

/**
 * Maps each {x, m(x)} pair onto the order qubit's eigenbasis.
 *
 * order <- [row > col]; rows and columns are swapped under order so both
 * members of a pair share one (row, col) value; a Hadamard on order then
 * turns (|x> +- |m(x)>)/sqrt2 into order |0> / |1>. Diagonal rows skip the
 * Hadamard.
 */
inline Routine pair_diagonalise(const SimLayout& L) {
  std::string key = "pair_diag_" + std::to_string(L.q) + "_" + std::to_string(L.pool) + (L.diagonal ? "_d" : "");
  return detail::cached(key, [=] {
    CircuitBuilder b("pair_diagonalise", L.width(), key);
    Register cmp = L.rows();
    for (Qubit c : L.cols()) cmp.push_back(c);
    cmp.push_back(L.order());
    cmp.push_back(L.pool_at(0));
    b.call(register_compare(L.q), cmp);
    for (std::size_t i = 0; i < L.q; ++i) {
      b.cnot(L.col(i), L.row(i)).ccnot(L.order(), L.row(i), L.col(i)).cnot(L.col(i), L.row(i));
    }
    if (!L.diagonal) {
      b.h(L.order());
      return b.build_routine();
    }
    // diag <- [row == col], then H on order unless diag
    Register eq = L.cols();
    eq.push_back(L.diag());
    eq.push_back(L.pool_at(0));
    for (std::size_t i = 0; i < L.q; ++i) b.cnot(L.row(i), L.col(i));
    b.call(eq_const(L.q, 0), eq);
    for (std::size_t i = 0; i < L.q; ++i) b.cnot(L.row(i), L.col(i));
    b.x(L.diag());
    b.ry(L.order(), std::numbers::pi / 4).cnot(L.diag(), L.order()).ry(L.order(), -std::numbers::pi / 4);
    b.x(L.diag());
    for (std::size_t i = 0; i < L.q; ++i) b.cnot(L.row(i), L.col(i));
    b.call(eq_const(L.q, 0), eq);
    for (std::size_t i = 0; i < L.q; ++i) b.cnot(L.row(i), L.col(i));
    return b.build_routine();
  });
}

/// e^{-iHt} for a 1-sparse term: O, A, exp_zf on (order xor sign, weight), A^dagger, O^dagger.
inline Routine simulate_1sparse(const SparseTerm& term, double t) {
  if (!term.oracle || term.oracle->arity() != 2 * term.q + 2 + term.pool) {
    throw StructuralError("term '" + term.label + "' has an oracle of the wrong arity");
  }
  if (term.pool == 0) throw StructuralError("term '" + term.label + "' needs at least one pool qubit");
  const SimLayout L = layout_of(term);
  CircuitBuilder b("simulate_1sparse_" + term.label, L.width(),
                   "sim1_" + term.oracle->key() + (term.diagonal ? "_d" : "") + "_" + angle_key(t));
  Register all = detail::span_reg(0, L.width());
  Routine a = pair_diagonalise(L);
  b.call(term.oracle, L.oracle_map());
  b.call(a, all);
  b.cnot(L.sign(), L.order());
  b.call(exp_zf(t), {L.order(), L.weight()});
  b.cnot(L.sign(), L.order());
  b.call(a, all, true);
  b.call(term.oracle, L.oracle_map(), true);
  return b.build_routine();
}

/**
 * Exponent schedule of the order-2k symmetric product formula.
 *
 * Entry (j, c) stands for e^{c lambda H_j}; c already includes lambda.
 */
inline std::vector<std::pair<std::size_t, double>> suzuki_coefficients(std::size_t k, std::size_t m, double lambda) {
  if (k == 0 || m == 0) throw StructuralError("suzuki_coefficients needs k >= 1 and m >= 1");
  if (k == 1) {
    std::vector<std::pair<std::size_t, double>> s;
    for (std::size_t j = 0; j < m; ++j) s.emplace_back(j, lambda / 2);
    for (std::size_t j = m; j-- > 0;) s.emplace_back(j, lambda / 2);
    return s;
  }
  const double p = 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * static_cast<double>(k) - 1.0)));
  auto outer = suzuki_coefficients(k - 1, m, p * lambda);
  auto inner = suzuki_coefficients(k - 1, m, (1 - 4 * p) * lambda);
  std::vector<std::pair<std::size_t, double>> s;
  s.reserve(4 * outer.size() + inner.size());
  for (int i = 0; i < 2; ++i) s.insert(s.end(), outer.begin(), outer.end());
  s.insert(s.end(), inner.begin(), inner.end());
  for (int i = 0; i < 2; ++i) s.insert(s.end(), outer.begin(), outer.end());
  return s;
}

enum class Bound { Analytic, Minimised, Empiric, Explicit };

inline std::string_view bound_name(Bound b) {
  switch (b) {
    case Bound::Analytic:
      return "analytic";
    case Bound::Minimised:
      return "minimised";
    case Bound::Empiric:
      return "empiric";
    default:
      return "explicit";
  }
}

inline Bound bound_from_name(std::string_view s) {
  if (s == "analytic") return Bound::Analytic;
  if (s == "minimised" || s == "minimized") return Bound::Minimised;
  if (s == "empiric") return Bound::Empiric;
  if (s == "explicit") return Bound::Explicit;
  throw std::invalid_argument("unknown bound '" + std::string(s) + "'");
}

struct ProductFormulaPlan {
  std::size_t k = 1;
  double t = 0;
  double epsilon = 1e-3;
  std::uint64_t r = 1;
  Bound bound = Bound::Minimised;
};

inline double trotter_tau(std::size_t k, double t, std::size_t m, double lambda) {
  return 2.0 * static_cast<double>(m) * std::pow(5.0, static_cast<double>(k) - 1) * lambda * std::abs(t);
}

inline void check_bound_inputs(std::size_t k, double epsilon, std::size_t m, double lambda) {
  if (k == 0 || m == 0 || !(epsilon > 0) || !(lambda > 0)) {
    throw std::invalid_argument("repetition bounds need k >= 1, m >= 1, epsilon > 0 and Lambda > 0");
  }
}

inline std::uint64_t analytic_bound(std::size_t k, double t, double epsilon, std::size_t m, double lambda) {
  check_bound_inputs(k, epsilon, m, lambda);
  const double tau = trotter_tau(k, t, m, lambda);
  const double tk = 2.0 * static_cast<double>(k);
  double r = std::max(tau, std::pow(std::numbers::e * std::pow(tau, tk + 1) / (3 * epsilon), 1 / tk));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(r)));
}

/// Smallest r with tau^{2k+1} / (3 r^{2k}) e^{tau/r} < epsilon.
inline std::uint64_t minimised_bound(std::size_t k, double t, double epsilon, std::size_t m, double lambda) {
  check_bound_inputs(k, epsilon, m, lambda);
  const double tau = trotter_tau(k, t, m, lambda);
  if (tau == 0) return 1;
  const double tk = 2.0 * static_cast<double>(k);
  const double log_eps = std::log(epsilon);
  auto ok = [&](std::uint64_t r) {
    double lr = static_cast<double>(r);
    return (tk + 1) * std::log(tau) - std::log(3.0) - tk * std::log(lr) + tau / lr < log_eps;
  };
  std::uint64_t hi = 1;
  while (!ok(hi)) hi *= 2;
  std::uint64_t lo = hi / 2;  // ok(lo) is false unless hi == 1
  if (hi == 1) return 1;
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

inline constexpr std::size_t kEmpiricMaxDim = std::size_t{1} << 12;

/// ||S_2k(-it/r)^r - e^{-iHt}|| on dense term matrices.
inline double trotter_error(const std::vector<RealMatrix>& terms, std::size_t k, double t, std::uint64_t r) {
  if (terms.empty()) throw StructuralError("trotter_error needs at least one term");
  RealMatrix sum = RealMatrix::Zero(terms[0].rows(), terms[0].cols());
  for (const auto& h : terms) sum += h;
  Matrix exact = expm_hermitian(sum, t);
  const double dt = t / static_cast<double>(r);
  Matrix step = Matrix::Identity(sum.rows(), sum.cols());
  for (auto [j, c] : suzuki_coefficients(k, terms.size(), dt)) {
    step = expm_hermitian(terms[j], c) * step;
  }
  Matrix total = Matrix::Identity(sum.rows(), sum.cols());
  Matrix base = step;
  for (std::uint64_t e = r; e > 0; e >>= 1) {
    if (e & 1) total = base * total;
    if (e > 1) base = base * base;
  }
  return spectral_norm(total - exact);
}

/// Smallest r whose measured error is <= epsilon; linear scan from 1.
inline std::uint64_t empiric_bound(const std::vector<RealMatrix>& terms, std::size_t k, double t, double epsilon,
                                   std::uint64_t limit = 1u << 20) {
  if (terms.empty()) throw StructuralError("empiric bound needs at least one term");
  if (static_cast<std::size_t>(terms[0].rows()) > kEmpiricMaxDim) {
    throw CapacityError("empiric bound refused for dimension " + std::to_string(terms[0].rows()) + " > " +
                        std::to_string(kEmpiricMaxDim));
  }
  for (std::uint64_t r = 1; r <= limit; ++r) {
    if (trotter_error(terms, k, t, r) <= epsilon) return r;
  }
  throw std::runtime_error("empiric bound not reached below r = " + std::to_string(limit));
}

inline std::uint64_t repetitions(Bound bound, std::size_t k, double t, double epsilon, std::size_t m, double lambda,
                                 const std::vector<RealMatrix>* dense_terms = nullptr) {
  switch (bound) {
    case Bound::Analytic:
      return analytic_bound(k, t, epsilon, m, lambda);
    case Bound::Minimised:
      return minimised_bound(k, t, epsilon, m, lambda);
    case Bound::Empiric:
      if (!dense_terms) throw std::invalid_argument("empiric bound needs the dense term matrices");
      check_bound_inputs(k, epsilon, m, lambda);
      return empiric_bound(*dense_terms, k, t, epsilon);
    default:
      throw std::invalid_argument("explicit plans carry their own r");
  }
}

/**
 * r repetitions of the S_2k(-it/r) schedule.
 *
 * Top routine "hamiltonian_simulation" calls "trotter_suzuki_formula" once
 * with repeat = r; the formula body calls one simulate_1sparse routine per
 * schedule entry.
 */
inline Circuit trotter_simulate(const std::vector<SparseTerm>& terms, const ProductFormulaPlan& plan) {
  if (terms.empty()) throw StructuralError("trotter_simulate needs at least one term");
  if (plan.r == 0) throw StructuralError("trotter_simulate: r must be at least 1");
  const SimLayout L = layout_of(terms[0]);
  for (const auto& term : terms) {
    SimLayout o = layout_of(term);
    if (o.q != L.q || o.pool != L.pool || o.diagonal != L.diagonal) {
      throw StructuralError("trotter_simulate: terms do not share a register layout");
    }
  }
  const std::size_t w = L.width();
  Register all = detail::span_reg(0, w);
  std::string key = "tsf_k" + std::to_string(plan.k) + "_" + angle_key(plan.t) + "_r" + std::to_string(plan.r);
  for (const auto& term : terms) key += "_" + term.oracle->key();
  CircuitBuilder formula("trotter_suzuki_formula", w, key);
  std::map<std::pair<std::size_t, double>, Routine> steps;
  const double dt = plan.t / static_cast<double>(plan.r);
  for (auto [j, c] : suzuki_coefficients(plan.k, terms.size(), dt)) {
    auto& step = steps[{j, c}];
    if (!step) step = simulate_1sparse(terms[j], c);
    formula.call(step, all);
  }
  CircuitBuilder top("hamiltonian_simulation", w);
  top.call(formula.build_routine(), all, false, plan.r);
  return top.build();
}

}  // namespace qwave
