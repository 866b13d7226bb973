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
 * Oracles (M, V, S) for the two 1-sparse halves of the wave Hamiltonian.
 *
 * Rows 0..N_c-1 index grid vertices, rows N_c..2N_c index the N_c + 1 edges
 * (edge 0 and edge N_c are the boundary self-loops). Term +1 links vertex i
 * with edge i + 1, term -1 links vertex i with edge i; term -1 carries the
 * negative signs except on the left self-loop.
 *
 * Each single oracle acts on row[q], out[w], pool[P] with w = q for M and 1
 * for V and S, and P = max(q, 3).
 */

#include <bit>

#include "qwave/sparse_sim.hpp"

namespace qwave {

struct OracleSpec {
  std::size_t n_c = 1;
  int which = 1;  // +1 or -1

  std::size_t q() const { return static_cast<std::size_t>(std::bit_width(2 * n_c)); }
  std::size_t pool() const { return std::max<std::size_t>(q(), 3); }
  std::uint64_t dim() const { return std::uint64_t{1} << q(); }
  std::string tag() const { return which > 0 ? "1" : "-1"; }
};

inline OracleSpec make_spec(std::size_t n_c, int which) {
  if (n_c == 0) throw StructuralError("oracle spec needs n_c >= 1");
  if (which != 1 && which != -1) throw StructuralError("oracle spec: which must be +1 or -1");
  return {n_c, which};
}

struct MVS {
  std::uint64_t m = 0;
  int v = 0;
  int s = 0;
  friend bool operator==(const MVS&, const MVS&) = default;
};

/// Reference values of the three oracle functions for row x.
inline MVS classical_m_v_s(const OracleSpec& spec, std::uint64_t x) {
  const std::uint64_t mask = spec.dim() - 1;
  const std::uint64_t n = spec.n_c;
  if (x > mask) throw std::out_of_range("row index outside the register");
  MVS r;
  if (spec.which > 0) {
    r.m = (x < n + 1 ? x + (n + 1) : x - (n + 1)) & mask;
    r.v = x < 2 * n + 1 && x != n;
    r.s = 0;
  } else {
    r.m = (x < n ? x + n : x - n) & mask;
    r.v = x < 2 * n;
    r.s = !(x == 0 || x == n);
  }
  return r;
}

/// Dense term matrix from the classical functions.
inline RealMatrix classical_matrix(const OracleSpec& spec) {
  const auto dim = static_cast<Eigen::Index>(spec.dim());
  RealMatrix h = RealMatrix::Zero(dim, dim);
  for (std::uint64_t x = 0; x < spec.dim(); ++x) {
    MVS f = classical_m_v_s(spec, x);
    if (f.v) h(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(f.m)) = f.s ? -1.0 : 1.0;
  }
  return h;
}

namespace detail {

inline std::string spec_key(const char* what, const OracleSpec& s) {
  return std::string(what) + s.tag() + "_nc" + std::to_string(s.n_c);
}

// row[q], then the cmp flag at pool[0] and its ancillas at pool[1..q-1]
inline Register cmp_map(std::size_t q, Qubit flag, Qubit anc0) {
  Register r = span_reg(0, q);
  r.push_back(flag);
  for (std::size_t i = 0; i + 1 < q; ++i) r.push_back(anc0 + static_cast<Qubit>(i));
  return r;
}

inline Register eq_map(std::size_t q, Qubit flag, Qubit anc) {
  Register r = span_reg(0, q);
  r.push_back(flag);
  r.push_back(anc);
  return r;
}

}  // namespace detail

/**
 * M oracle: out <- x + off if x < off, else x - off (mod 2^q).
 *
 * off = N_c + 1 for term +1 and N_c for term -1. The comparison flag is
 * uncomputed by repeating the comparison on the untouched row register.
 */
inline Routine build_m(const OracleSpec& spec) {
  const std::size_t q = spec.q(), P = spec.pool();
  const std::uint64_t off = spec.which > 0 ? spec.n_c + 1 : spec.n_c;
  std::string key = detail::spec_key("M", spec);
  return detail::cached(key, [=] {
    CircuitBuilder b("M" + spec.tag(), 2 * q + P, key);
    const auto out0 = static_cast<Qubit>(q);
    const auto flag = static_cast<Qubit>(2 * q);
    for (std::size_t i = 0; i < q; ++i) b.cnot(static_cast<Qubit>(i), out0 + static_cast<Qubit>(i));
    Register cmp = detail::cmp_map(q, flag, flag + 1);
    Register out = detail::span_reg(out0, q);
    out.push_back(flag);
    b.call(cmp_lt_const(q, off), cmp);
    b.call(cadd_const(q, off), out);
    b.x(flag);
    b.call(csub_const(q, off), out);
    b.x(flag);
    b.call(cmp_lt_const(q, off), cmp, true);
    return b.build_routine();
  });
}

/// V oracle: weight <- [x < 2N_c + 1 and x != N_c] (term +1) or [x < 2N_c] (term -1).
inline Routine build_v(const OracleSpec& spec) {
  const std::size_t q = spec.q(), P = spec.pool();
  std::string key = detail::spec_key("V", spec);
  return detail::cached(key, [=] {
    CircuitBuilder b("V" + spec.tag(), q + 1 + P, key);
    const auto weight = static_cast<Qubit>(q);
    const auto pool0 = static_cast<Qubit>(q + 1);
    if (spec.which > 0) {
      b.call(cmp_lt_const(q, 2 * spec.n_c + 1), detail::cmp_map(q, weight, pool0));
      b.call(eq_const(q, spec.n_c), detail::eq_map(q, weight, pool0));
    } else {
      b.call(cmp_lt_const(q, 2 * spec.n_c), detail::cmp_map(q, weight, pool0));
    }
    return b.build_routine();
  });
}

/// S oracle: empty for term +1; sign <- not(x == 0 or x == N_c) for term -1.
inline Routine build_s(const OracleSpec& spec) {
  const std::size_t q = spec.q(), P = spec.pool();
  std::string key = detail::spec_key("S", spec);
  return detail::cached(key, [=] {
    CircuitBuilder b("S" + spec.tag(), q + 1 + P, key);
    if (spec.which > 0) return b.build_routine();
    const auto sign = static_cast<Qubit>(q);
    const auto p0 = static_cast<Qubit>(q + 1);
    Routine is_zero = eq_const(q, 0);
    Routine is_mid = eq_const(q, spec.n_c);
    b.call(is_zero, detail::eq_map(q, p0, p0 + 2));
    b.call(is_mid, detail::eq_map(q, p0 + 1, p0 + 2));
    b.call(or_gate(), {p0, p0 + 1, sign});
    b.x(sign);
    b.call(is_mid, detail::eq_map(q, p0 + 1, p0 + 2), true);
    b.call(is_zero, detail::eq_map(q, p0, p0 + 2), true);
    return b.build_routine();
  });
}

/// Combined oracle on row[q], col[q], weight, sign, pool[P].
inline Routine build_oracle(const OracleSpec& spec) {
  const std::size_t q = spec.q(), P = spec.pool();
  std::string key = detail::spec_key("O", spec);
  return detail::cached(key, [=] {
    CircuitBuilder b("oracle_H" + spec.tag(), 2 * q + 2 + P, key);
    Register rows = detail::span_reg(0, q);
    Register pool = detail::span_reg(static_cast<Qubit>(2 * q + 2), P);
    auto join = [](Register a, const Register& tail) {
      a.insert(a.end(), tail.begin(), tail.end());
      return a;
    };
    b.call(build_m(spec), join(join(rows, detail::span_reg(static_cast<Qubit>(q), q)), pool));
    b.call(build_v(spec), join(join(rows, {static_cast<Qubit>(2 * q)}), pool));
    b.call(build_s(spec), join(join(rows, {static_cast<Qubit>(2 * q + 1)}), pool));
    return b.build_routine();
  });
}

/// Wave term +1 or -1 as a simulable sparse term.
inline SparseTerm make_term(const OracleSpec& spec) {
  SparseTerm t{"H" + spec.tag(), spec.q(), spec.pool(), build_oracle(spec), classical_matrix(spec), 0, false};
  t.norm = real_spectral_norm(t.matrix);
  return t;
}

/**
 * Runs a single-output oracle on basis row x with out and pool clean.
 *
 * Returns the out register value; `clean` is cleared if the row register or
 * the pool do not come back as they went in.
 */
inline std::uint64_t evaluate_oracle(const Circuit& oracle, std::size_t q, std::size_t out_width, std::uint64_t x,
                                     bool* clean = nullptr) {
  auto s = Statevector::basis(oracle.arity(), x);
  s.apply(oracle);
  std::size_t best = 0;
  double best_p = -1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double p = std::norm(s[i]);
    if (p > best_p) {
      best_p = p;
      best = i;
    }
  }
  const std::uint64_t row_mask = (std::uint64_t{1} << q) - 1;
  const std::uint64_t out = (best >> q) & ((std::uint64_t{1} << out_width) - 1);
  if (clean) {
    bool pool_clear = (best >> (q + out_width)) == 0;
    *clean = best_p > 1 - 1e-12 && (best & row_mask) == x && pool_clear;
  }
  return out;
}

/// Dense matrix of a term read back from its M, V, S circuits on the statevector.
inline RealMatrix reconstruct_matrix(const OracleSpec& spec, bool* clean = nullptr) {
  const std::size_t q = spec.q();
  Circuit m = *build_m(spec), v = *build_v(spec), s = *build_s(spec);
  const auto dim = static_cast<Eigen::Index>(spec.dim());
  RealMatrix h = RealMatrix::Zero(dim, dim);
  bool all_clean = true;
  for (std::uint64_t x = 0; x < spec.dim(); ++x) {
    bool c1 = true, c2 = true, c3 = true;
    std::uint64_t col = evaluate_oracle(m, q, q, x, &c1);
    std::uint64_t w = evaluate_oracle(v, q, 1, x, &c2);
    std::uint64_t sg = evaluate_oracle(s, q, 1, x, &c3);
    all_clean = all_clean && c1 && c2 && c3;
    if (w) h(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(col)) = sg ? -1.0 : 1.0;
  }
  if (clean) *clean = all_clean;
  return h;
}

}  // namespace qwave
