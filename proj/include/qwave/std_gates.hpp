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
 * Logic and constant-arithmetic routines over the native gate set.
 *
 * Every constructor returns a shared routine with a fixed local layout
 * (documented per function). Use place() or CircuitBuilder::call() to map it
 * onto concrete qubits. Routines are cached by key, so repeated requests
 * return the same object.
 */

#include <functional>
#include <mutex>

#include "qwave/circuit.hpp"

namespace qwave {

namespace detail {

inline Routine cached(const std::string& key, const std::function<Routine()>& make) {
  static std::mutex mu;
  static std::unordered_map<std::string, Routine> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Routine r = make();
  std::lock_guard lock(mu);
  return cache.emplace(key, r).first->second;
}

inline Register span_reg(Qubit first, std::size_t n) {
  Register r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = first + static_cast<Qubit>(i);
  return r;
}

inline void check_width(std::uint64_t value, std::size_t width, const char* what) {
  if (width < 64 && value >= (std::uint64_t{1} << width)) {
    throw StructuralError(std::string(what) + ": constant " + std::to_string(value) + " does not fit in " +
                          std::to_string(width) + " bits");
  }
}

// Toffoli ladder flipping `target` on the AND of `c`, borrowing `dirty`
// (any state, restored). Needs c.size() - 2 dirty qubits for c.size() >= 3.
inline void vchain(CircuitBuilder& b, const Register& c, Qubit target, const Register& dirty) {
  const std::size_t m = c.size();
  if (m == 1) {
    b.cnot(c[0], target);
    return;
  }
  if (m == 2) {
    b.ccnot(c[0], c[1], target);
    return;
  }
  auto ladder = [&] {
    for (std::size_t i = m - 2; i >= 2; --i) b.ccnot(c[i], dirty[i - 2], dirty[i - 1]);
    b.ccnot(c[0], c[1], dirty[0]);
    for (std::size_t i = 2; i <= m - 2; ++i) b.ccnot(c[i], dirty[i - 2], dirty[i - 1]);
  };
  for (int rep = 0; rep < 2; ++rep) {
    b.ccnot(c[m - 1], dirty[m - 3], target);
    ladder();
  }
}

}  // namespace detail

/// OR into a clean output. Layout: a, b, out.
inline Routine or_gate() {
  return detail::cached("or", [] {
    CircuitBuilder b("or", 3);
    b.x(0).x(1).ccnot(0, 1, 2).x(2).x(0).x(1);
    return b.build_routine();
  });
}

/**
 * Multi-controlled X with one ancilla.
 *
 * Layout: controls[k], target, ancilla. For k >= 3 the controls are split in
 * two halves and each half runs a Toffoli ladder borrowing the other half as
 * scratch, so the ancilla may hold any value and is returned unchanged.
 * O(k) Toffoli gates.
 */
inline Routine mcx(std::size_t k) {
  if (k == 0) throw StructuralError("mcx needs at least one control");
  return detail::cached("mcx_" + std::to_string(k), [k] {
    CircuitBuilder b("mcx", k + 2, "mcx_" + std::to_string(k));
    const Qubit target = static_cast<Qubit>(k);
    const Qubit anc = static_cast<Qubit>(k + 1);
    if (k <= 2) {
      detail::vchain(b, detail::span_reg(0, k), target, {});
      return b.build_routine();
    }
    const std::size_t m1 = (k + 1) / 2;
    Register c1 = detail::span_reg(0, m1);
    Register c2 = detail::span_reg(static_cast<Qubit>(m1), k - m1);
    c2.push_back(anc);

    Register free1 = detail::span_reg(static_cast<Qubit>(m1), k - m1);
    free1.push_back(target);
    Register free2 = c1;
    for (int rep = 0; rep < 2; ++rep) {
      detail::vchain(b, c1, anc, free1);
      detail::vchain(b, c2, target, free2);
    }
    return b.build_routine();
  });
}

/// flag ^= [x == c]. Layout: x[n], flag, ancilla.
inline Routine eq_const(std::size_t n, std::uint64_t c) {
  detail::check_width(c, n, "eq_const");
  std::string key = "eq_" + std::to_string(n) + "_" + std::to_string(c);
  return detail::cached(key, [=] {
    CircuitBuilder b("eq", n + 2, key);
    Register zeros;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((c >> i) & 1)) zeros.push_back(static_cast<Qubit>(i));
    }
    b.x_all(zeros);
    b.call(mcx(n), detail::span_reg(0, n + 2));
    b.x_all(zeros);
    return b.build_routine();
  });
}

/**
 * Quantum Fourier transform, |x> -> sum_y w^{xy} |y> / sqrt(2^n).
 *
 * Without swaps the output register is bit-reversed; the constant adders use
 * that variant since the reversal cancels against the inverse transform.
 */
inline Routine qft(std::size_t n, bool swaps = true) {
  if (n == 0) throw StructuralError("qft needs at least one qubit");
  std::string key = (swaps ? "qft_" : "qft_ns_") + std::to_string(n);
  return detail::cached(key, [=] {
    CircuitBuilder b("qft", n, key);
    for (std::size_t j = n; j-- > 0;) {
      b.h(static_cast<Qubit>(j));
      for (std::size_t k = j; k-- > 0;) {
        b.cph(static_cast<Qubit>(k), static_cast<Qubit>(j), std::numbers::pi / static_cast<double>(1ULL << (j - k)));
      }
    }
    if (swaps) {
      for (std::size_t i = 0; i < n / 2; ++i) {
        auto lo = static_cast<Qubit>(i), hi = static_cast<Qubit>(n - 1 - i);
        b.cnot(lo, hi).cnot(hi, lo).cnot(lo, hi);
      }
    }
    return b.build_routine();
  });
}

namespace detail {

inline Routine adder(std::size_t n, std::uint64_t value, bool controlled) {
  check_width(value, n, "add_const");
  std::string key = std::string(controlled ? "cadd_" : "add_") + std::to_string(n) + "_" + std::to_string(value);
  return cached(key, [=] {
    CircuitBuilder b("add_const", n + (controlled ? 1 : 0), key);
    Register x = span_reg(0, n);
    b.call(qft(n, false), x);
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t mod = std::uint64_t{1} << (j + 1);
      std::uint64_t part = value & (mod - 1);
      if (part == 0) continue;
      double angle = 2 * std::numbers::pi * static_cast<double>(part) / static_cast<double>(mod);
      if (controlled) {
        b.cph(static_cast<Qubit>(n), static_cast<Qubit>(j), angle);
      } else {
        b.ph(static_cast<Qubit>(j), angle);
      }
    }
    b.call(qft(n, false), x, true);
    return b.build_routine();
  });
}

inline Routine subtractor(std::size_t n, std::uint64_t value, bool controlled) {
  check_width(value, n, "sub_const");
  std::string key = std::string(controlled ? "csub_" : "sub_") + std::to_string(n) + "_" + std::to_string(value);
  return cached(key, [=] {
    std::size_t arity = n + (controlled ? 1 : 0);
    CircuitBuilder b("sub_const", arity, key);
    Register x = span_reg(0, n);
    b.x_all(x);
    b.call(adder(n, value, controlled), span_reg(0, arity));
    b.x_all(x);
    return b.build_routine();
  });
}

}  // namespace detail

/// x <- (x + b) mod 2^n. Layout: x[n].
inline Routine add_const(std::size_t n, std::uint64_t b) { return detail::adder(n, b, false); }
/// Controlled variant. Layout: x[n], control.
inline Routine cadd_const(std::size_t n, std::uint64_t b) { return detail::adder(n, b, true); }
/// x <- (x - b) mod 2^n, as complement / add / complement. Layout: x[n].
inline Routine sub_const(std::size_t n, std::uint64_t b) { return detail::subtractor(n, b, false); }
/// Controlled variant. Layout: x[n], control.
inline Routine csub_const(std::size_t n, std::uint64_t b) { return detail::subtractor(n, b, true); }

/**
 * flag ^= [x < c] for a constant 0 <= c <= 2^n.
 *
 * Layout: x[n], flag, ancillas[n - 1] (clean, restored). The flag is the
 * complement of the carry out of x + (2^n - c); carries that are constantly
 * zero get no qubit work at all.
 */
inline Routine cmp_lt_const(std::size_t n, std::uint64_t c) {
  if (n == 0 || n >= 63) throw StructuralError("cmp_lt_const: unsupported width");
  const std::uint64_t full = std::uint64_t{1} << n;
  if (c > full) {
    throw StructuralError("cmp_lt_const: constant " + std::to_string(c) + " exceeds 2^" + std::to_string(n));
  }
  std::string key = "cmp_" + std::to_string(n) + "_" + std::to_string(c);
  return detail::cached(key, [=] {
    const std::size_t arity = 2 * n;
    const auto flag = static_cast<Qubit>(n);
    auto carry_qubit = [&](std::size_t i) { return static_cast<Qubit>(n + i); };  // holds carry i, 1 <= i < n
    CircuitBuilder b("arithmetic_compare", arity, key);
    if (c == 0) return b.build_routine();
    if (c == full) {
      b.x(flag);
      return b.build_routine();
    }
    const std::uint64_t addend = full - c;

    // carry i+1 from x_i, addend_i and carry i (live or constant zero)
    auto emit_carry = [&](CircuitBuilder& cb, std::size_t i, bool live_in, Qubit out) {
      auto xi = static_cast<Qubit>(i);
      bool bit = (addend >> i) & 1;
      if (!live_in) {
        if (bit) cb.cnot(xi, out);
        return;
      }
      Qubit cin = carry_qubit(i);
      if (bit) cb.cnot(xi, out).cnot(cin, out);
      cb.ccnot(xi, cin, out);
    };
    std::vector<bool> live(n + 1, false);
    for (std::size_t i = 0; i < n; ++i) live[i + 1] = ((addend >> i) & 1) || live[i];

    CircuitBuilder hb("high_bit_compute", arity, "hbc_" + std::to_string(n) + "_" + std::to_string(c));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (live[i + 1]) emit_carry(hb, i, live[i], carry_qubit(i + 1));
    }
    Routine high = hb.build_routine();
    Register all = detail::span_reg(0, arity);
    b.call(high, all);
    emit_carry(b, n - 1, live[n - 1], flag);
    b.x(flag);
    b.call(high, all, true);
    return b.build_routine();
  });
}

/**
 * flag ^= [x > y] for two registers.
 *
 * Layout: x[n], y[n], flag, ancilla (clean). Ripple of majority gates on
 * x + ~y; the carry out is set exactly when x - y >= 1.
 */
inline Routine register_compare(std::size_t n) {
  if (n == 0) throw StructuralError("register_compare needs n >= 1");
  std::string key = "rcmp_" + std::to_string(n);
  return detail::cached(key, [=] {
    auto x = [](std::size_t i) { return static_cast<Qubit>(i); };
    auto y = [n](std::size_t i) { return static_cast<Qubit>(n + i); };
    const auto flag = static_cast<Qubit>(2 * n);
    const auto c0 = static_cast<Qubit>(2 * n + 1);

    CircuitBuilder maj("majority_chain", 2 * n + 2, "maj_" + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
      Qubit cin = i == 0 ? c0 : x(i - 1);
      maj.cnot(x(i), y(i)).cnot(x(i), cin).ccnot(cin, y(i), x(i));
    }
    Routine chain = maj.build_routine();

    CircuitBuilder b("register_compare", 2 * n + 2, key);
    Register yr = detail::span_reg(static_cast<Qubit>(n), n);
    Register all = detail::span_reg(0, 2 * n + 2);
    b.x_all(yr);
    b.call(chain, all);
    b.cnot(x(n - 1), flag);
    b.call(chain, all, true);
    b.x_all(yr);
    return b.build_routine();
  });
}

}  // namespace qwave
