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
 * Dense statevector engine and the dense linear algebra used to check it.
 *
 * Basis index bit i is qubit i. Gates are applied in place; only the
 * amplitude pairs a gate touches are visited.
 */

#include <bit>
#include <complex>
#include <cstdint>
#include <fstream>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qwave/circuit.hpp"

namespace qwave {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr std::size_t kDefaultQubitCap = 20;
inline constexpr std::size_t kUnitaryQubitCap = 12;

/// 2x2 matrix of a single-qubit gate kind, row-major.
inline std::array<Complex, 4> single_qubit_matrix(const Gate& g) {
  using namespace std::complex_literals;
  const double s2 = std::numbers::sqrt2 / 2;
  const auto& p = g.params;
  auto u3 = [](double lambda, double phi, double theta) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return std::array<Complex, 4>{c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, lambda + phi)};
  };
  switch (g.kind) {
    case GateKind::H:
      return {s2, s2, s2, -s2};
    case GateKind::X:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::RY:
      return u3(0, 0, p[0]);
    case GateKind::PH:
    case GateKind::U1:
      return {1.0, 0.0, 0.0, std::polar(1.0, p[0])};
    case GateKind::U2:
      return u3(p[1], p[0], std::numbers::pi / 2);
    case GateKind::U3:
      return u3(p[0], p[1], p[2]);
    default:
      throw StructuralError("gate " + std::string(gate_name(g.kind)) + " is not a single-qubit gate");
  }
}

/**
 * Dense amplitude vector over q qubits.
 */
class Statevector {
 public:
  explicit Statevector(std::size_t qubits, std::size_t cap = kDefaultQubitCap) : qubits_(qubits) {
    if (qubits > cap) {
      throw CapacityError("statevector of " + std::to_string(qubits) + " qubits exceeds the cap of " +
                          std::to_string(cap) + " qubits");
    }
    amps_.assign(std::size_t{1} << qubits, Complex{0.0});
    amps_[0] = 1.0;
  }

  static Statevector basis(std::size_t qubits, std::uint64_t index, std::size_t cap = kDefaultQubitCap) {
    Statevector s(qubits, cap);
    s.amps_[0] = 0.0;
    s.amps_.at(index) = 1.0;
    return s;
  }

  std::size_t qubits() const { return qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::vector<Complex>& amplitudes() { return amps_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  void apply(const Gate& g) {
    const auto& q = g.qubits;
    switch (g.kind) {
      case GateKind::GlobalPhase: {
        Complex ph = std::polar(1.0, g.params[0]);
        for (auto& a : amps_) a *= ph;
        return;
      }
      case GateKind::X:
        permute(bit(q[0]), 0);
        return;
      case GateKind::CNOT:
        permute(bit(q[1]), bit(q[0]));
        return;
      case GateKind::CCNOT:
        permute(bit(q[2]), bit(q[0]) | bit(q[1]));
        return;
      case GateKind::PH:
      case GateKind::U1:
        phase(bit(q[0]), std::polar(1.0, g.params[0]));
        return;
      case GateKind::CPH:
        phase(bit(q[0]) | bit(q[1]), std::polar(1.0, g.params[0]));
        return;
      default:
        rotate(q[0], single_qubit_matrix(g));
    }
  }

  /// Runs `c` in place; the circuit arity must equal the register width.
  void apply(const Circuit& c) {
    if (c.arity() != qubits_) {
      throw StructuralError("circuit arity " + std::to_string(c.arity()) + " does not match statevector width " +
                            std::to_string(qubits_));
    }
    Register map = identity_map(qubits_);
    run(c, map, false);
  }

  /// Writes little-endian (re, im) double pairs in basis order.
  void dump(const std::string& path) const {
    static_assert(std::endian::native == std::endian::little, "dump assumes a little-endian host");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& a : amps_) {
      double re = a.real(), im = a.imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof re);
      out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  }

 private:
  static std::uint64_t bit(Qubit q) { return std::uint64_t{1} << q; }

  // Swaps amplitude pairs differing in `flip` where all `controls` bits are set.
  void permute(std::uint64_t flip, std::uint64_t controls) {
    const std::uint64_t n = amps_.size();
    for (std::uint64_t i = 0; i < n; ++i) {
      if ((i & flip) || (i & controls) != controls) continue;
      std::swap(amps_[i], amps_[i | flip]);
    }
  }

  void phase(std::uint64_t mask, Complex ph) {
    const std::uint64_t n = amps_.size();
    for (std::uint64_t i = 0; i < n; ++i) {
      if ((i & mask) == mask) amps_[i] *= ph;
    }
  }

  void rotate(Qubit target, const std::array<Complex, 4>& m) {
    const std::uint64_t n = amps_.size();
    const std::uint64_t stride = bit(target);
    for (std::uint64_t base = 0; base < n; base += 2 * stride) {
      for (std::uint64_t i = base; i < base + stride; ++i) {
        Complex a = amps_[i], b = amps_[i + stride];
        amps_[i] = m[0] * a + m[1] * b;
        amps_[i + stride] = m[2] * a + m[3] * b;
      }
    }
  }

  void run(const Circuit& c, std::span<const Qubit> map, bool inverted) {
    auto step = [&](const Instruction& ins) {
      if (const auto* g = std::get_if<Gate>(&ins)) {
        Gate mapped = inverted ? inverse(*g) : *g;
        for (std::size_t i = 0; i < qubit_count(g->kind); ++i) mapped.qubits[i] = map[g->qubits[i]];
        apply(mapped);
      } else {
        const auto& call = std::get<Call>(ins);
        Register sub(call.qubits.size());
        for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = map[call.qubits[i]];
        const Circuit& callee = c.resolve(call);
        for (std::uint64_t r = 0; r < call.repeat; ++r) run(callee, sub, inverted != call.inverted);
      }
    };
    if (inverted) {
      for (auto it = c.body().rbegin(); it != c.body().rend(); ++it) step(*it);
    } else {
      for (const auto& ins : c.body()) step(ins);
    }
  }

  std::size_t qubits_;
  std::vector<Complex> amps_;
};

inline Statevector apply(const Circuit& c, Statevector state) {
  state.apply(c);
  return state;
}

/// Dense unitary, column j = circuit applied to basis state j.
inline Matrix unitary_of(const Circuit& c) {
  if (c.arity() > kUnitaryQubitCap) {
    throw CapacityError("unitary_of is limited to " + std::to_string(kUnitaryQubitCap) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << c.arity();
  Matrix u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    auto s = Statevector::basis(c.arity(), j);
    s.apply(c);
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = s[i];
  }
  return u;
}

/**
 * Action of `c` on the subspace where every qubit outside `data` is |0>.
 *
 * Returns the 2^|data| square block; `leak` receives the largest norm that any
 * input basis state sends outside the subspace (zero for clean ancillas).
 */
inline Matrix logical_unitary(const Circuit& c, std::span<const Qubit> data, double* leak = nullptr,
                              std::size_t cap = kDefaultQubitCap) {
  const std::size_t dim = std::size_t{1} << data.size();
  auto embed = [&](std::uint64_t x) {
    std::uint64_t idx = 0;
    for (std::size_t b = 0; b < data.size(); ++b) {
      if ((x >> b) & 1) idx |= std::uint64_t{1} << data[b];
    }
    return idx;
  };
  if (c.arity() > cap) {
    throw CapacityError("circuit of " + std::to_string(c.arity()) + " qubits exceeds the cap of " +
                        std::to_string(cap) + " qubits");
  }
  std::vector<bool> in_block(std::size_t{1} << c.arity(), false);
  for (std::size_t i = 0; i < dim; ++i) in_block[embed(i)] = true;
  Matrix u(dim, dim);
  double worst = 0;
  for (std::size_t j = 0; j < dim; ++j) {
    auto s = Statevector::basis(c.arity(), embed(j), cap);
    s.apply(c);
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = s[embed(i)];
    double outside = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!in_block[i]) outside += std::norm(s[i]);
    }
    worst = std::max(worst, std::sqrt(std::max(0.0, outside)));
  }
  if (leak) *leak = worst;
  return u;
}

/// e^{-iHt} for Hermitian H through its eigendecomposition.
inline Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  Eigen::VectorXcd phases = (es.eigenvalues().cast<Complex>() * Complex(0, -t)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Matrix expm_hermitian(const RealMatrix& h, double t) { return expm_hermitian(Matrix(h.cast<Complex>()), t); }

/// Largest singular value.
inline double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.rows() <= 64) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

/**
 * ||a - e^{i phi} b||_2, with phi = 0 or minimised over phi.
 *
 * The phase search starts at phi0 = arg tr(b^dagger a). Any minimiser phi*
 * satisfies |e^{i phi*} - e^{i phi0}| <= 2 d(phi0), which bounds the bracket
 * for the golden-section refinement.
 */
inline double spectral_distance(const Matrix& a, const Matrix& b, bool up_to_global_phase = false) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw StructuralError("spectral_distance: shape mismatch");
  if (!up_to_global_phase) return spectral_norm(a - b);

  Complex tr = (b.adjoint() * a).trace();
  double phi0 = std::abs(tr) > 0 ? std::arg(tr) : 0.0;
  auto dist = [&](double phi) { return spectral_norm(a - std::polar(1.0, phi) * b); };
  double d0 = dist(phi0);
  if (d0 == 0) return 0;
  double half = d0 >= 1 ? std::numbers::pi : 2 * std::asin(d0);
  double lo = phi0 - half, hi = phi0 + half;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = dist(x1), f2 = dist(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = dist(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = dist(x2);
    }
  }
  return std::min({d0, f1, f2});
}

}  // namespace qwave
