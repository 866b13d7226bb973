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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "qwave/qwave.hpp"

namespace qwave::testing {

/// Output basis index when `c` maps basis state `in` to a single basis state.
inline std::optional<std::uint64_t> run_basis(const Circuit& c, std::uint64_t in) {
  auto s = Statevector::basis(c.arity(), in);
  s.apply(c);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::norm(s[i]) > 1 - 1e-9) return i;
  }
  return std::nullopt;
}

inline Circuit routine_circuit(const Routine& r) { return place(r, r->arity(), detail::span_reg(0, r->arity())); }

/// Three routines with hand-checkable costs under the default timing model.
///   leaf:   H                         120 ns self
///   middle: CNOT, leaf                367 ns self, 487 ns total
///   main:   X, middle x2, leaf        240 ns self, 1334 ns total
inline Circuit profile_fixture() {
  CircuitBuilder leaf("leaf", 1);
  leaf.h(0);
  Routine l = leaf.build_routine();
  CircuitBuilder mid("middle", 2);
  mid.cnot(0, 1);
  mid.call(l, {1});
  Routine m = mid.build_routine();
  CircuitBuilder top("main", 2);
  top.x(0);
  top.call(m, {0, 1}, false, 2);
  top.call(l, {0});
  return top.build();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CommandResult {
  int status = -1;
  std::string output;
};

/// Runs a shell command, capturing stdout and stderr together.
inline CommandResult run_command(const std::string& cmd) {
  CommandResult r;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) r.output.append(buf, n);
  r.status = pclose(p);
  return r;
}

}  // namespace qwave::testing
