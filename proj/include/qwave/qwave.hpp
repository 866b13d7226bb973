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

#include "qwave/bench.hpp"
#include "qwave/circuit.hpp"
#include "qwave/circuit_json.hpp"
#include "qwave/qprof.hpp"
#include "qwave/sparse_sim.hpp"
#include "qwave/statevector.hpp"
#include "qwave/std_gates.hpp"
#include "qwave/transpiler.hpp"
#include "qwave/wave_oracles.hpp"
#include "qwave/wave_solver.hpp"
