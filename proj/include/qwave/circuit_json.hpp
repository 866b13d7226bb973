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

// JSON (de)serialisation of hierarchical circuits.
//
//   {"name": ..., "arity": n, "body": [instr...], "routines": {key: circuit}}
//   instr = {"gate": "CPH", "qubits": [c, t], "params": [theta]}
//         | {"call": key, "qubits": [...], "inverted": bool[, "repeat": r]}
//
// Routine tables are written once per circuit level. Shared definitions are
// re-emitted in every parent that references them, which keeps each nested
// object self-contained; the reader deduplicates by key. A routine whose
// display name differs from its key carries an extra "key" member.

#include <fstream>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "qwave/circuit.hpp"

namespace qwave {

namespace detail {

inline nlohmann::json to_json_impl(const Circuit& c) {
  nlohmann::json body = nlohmann::json::array();
  for (const auto& ins : c.body()) {
    if (const auto* g = std::get_if<Gate>(&ins)) {
      auto ts = g->targets();
      auto ps = g->parameters();
      body.push_back({{"gate", std::string(gate_name(g->kind))},
                      {"qubits", std::vector<Qubit>(ts.begin(), ts.end())},
                      {"params", std::vector<double>(ps.begin(), ps.end())}});
    } else {
      const auto& call = std::get<Call>(ins);
      nlohmann::json j = {{"call", call.routine}, {"qubits", call.qubits}, {"inverted", call.inverted}};
      if (call.repeat != 1) j["repeat"] = call.repeat;
      body.push_back(std::move(j));
    }
  }
  nlohmann::json routines = nlohmann::json::object();
  for (const auto& [key, r] : c.routines()) routines[key] = to_json_impl(*r);
  nlohmann::json out = {{"name", c.name()}, {"arity", c.arity()}, {"body", std::move(body)},
                        {"routines", std::move(routines)}};
  if (c.key() != c.name()) out["key"] = c.key();
  return out;
}

class JsonReader {
 public:
  Routine read(const nlohmann::json& j, const std::string& key_hint) {
    std::string name = j.at("name").get<std::string>();
    std::string key = j.contains("key") ? j.at("key").get<std::string>() : key_hint.empty() ? name : key_hint;
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    RoutineTable table;
    if (j.contains("routines")) {
      for (const auto& [k, sub] : j.at("routines").items()) table.emplace(k, read(sub, k));
    }
    std::vector<Instruction> body;
    for (const auto& ins : j.at("body")) {
      if (ins.contains("gate")) {
        Gate g;
        g.kind = gate_kind_from_name(ins.at("gate").get<std::string>());
        auto qs = ins.at("qubits").get<std::vector<Qubit>>();
        auto ps = ins.contains("params") ? ins.at("params").get<std::vector<double>>() : std::vector<double>{};
        if (qs.size() != qubit_count(g.kind) || ps.size() != param_count(g.kind)) {
          throw StructuralError("gate " + std::string(gate_name(g.kind)) + " has wrong operand count");
        }
        std::copy(qs.begin(), qs.end(), g.qubits.begin());
        std::copy(ps.begin(), ps.end(), g.params.begin());
        body.emplace_back(g);
      } else if (ins.contains("call")) {
        Call call;
        call.routine = ins.at("call").get<std::string>();
        call.qubits = ins.at("qubits").get<Register>();
        call.inverted = ins.value("inverted", false);
        call.repeat = ins.value("repeat", std::uint64_t{1});
        body.emplace_back(std::move(call));
      } else {
        throw StructuralError("instruction is neither a gate nor a call");
      }
    }
    auto r = std::make_shared<const Circuit>(name, j.at("arity").get<std::size_t>(), std::move(body),
                                             std::move(table), key);
    cache_.emplace(key, r);
    return r;
  }

 private:
  std::unordered_map<std::string, Routine> cache_;
};

}  // namespace detail

inline nlohmann::json to_json(const Circuit& c) { return detail::to_json_impl(c); }

inline Circuit circuit_from_json(const nlohmann::json& j) {
  try {
    detail::JsonReader reader;
    return *reader.read(j, {});
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed circuit JSON: ") + e.what());
  }
}

inline Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(path + ": " + e.what());
  }
  return circuit_from_json(j);
}

inline void save_circuit(const Circuit& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(c).dump(1) << '\n';
}

}  // namespace qwave
