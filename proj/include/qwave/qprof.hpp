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
 * Call-graph profile of a hierarchical circuit under a timing model.
 *
 * Costs come from one pass over the routine DAG (per-invocation cost times
 * invocation count), never from the flattened gate stream. Routines are
 * grouped by display name; a routine reached through an odd number of
 * inverted calls is reported as "D-<name>".
 */

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "qwave/transpiler.hpp"

namespace qwave {

struct ProfileEdge {
  std::size_t peer = 0;       // node index of the caller (parents) or callee (children)
  std::uint64_t calls = 0;
  double self_s = 0;          // callee self time spent through this edge
  double children_s = 0;      // callee descendant time spent through this edge
};

struct ProfileNode {
  std::string name;
  std::uint64_t calls = 0;
  double self_s = 0;
  double total_s = 0;
  std::vector<ProfileEdge> parents;
  std::vector<ProfileEdge> children;
};

struct ProfileReport {
  std::vector<ProfileNode> nodes;  // sorted by total time, descending
  std::size_t root = 0;
  double total_s = 0;

  const ProfileNode* find(std::string_view name) const {
    for (const auto& n : nodes) {
      if (n.name == name) return &n;
    }
    return nullptr;
  }

  double self_sum() const {
    double s = 0;
    for (const auto& n : nodes) s += n.self_s;
    return s;
  }
};

class RecursionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct Instance {
  const Circuit* c;
  bool inverted;
  friend bool operator<(const Instance& a, const Instance& b) {
    return std::tie(a.c, a.inverted) < std::tie(b.c, b.inverted);
  }
};

}  // namespace detail

inline ProfileReport profile(const Circuit& circuit, const TimingModel& model = {}) {
  using detail::Instance;
  std::map<Instance, double> self_per, total_per;
  std::vector<Instance> post;
  std::set<Instance> seen;

  auto own_cost = [&](const Circuit& c) {
    double ns = 0;
    for (const auto& ins : c.body()) {
      if (const auto* g = std::get_if<Gate>(&ins)) ns += model.duration_ns(g->kind);
    }
    return ns * 1e-9;
  };
  auto visit = [&](auto&& self, Instance in) -> double {
    if (seen.count(in)) return total_per.at(in);
    seen.insert(in);
    double own = own_cost(*in.c), total = own;
    for (const auto& ins : in.c->body()) {
      if (const auto* call = std::get_if<Call>(&ins)) {
        Instance child{&in.c->resolve(*call), in.inverted != call->inverted};
        total += static_cast<double>(call->repeat) * self(self, child);
      }
    }
    self_per[in] = own;
    total_per[in] = total;
    post.push_back(in);
    return total;
  };
  const Instance top{&circuit, false};
  visit(visit, top);

  auto node_name = [](const Instance& in) { return in.inverted ? toggle_dagger(in.c->name()) : in.c->name(); };

  std::map<Instance, std::uint64_t> count;
  count[top] = 1;
  std::map<std::string, std::size_t> index;
  std::vector<ProfileNode> nodes;
  auto node_of = [&](const std::string& name) {
    auto [it, fresh] = index.emplace(name, nodes.size());
    if (fresh) {
      ProfileNode n;
      n.name = name;
      nodes.push_back(std::move(n));
    }
    return it->second;
  };
  std::map<std::pair<std::size_t, std::size_t>, ProfileEdge> edges;

  for (auto it = post.rbegin(); it != post.rend(); ++it) {
    const Instance in = *it;
    const std::uint64_t n = count[in];
    const std::size_t me = node_of(node_name(in));
    nodes[me].calls += n;
    nodes[me].self_s += static_cast<double>(n) * self_per[in];
    nodes[me].total_s += static_cast<double>(n) * total_per[in];
    for (const auto& ins : in.c->body()) {
      const auto* call = std::get_if<Call>(&ins);
      if (!call) continue;
      Instance child{&in.c->resolve(*call), in.inverted != call->inverted};
      const std::uint64_t k = n * call->repeat;
      count[child] += k;
      auto& e = edges[{me, node_of(node_name(child))}];
      e.calls += k;
      e.self_s += static_cast<double>(k) * self_per[child];
      e.children_s += static_cast<double>(k) * (total_per[child] - self_per[child]);
    }
  }

  // a routine name must not (transitively) call itself
  std::vector<int> state(nodes.size(), 0);
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const auto& [key, e] : edges) adj[key.first].push_back(key.second);
  auto dfs = [&](auto&& self, std::size_t u) -> void {
    state[u] = 1;
    for (std::size_t v : adj[u]) {
      if (state[v] == 1) throw RecursionError("recursive call graph through routine '" + nodes[v].name + "'");
      if (state[v] == 0) self(self, v);
    }
    state[u] = 2;
  };
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    if (state[u] == 0) dfs(dfs, u);
  }

  const std::size_t root_node = index.at(node_name(top));
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (nodes[a].total_s != nodes[b].total_s) return nodes[a].total_s > nodes[b].total_s;
    if ((a == root_node) != (b == root_node)) return a == root_node;
    return nodes[a].name < nodes[b].name;
  });
  std::vector<std::size_t> rank(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  ProfileReport report;
  for (std::size_t i : order) report.nodes.push_back(nodes[i]);
  for (auto [key, e] : edges) {
    ProfileEdge down = e, up = e;
    down.peer = rank[key.second];
    up.peer = rank[key.first];
    report.nodes[rank[key.first]].children.push_back(down);
    report.nodes[rank[key.second]].parents.push_back(up);
  }
  for (auto& n : report.nodes) {
    auto by_time = [](const ProfileEdge& a, const ProfileEdge& b) {
      double ta = a.self_s + a.children_s, tb = b.self_s + b.children_s;
      return ta != tb ? ta > tb : a.peer < b.peer;
    };
    std::sort(n.parents.begin(), n.parents.end(), by_time);
    std::sort(n.children.begin(), n.children.end(), by_time);
  }
  report.root = rank[root_node];
  report.total_s = report.nodes[report.root].total_s;
  return report;
}

namespace detail {

inline std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

}  // namespace detail

struct RenderOptions {
  double threshold_percent = 0;  // hide call-graph entries below this share of the total
  int decimals = 6;
};

/// gprof-style flat profile followed by the call graph.
inline std::string render_gprof(const ProfileReport& report, const RenderOptions& opt = {}) {
  using detail::fmt;
  std::ostringstream out;
  const double total = report.total_s;
  const int d = opt.decimals;
  auto pct = [&](double v) { return total > 0 ? 100.0 * v / total : 0.0; };

  std::vector<std::size_t> flat(report.nodes.size());
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = i;
  std::stable_sort(flat.begin(), flat.end(), [&](std::size_t a, std::size_t b) {
    const auto &na = report.nodes[a], &nb = report.nodes[b];
    if (na.self_s != nb.self_s) return na.self_s > nb.self_s;
    return na.name < nb.name;
  });

  out << "Flat profile:\n\n";
  out << "Each sample counts as one gate; times are seconds from the timing model.\n";
  out << "  %   cumulative       self                      self       total\n";
  out << " time    seconds    seconds        calls      ms/call     ms/call  name\n";
  double cumulative = 0;
  for (std::size_t i : flat) {
    const auto& n = report.nodes[i];
    cumulative += n.self_s;
    double calls = static_cast<double>(std::max<std::uint64_t>(n.calls, 1));
    out << fmt("%6.2f %10.*f %10.*f %12llu %12.*f %11.*f  %s\n", pct(n.self_s), d, cumulative, d, n.self_s,
               static_cast<unsigned long long>(n.calls), d, 1e3 * n.self_s / calls, d, 1e3 * n.total_s / calls,
               n.name.c_str());
  }

  out << "\n\f\n";
  out << "\t\t     Call graph\n\n";
  out << fmt("granularity: each sample hit covers 1 gate; total time %.*f seconds\n\n", d, total);
  out << "index % time    self  children    called     name\n";
  auto visible = [&](std::size_t i) { return pct(report.nodes[i].total_s) >= opt.threshold_percent; };
  auto edge_line = [&](const ProfileEdge& e, std::uint64_t peer_calls) {
    const auto& peer = report.nodes[e.peer];
    std::string called = std::to_string(e.calls) + "/" + std::to_string(peer_calls);
    return fmt("            %10.*f %10.*f %15s         %s [%zu]\n", d, e.self_s, d, e.children_s, called.c_str(),
               peer.name.c_str(), e.peer + 1);
  };
  for (std::size_t i = 0; i < report.nodes.size(); ++i) {
    if (!visible(i)) continue;
    const auto& n = report.nodes[i];
    if (n.parents.empty()) out << "                                                 <spontaneous>\n";
    for (const auto& p : n.parents) {
      if (visible(p.peer)) out << edge_line(p, n.calls);
    }
    std::string idx = "[" + std::to_string(i + 1) + "]";
    out << fmt("%-6s %6.1f %10.*f %10.*f %10llu         %s [%zu]\n", idx.c_str(), pct(n.total_s), d, n.self_s, d,
               n.total_s - n.self_s, static_cast<unsigned long long>(n.calls), n.name.c_str(), i + 1);
    for (const auto& c : n.children) {
      if (visible(c.peer)) out << edge_line(c, report.nodes[c.peer].calls);
    }
    out << "-----------------------------------------------\n";
  }
  out << "\f\n";
  out << "Index by function name\n\n";
  std::vector<std::size_t> by_name(report.nodes.size());
  for (std::size_t i = 0; i < by_name.size(); ++i) by_name[i] = i;
  std::sort(by_name.begin(), by_name.end(),
            [&](std::size_t a, std::size_t b) { return report.nodes[a].name < report.nodes[b].name; });
  for (std::size_t i : by_name) out << fmt("  [%zu] %s\n", i + 1, report.nodes[i].name.c_str());
  return out.str();
}

/// Graphviz export; nodes below the threshold share of total time are pruned.
inline std::string render_dot(const ProfileReport& report, double threshold_percent = 10.0) {
  using detail::fmt;
  const double total = report.total_s;
  auto pct = [&](double v) { return total > 0 ? 100.0 * v / total : 0.0; };
  auto keep = [&](std::size_t i) { return i == report.root || pct(report.nodes[i].total_s) >= threshold_percent; };
  std::ostringstream out;
  out << "digraph qprof {\n  node [shape=box, fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < report.nodes.size(); ++i) {
    if (!keep(i)) continue;
    const auto& n = report.nodes[i];
    out << fmt("  n%zu [label=\"%s\\n%.2f%%\\n(%.2f%%)\\n%llux\"];\n", i, n.name.c_str(), pct(n.total_s),
               pct(n.self_s), static_cast<unsigned long long>(n.calls));
  }
  for (std::size_t i = 0; i < report.nodes.size(); ++i) {
    if (!keep(i)) continue;
    for (const auto& c : report.nodes[i].children) {
      if (!keep(c.peer)) continue;
      out << fmt("  n%zu -> n%zu [label=\"%.2f%%\\n%llux\"];\n", i, c.peer, pct(c.self_s + c.children_s),
                 static_cast<unsigned long long>(c.calls));
    }
  }
  out << "}\n";
  return out.str();
}

/// Share of total time spent inside oracle routines (direct or inverted).
inline double oracle_share(const ProfileReport& report) {
  double s = 0;
  for (const auto& n : report.nodes) {
    if (n.name.starts_with("oracle_") || n.name.starts_with("D-oracle_")) s += n.total_s;
  }
  return report.total_s > 0 ? s / report.total_s : 0;
}

}  // namespace qwave
