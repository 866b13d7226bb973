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

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qwave/qwave.hpp"

namespace {

using nlohmann::json;
using namespace qwave;

struct Common {
  std::size_t nd = 8;
  double t = 1;
  double eps = 1e-3;
  std::size_t k = 1;
  std::string bound = "minimised";
  std::uint64_t r = 0;
  std::string timing;
  std::string emit;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--nd", c.nd, "grid points, boundaries included")->check(CLI::Range(3, 1 << 20));
  sub->add_option("--t", c.t, "physical time")->check(CLI::NonNegativeNumber);
  sub->add_option("--eps", c.eps, "target precision")->check(CLI::PositiveNumber);
  sub->add_option("--k", c.k, "product formula order is 2k")->check(CLI::Range(1, 8));
  sub->add_option("--bound", c.bound, "repetition bound")
      ->check(CLI::IsMember({"analytic", "minimised", "empiric", "explicit"}));
  sub->add_option("--r", c.r, "repetitions for --bound explicit");
  sub->add_option("--timing", c.timing, "timing model file");
  sub->add_option("--emit", c.emit, "write the circuit as JSON");
}

TimingModel timing_of(const std::string& path) { return path.empty() ? TimingModel{} : load_timing_model(path); }

json row_json(const SweepRow& r, Bound b) {
  json j{{"n_d", r.n_d},
         {"t", r.t},
         {"epsilon", r.epsilon},
         {"k", r.k},
         {"bound", bound_name(b)},
         {"r", r.r},
         {"qubits_core", r.qubits_core},
         {"qubits_total", r.qubits_total},
         {"gates_native", r.gates_native},
         {"gates_transpiled", r.gates_transpiled},
         {"est_time_s", r.est_time_s}};
  if (r.max_error) j["max_error"] = *r.max_error;
  return j;
}

int run_solve(const Common& c, bool simulate) {
  Discretisation d(c.nd);
  Bound b = bound_from_name(c.bound);
  TimingModel model = timing_of(c.timing);
  WaveProblem prob{d, c.t, c.eps, c.k, {}, {}};
  SolveOptions opt;
  opt.bound = b;
  opt.explicit_r = c.r;
  opt.simulate = simulate;
  WaveSolution sol = solve(prob, opt);

  SweepRow row;
  row.n_d = c.nd;
  row.t = c.t;
  row.epsilon = c.eps;
  row.k = c.k;
  row.r = sol.diagnostics.r;
  row.qubits_core = sol.diagnostics.qubits.core;
  row.qubits_total = sol.diagnostics.qubits.total;
  row.gates_native = sol.diagnostics.gates_native;
  row.gates_transpiled = sol.diagnostics.gates_transpiled;
  row.est_time_s = estimate_time(*sol.circuit, model);
  json j;
  if (simulate) {
    Eigen::VectorXd ref = classical_reference(d, c.t, default_initial_position(d));
    row.max_error = (sol.u_t - ref).cwiseAbs().maxCoeff();
    j = row_json(row, b);
    j["u_t"] = std::vector<double>(sol.u_t.data(), sol.u_t.data() + sol.u_t.size());
    j["reference"] = std::vector<double>(ref.data(), ref.data() + ref.size());
    j["norm_drift"] = sol.diagnostics.norm_drift;
    j["leakage"] = sol.diagnostics.leakage;
  } else {
    j = row_json(row, b);
  }
  if (!c.emit.empty()) save_circuit(*sol.circuit, c.emit);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_hamsim(const Common& c, bool simulate) {
  Discretisation d(c.nd);
  Bound b = bound_from_name(c.bound);
  SweepPoint p{c.nd, c.t, c.eps, c.k, b, SweepKind::Hamsim, simulate};
  if (b == Bound::Explicit) {
    // sweep_row plans by itself; explicit r needs the plan spelled out here
    ProductFormulaPlan plan = hamsim_plan(d, c.t, c.eps, c.k, b, c.r);
    Circuit circ = wave_circuit(d, plan);
    SweepRow row;
    row.n_d = c.nd;
    row.t = c.t;
    row.epsilon = c.eps;
    row.k = c.k;
    row.r = plan.r;
    QubitCount qc = qubit_requirement(d);
    row.qubits_core = qc.core;
    row.qubits_total = qc.total;
    row.gates_native = gate_count(circ, GateSet::Native);
    row.gates_transpiled = gate_count(circ, GateSet::Transpiled);
    row.est_time_s = estimate_time(circ, timing_of(c.timing));
    if (simulate) {
      auto terms = hamiltonian_terms(d);
      Matrix u = logical_unitary(circ, layout_of(terms.plus).rows());
      row.max_error = spectral_distance(u, expm_hermitian(RealMatrix(terms.plus.matrix + terms.minus.matrix), c.t));
    }
    if (!c.emit.empty()) save_circuit(circ, c.emit);
    std::cout << row_json(row, b).dump(2) << '\n';
    return 0;
  }
  SweepRow row = sweep_row(p, timing_of(c.timing));
  if (!c.emit.empty()) save_circuit(wave_circuit(d, hamsim_plan(d, c.t, c.eps, c.k, b)), c.emit);
  std::cout << row_json(row, b).dump(2) << '\n';
  return 0;
}

struct SweepArgs {
  std::string param;
  std::vector<double> values;
  std::string out;
  bool hamsim = false;
  bool simulate = false;
};

int run_sweep(const Common& c, const SweepArgs& s) {
  Bound b = bound_from_name(c.bound);
  if (b == Bound::Explicit) throw std::invalid_argument("sweeps need a computed bound");
  TimingModel model = timing_of(c.timing);
  std::vector<SweepRow> rows;
  for (double v : s.values) {
    SweepPoint p{c.nd, c.t, c.eps, c.k, b, s.hamsim ? SweepKind::Hamsim : SweepKind::Solve, s.simulate};
    if (s.param == "nd") {
      if (v < 3 || v != std::floor(v)) throw std::invalid_argument("nd values must be integers >= 3");
      p.n_d = static_cast<std::size_t>(v);
    } else if (s.param == "t") {
      p.t = v;
    } else {
      p.epsilon = v;
    }
    rows.push_back(sweep_row(p, model));
  }
  if (s.out.empty() || s.out == "-") {
    write_csv(std::cout, rows);
  } else {
    std::ofstream f(s.out);
    if (!f) throw std::runtime_error("cannot write " + s.out);
    write_csv(f, rows);
  }
  if (rows.size() >= 2) {
    ScalingFit fit;
    if (s.param == "nd") {
      fit = fit_scaling(rows);
    } else {
      std::vector<double> x, y;
      for (const auto& r : rows) {
        x.push_back(s.param == "t" ? r.t : r.epsilon);
        y.push_back(static_cast<double>(r.gates_native));
      }
      fit = fit_power(x, y);
    }
    std::ostream& log = (s.out.empty() || s.out == "-") ? std::cerr : std::cout;
    log << "fit param=" << s.param << " p=" << fit.p << " c=" << fit.c << " residual=" << fit.residual << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qwave: wave-equation Hamiltonian simulation circuits"};
  app.require_subcommand(1);

  Common solve_opts, hamsim_opts, sweep_opts;
  sweep_opts.nd = 32;
  sweep_opts.eps = 1e-5;
  bool simulate = false;

  auto* solve_cmd = app.add_subcommand("solve", "build (and optionally simulate) the wave-equation circuit");
  add_common(solve_cmd, solve_opts);
  solve_cmd->add_flag("--simulate", simulate, "run on the statevector and compare with the eigen reference");

  auto* hamsim_cmd = app.add_subcommand("hamsim", "simulate the integer wave Hamiltonian for time t");
  add_common(hamsim_cmd, hamsim_opts);
  hamsim_cmd->add_flag("--simulate", simulate, "measure the spectral error on the row register");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "construction sweep over one parameter, CSV output");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--param", sweep.param, "swept parameter")->required()->check(CLI::IsMember({"nd", "t", "eps"}));
  sweep_cmd->add_option("--values", sweep.values, "comma-separated values")->required()->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out, "CSV file (default stdout)");
  sweep_cmd->add_flag("--hamsim", sweep.hamsim, "sweep the bare Hamiltonian simulation (no time rescaling)");
  sweep_cmd->add_flag("--simulate", sweep.simulate, "also simulate each point (small grids only)");

  std::size_t rb_k = 1, rb_m = 2;
  double rb_t = 1, rb_eps = 1e-5, rb_lambda = 1;
  auto* rb_cmd = app.add_subcommand("rbounds", "print the analytic and minimised repetition counts");
  rb_cmd->add_option("--k", rb_k)->check(CLI::Range(1, 8));
  rb_cmd->add_option("--t", rb_t)->check(CLI::NonNegativeNumber);
  rb_cmd->add_option("--eps", rb_eps)->check(CLI::PositiveNumber);
  rb_cmd->add_option("--m", rb_m)->check(CLI::PositiveNumber);
  rb_cmd->add_option("--lambda", rb_lambda)->check(CLI::PositiveNumber);

  std::string in_path, out_path, timing_path, dot_path;
  double threshold = 10, text_threshold = 0;
  auto* tr_cmd = app.add_subcommand("transpile", "lower a circuit to {U1, U2, U3, CNOT}");
  tr_cmd->add_option("--in", in_path, "input circuit JSON")->required();
  tr_cmd->add_option("--out", out_path, "output circuit JSON")->required();
  tr_cmd->add_option("--timing", timing_path, "timing model file");

  auto* prof_cmd = app.add_subcommand("profile", "gprof-format profile of a circuit");
  prof_cmd->add_option("--in", in_path, "input circuit JSON")->required();
  prof_cmd->add_option("--timing", timing_path, "timing model file");
  prof_cmd->add_option("--dot", dot_path, "write the pruned call graph as DOT");
  prof_cmd->add_option("--threshold", threshold, "DOT pruning threshold in percent")->check(CLI::Range(0.0, 100.0));
  prof_cmd->add_option("--text-threshold", text_threshold, "call-graph text pruning threshold in percent")
      ->check(CLI::Range(0.0, 100.0));

  std::size_t cl_nd = 8;
  double cl_t = 1, cl_dt = 1e-5;
  std::string cl_method = "eigen";
  auto* cl_cmd = app.add_subcommand("classical", "classical reference solution, CSV x,u");
  cl_cmd->add_option("--nd", cl_nd)->check(CLI::Range(3, 1 << 16));
  cl_cmd->add_option("--t", cl_t)->check(CLI::NonNegativeNumber);
  cl_cmd->add_option("--method", cl_method)->check(CLI::IsMember({"eigen", "leapfrog"}));
  cl_cmd->add_option("--dt", cl_dt, "leapfrog time step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return e.get_exit_code() ? e.get_exit_code() : 2;
  }

  try {
    if (*solve_cmd) return run_solve(solve_opts, simulate);
    if (*hamsim_cmd) return run_hamsim(hamsim_opts, simulate);
    if (*sweep_cmd) return run_sweep(sweep_opts, sweep);
    if (*rb_cmd) {
      std::cout << "analytic=" << analytic_bound(rb_k, rb_t, rb_eps, rb_m, rb_lambda)
                << " minimised=" << minimised_bound(rb_k, rb_t, rb_eps, rb_m, rb_lambda) << '\n';
      return 0;
    }
    if (*tr_cmd) {
      Circuit c = load_circuit(in_path);
      Transpiled t = transpile(c);
      save_circuit(t.circuit, out_path);
      TimingModel model = timing_of(timing_path);
      std::cout << "gates_native=" << gate_count(c, GateSet::Native)
                << " gates_transpiled=" << gate_count(t.circuit, GateSet::Native)
                << " global_phase=" << t.global_phase << " est_time_s=" << estimate_time(t.circuit, model) << '\n';
      return 0;
    }
    if (*prof_cmd) {
      ProfileReport rep = profile(load_circuit(in_path), timing_of(timing_path));
      RenderOptions opt;
      opt.threshold_percent = text_threshold;
      std::cout << render_gprof(rep, opt);
      if (!dot_path.empty()) {
        std::ofstream f(dot_path);
        if (!f) throw std::runtime_error("cannot write " + dot_path);
        f << render_dot(rep, threshold);
      }
      return 0;
    }
    if (*cl_cmd) {
      Discretisation d(cl_nd);
      Eigen::VectorXd u =
          classical_reference(d, cl_t, default_initial_position(d), classical_method_from_name(cl_method), cl_dt);
      std::cout << "x,u\n";
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        std::printf("%.17g,%.17g\n", static_cast<double>(i + 1) * d.delta_x(), u(i));
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
