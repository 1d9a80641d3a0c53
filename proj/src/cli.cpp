// Copyright 2026 The trotterlab Authors
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

#include "trotterlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "trotterlab/bounds.hpp"
#include "trotterlab/csv.hpp"
#include "trotterlab/errors.hpp"
#include "trotterlab/numerics.hpp"
#include "trotterlab/presets.hpp"
#include "trotterlab/propagator.hpp"
#include "trotterlab/qaoa.hpp"
#include "trotterlab/spectral.hpp"
#include "trotterlab/sweep.hpp"
#include "trotterlab/variable_step.hpp"

#ifndef TROTTERLAB_VERSION
#define TROTTERLAB_VERSION "unknown"
#endif

namespace trotterlab::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct SystemOptions {
  std::string preset = "two-level";
  std::string hamiltonian;  // H2 file
  std::string h1_file;
};

struct SystemPair {
  PauliSum h1, h2;
  RampKind ramp = RampKind::linear;
};

void add_system_options(CLI::App* cmd, SystemOptions& opt) {
  cmd->add_option("--preset", opt.preset, "Built-in Hamiltonian pair")->capture_default_str();
  cmd->add_option("--hamiltonian", opt.hamiltonian, "Pauli-text file for H2 (overrides --preset)");
  cmd->add_option("--h1", opt.h1_file, "Pauli-text file for H1 (default: sum of X on H2's qubits)");
}

SystemPair resolve_system(const SystemOptions& opt) {
  if (!opt.hamiltonian.empty()) {
    SystemPair pair;
    pair.h2 = load_pauli_file(opt.hamiltonian);
    pair.h1 = opt.h1_file.empty() ? transverse_field(pair.h2.qubit_count()) : load_pauli_file(opt.h1_file);
    return pair;
  }
  const Preset& p = find_preset(opt.preset);
  SystemPair pair{p.h1, p.h2, p.ramp};
  if (!opt.h1_file.empty()) pair.h1 = load_pauli_file(opt.h1_file);
  return pair;
}

Schedule build_schedule(const std::string& ramp, const std::string& ramp_file, double T) {
  const RampKind kind = ramp_kind_from_string(ramp);
  if (kind == RampKind::tabulated) {
    if (ramp_file.empty()) throw DomainError("--ramp tabulated requires --ramp-file");
    return load_tabulated_ramp(ramp_file, T);
  }
  return kind == RampKind::smoothstep ? Schedule::smoothstep(T) : Schedule::linear(T);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

// Manifest beside the outputs: resolved configuration, versions and wall time.
void write_manifest(const std::string& path, const CLI::App& app, const std::vector<std::string>& args,
                    const std::vector<std::string>& outputs, double wall_seconds) {
  nlohmann::ordered_json m;
  m["tool"] = "trotterlab";
  m["version"] = TROTTERLAB_VERSION;
  m["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                       std::to_string(EIGEN_MINOR_VERSION);
  m["compiler"] = __VERSION__;
  m["arguments"] = args;
  // Only the invoked subcommand's options.
  std::string prefix;
  for (const CLI::App* sub : app.get_subcommands()) prefix = sub->get_name() + ".";
  std::istringstream all(app.config_to_str(true, false));
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (std::string line; std::getline(all, line);) {
    if (line.rfind(prefix, 0) != 0) continue;
    const auto eq = line.find('=');
    std::string value = line.substr(eq + 1);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    config[line.substr(prefix.size(), eq - prefix.size())] = value;
  }
  m["resolved_config"] = config;
  m["outputs"] = outputs;
  m["wall_time_seconds"] = wall_seconds;
  write_text(path, m.dump(2) + "\n");
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

struct FitWindow {
  double lo, hi;
};

FitWindow parse_window(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw DomainError("fit window must look like lo:hi");
  return {parse_double(parts[0]), parse_double(parts[1])};
}

// Fits infidelity against dt (grouped by T, fraction, ordering) or against T (grouped by dt, ...).
void print_fits(const std::vector<SweepRecord>& records, const std::string& axis,
                const std::vector<std::string>& windows, std::ostream& out) {
  using Key = std::tuple<double, double, std::string>;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const auto& r : records) {
    if (!r.convergent || !std::isfinite(r.infidelity)) continue;
    const double fixed = axis == "T" ? r.dt : r.T;
    auto& g = groups[{fixed, r.fraction, to_string(r.ordering)}];
    g.first.push_back(axis == "T" ? r.T : r.dt);
    g.second.push_back(r.infidelity);
  }
  const std::string fixed_name = axis == "T" ? "dt" : "T";
  for (const auto& [key, data] : groups) {
    std::vector<FitWindow> ws;
    for (const auto& w : windows) ws.push_back(parse_window(w));
    if (ws.empty()) {
      const auto [lo, hi] = std::minmax_element(data.first.begin(), data.first.end());
      ws.push_back({*lo, *hi});
    }
    for (const auto& w : ws) {
      out << "fit " << fixed_name << "=" << fmt(std::get<0>(key)) << " fraction=" << fmt(std::get<1>(key))
          << " ordering=" << std::get<2>(key) << " window=[" << fmt(w.lo) << "," << fmt(w.hi) << "]: ";
      try {
        const PowerLawFit fit = fit_power_law(data.first, data.second, w.lo, w.hi);
        out << "exponent=" << fmt(fit.exponent) << " r2=" << fmt(fit.r_squared) << " points=" << fit.points << "\n";
      } catch (const InsufficientDataError& e) {
        out << "unavailable (" << e.what() << ")\n";
      } catch (const DomainError& e) {
        out << "unavailable (" << e.what() << ")\n";
      }
    }
  }
}

const CLI::Validator kFractionCheck(
    [](std::string& text) -> std::string {
      double f = 0.0;
      try {
        f = parse_double(text);
      } catch (const IoError&) {
        return "fraction must be a number";
      }
      return f > 0.0 && f <= 1.0 ? std::string() : "fraction must lie in (0, 1]";
    },
    "(0,1]", "fraction");

// Config files split comma lists into separate tokens.
std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : ",") + t;
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConvergenceError*>(&e) || dynamic_cast<const OptimizationError*>(&e) ||
      dynamic_cast<const DegenerateError*>(&e) || dynamic_cast<const ValidityError*>(&e)) {
    return kExitNumeric;
  }
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const LookupError*>(&e) ||
      dynamic_cast<const DimensionError*>(&e) || dynamic_cast<const CapacityError*>(&e) ||
      dynamic_cast<const ConstructionError*>(&e)) {
    return kExitUsage;
  }
  return kExitFailure;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  try {
    if (parts.size() == 4 && (parts[0] == "lin" || parts[0] == "log")) {
      const double lo = parse_double(parts[1]);
      const double hi = parse_double(parts[2]);
      const double n = parse_double(parts[3]);
      if (!(n >= 1.0) || n != std::floor(n)) throw DomainError("grid point count must be a positive integer");
      if (parts[0] == "log" && !(lo > 0.0 && hi > 0.0)) throw DomainError("log grid bounds must be positive");
      return parts[0] == "log" ? log_grid(lo, hi, static_cast<int>(n)) : linear_grid(lo, hi, static_cast<int>(n));
    }
    if (parts.size() != 1) throw DomainError("bad grid '" + spec + "'");
    std::vector<double> out;
    for (const auto& tok : split(spec, ',')) out.push_back(parse_double(tok));
    if (out.empty()) throw DomainError("empty grid");
    return out;
  } catch (const IoError&) {
    throw DomainError("bad grid '" + spec + "'");
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto started = Clock::now();
  CLI::App app{"Digitized adiabatic evolution: Trotter-error sweeps, bounds and QAOA correspondence", "trotterlab"};
  app.set_version_flag("--version", TROTTERLAB_VERSION);
  app.set_config("--config", "", "Key-value configuration file; flags override it");
  app.require_subcommand(1);

  // presets
  auto* presets = app.add_subcommand("presets", "List or show built-in Hamiltonian pairs");
  presets->require_subcommand(1);
  auto* presets_list = presets->add_subcommand("list", "List preset names");
  auto* presets_show = presets->add_subcommand("show", "Print a preset's H1 and H2");
  std::string show_name;
  presets_show->add_option("name", show_name, "Preset name")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Infidelity grid over dt, T, fraction and ordering");
  SystemOptions sweep_sys;
  add_system_options(sweep, sweep_sys);
  std::vector<std::string> dt_grid, T_grid;
  std::string ramp = "linear", ramp_file, target = "instantaneous_ground", sweep_out;
  std::vector<double> fractions{1.0};
  std::vector<std::string> orderings{"H1_first"}, windows;
  std::string fit_axis = "dt";
  int order = 1, threads = 0;
  bool dry_run = false, no_operator_error = false;
  double exact_tol = 1e-10;
  sweep->add_option("--dt-grid", dt_grid, "dt values: a,b,c | lin:lo:hi:n | log:lo:hi:n")->required();
  sweep->add_option("--T-grid", T_grid, "T values, same syntax")->required();
  sweep->add_option("--fraction", fractions, "Ramp fractions in (0, 1]")
      ->check(kFractionCheck)
      ->capture_default_str();
  sweep->add_option("--ordering", orderings, "H1_first and/or H2_first")->capture_default_str();
  sweep->add_option("--order", order, "Product-formula order")->check(CLI::IsMember({1, 2}))->capture_default_str();
  sweep->add_option("--ramp", ramp, "linear | smoothstep | tabulated")->capture_default_str();
  sweep->add_option("--ramp-file", ramp_file, "CSV t_norm,u for a tabulated ramp");
  sweep->add_option("--target", target, "instantaneous_ground | exact_evolved")->capture_default_str();
  sweep->add_option("--exact-tol", exact_tol, "Reference propagator tolerance")->capture_default_str();
  sweep->add_flag("--no-operator-error", no_operator_error, "Skip the unitary operator-norm error");
  sweep->add_option("--threads", threads, "Worker threads (0 = available cores)")->capture_default_str();
  sweep->add_option("--out", sweep_out, "Output CSV");
  sweep->add_option("--fit-window", windows, "Fit window lo:hi (repeatable)");
  sweep->add_option("--fit-axis", fit_axis, "dt or T")->check(CLI::IsMember({"dt", "T"}))->capture_default_str();
  sweep->add_flag("--dry-run", dry_run, "Print the grid size and exit");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Bound coefficients and values at (T, dt)");
  SystemOptions bounds_sys;
  add_system_options(bounds, bounds_sys);
  double bounds_T = 100.0, bounds_dt = 0.1;
  bounds->add_option("--T", bounds_T, "Total time")->capture_default_str();
  bounds->add_option("--dt", bounds_dt, "Time step")->capture_default_str();

  // diagnostics
  auto* diag = app.add_subcommand("diagnostics", "Gap, ground-state deficit trace and coupling matrices");
  SystemOptions diag_sys;
  add_system_options(diag, diag_sys);
  double diag_T = 100.0, diag_dt = 0.1, diag_fraction = 1.0;
  std::optional<double> diag_at;
  std::string diag_out, diag_ordering = "H1_first", diag_ramp = "linear", diag_ramp_file;
  int diag_order = 1;
  diag->add_option("--T", diag_T, "Total time")->capture_default_str();
  diag->add_option("--dt", diag_dt, "Time step")->capture_default_str();
  diag->add_option("--fraction", diag_fraction, "Ramp fraction")
      ->check(kFractionCheck)
      ->capture_default_str();
  diag->add_option("--order", diag_order, "Product-formula order")->check(CLI::IsMember({1, 2}));
  diag->add_option("--ordering", diag_ordering, "H1_first | H2_first")->capture_default_str();
  diag->add_option("--ramp", diag_ramp, "linear | smoothstep | tabulated")->capture_default_str();
  diag->add_option("--ramp-file", diag_ramp_file, "CSV t_norm,u for a tabulated ramp");
  diag->add_option("--at", diag_at, "Also print R, S, Q coupling matrices at this time");
  diag->add_option("--out", diag_out, "Population CSV t,u,pop_0..");

  // variable-step
  auto* vstep = app.add_subcommand("variable-step", "Variable-step versus uniform first-order Trotterization");
  SystemOptions vstep_sys;
  add_system_options(vstep, vstep_sys);
  double v_T = 100.0, v_fraction = 0.9, v_ratio = 2.0;
  std::vector<std::string> v_dt_grid{"log:0.01:0.5:12"};
  std::string v_out, v_plan_out, v_ramp = "linear", v_ramp_file;
  vstep->add_option("--T", v_T, "Total time")->capture_default_str();
  vstep->add_option("--dt-grid", v_dt_grid, "Nominal dt values")->capture_default_str();
  vstep->add_option("--fraction", v_fraction, "Ramp fraction")
      ->check(kFractionCheck)
      ->capture_default_str();
  vstep->add_option("--ratio-limit", v_ratio, "tau within [dt/r, r dt]; 1 forces uniform steps")
      ->check(CLI::Range(1.0, 1e6))
      ->capture_default_str();
  vstep->add_option("--ramp", v_ramp, "linear | smoothstep | tabulated")->capture_default_str();
  vstep->add_option("--ramp-file", v_ramp_file, "CSV t_norm,u for a tabulated ramp");
  vstep->add_option("--out", v_out, "Comparison CSV dt,standard,variable,steps,convergent");
  vstep->add_option("--plan-out", v_plan_out, "Plan CSV for the first dt value");

  // qaoa-pipeline
  auto* qaoa = app.add_subcommand("qaoa-pipeline", "QAOA ladder, optimal-control curves and their digitization");
  PipelineConfig pipe;
  std::string out_dir = "qaoa_out";
  bool open_chain = false;
  qaoa->add_option("--n", pipe.n, "Qubits")->capture_default_str();
  qaoa->add_option("--regularity", pipe.regularity, "Graph regularity")
      ->check(CLI::IsMember({2, 3}))
      ->capture_default_str();
  qaoa->add_option("--p-min", pipe.p_min, "Smallest reported depth")->check(CLI::PositiveNumber)->capture_default_str();
  qaoa->add_option("--p-max", pipe.p_max, "Largest depth")->check(CLI::PositiveNumber)->capture_default_str();
  qaoa->add_option("--fine-dt", pipe.fine_dt, "Curve bin width")->check(CLI::PositiveNumber)->capture_default_str();
  qaoa->add_option("--pair-total", pipe.pair_total, "gamma+beta per layer for 2-regular instances (<=0: free)")
      ->capture_default_str();
  qaoa->add_option("--restarts", pipe.restarts, "Extra perturbed QAOA starts")->capture_default_str();
  qaoa->add_flag("--open", open_chain, "Drop the ring's closing edge");
  qaoa->add_option("--curve-max-iter", pipe.curve.config.max_iterations, "Curve optimizer iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  qaoa->add_option("--curve-pgtol", pipe.curve.config.pgtol, "Curve optimizer projected-gradient tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  qaoa->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();

  // step-counts
  auto* counts = app.add_subcommand("step-counts", "Step-count scaling r and r' for a target error");
  double epsilon = 1e-2;
  int p_order = 1;
  counts->add_option("--epsilon", epsilon, "Target error")->check(CLI::PositiveNumber)->capture_default_str();
  counts->add_option("--p", p_order, "Formula order")->check(CLI::PositiveNumber)->capture_default_str();

  std::vector<const char*> argv{"trotterlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - started).count(); };

  try {
    if (*presets) {
      if (*presets_list) {
        for (const auto& p : builtin_presets()) {
          out << p.name << "\t" << p.h2.qubit_count() << " qubits\t" << p.notes << "\n";
        }
      } else if (*presets_show) {
        const Preset& p = find_preset(show_name);
        out << "name: " << p.name << "\n"
            << "qubits: " << p.h2.qubit_count() << "\n"
            << "ramp: " << to_string(p.ramp) << "\n"
            << "notes: " << p.notes << "\n"
            << "H1 (" << p.h1.canonical().terms().size() << " terms):\n"
            << format_pauli_text(p.h1) << "H2 (" << p.h2.canonical().terms().size() << " terms):\n"
            << format_pauli_text(p.h2);
      }
      return kExitOk;
    }

    if (*sweep) {
      const SystemPair sys = resolve_system(sweep_sys);
      SweepSpec spec;
      spec.h1 = sys.h1;
      spec.h2 = sys.h2;
      spec.ramp = ramp_kind_from_string(ramp);
      if (spec.ramp == RampKind::tabulated) {
        if (ramp_file.empty()) throw DomainError("--ramp tabulated requires --ramp-file");
        const Schedule s = load_tabulated_ramp(ramp_file, 1.0);
        spec.table_x = s.table().xs();
        spec.table_u = s.table().ys();
      }
      spec.dt_grid = parse_grid(join_tokens(dt_grid));
      spec.T_grid = parse_grid(join_tokens(T_grid));
      spec.fractions = fractions;
      spec.orderings.clear();
      for (const auto& o : orderings) spec.orderings.push_back(ordering_from_string(o));
      spec.order = order;
      spec.target = target_kind_from_string(target);
      spec.with_operator_error = !no_operator_error;
      spec.exact_tol = exact_tol;
      spec.threads = threads;
      validate_sweep(spec);
      if (dry_run) {
        const std::size_t points = sweep_point_count(spec);
        out << "grid: dt=" << spec.dt_grid.size() << " T=" << spec.T_grid.size()
            << " fraction=" << spec.fractions.size() << " ordering=" << spec.orderings.size() << "\n"
            << "points: " << points << "\n"
            << "reference evolutions: " << spec.T_grid.size() * spec.fractions.size() << "\n";
        return kExitOk;
      }
      // Roughly every 5%; the callback runs under the sweep's lock.
      std::size_t last_bucket = 0;
      const auto records = run_sweep(spec, [&](std::size_t done, std::size_t total) {
        const std::size_t bucket = done * 20 / total;
        if (bucket > last_bucket || done == total) {
          last_bucket = std::max(last_bucket, bucket);
          err << "progress " << done << "/" << total << "\n";
        }
      });
      std::size_t failed = 0;
      for (const auto& r : records) {
        if (!r.error.empty()) {
          ++failed;
          err << "point dt=" << fmt(r.dt) << " T=" << fmt(r.T) << " fraction=" << fmt(r.fraction)
              << " failed: " << r.error << "\n";
        }
      }
      if (!sweep_out.empty()) {
        ensure_parent(sweep_out);
        emit_csv(records, sweep_out);
        write_manifest(sweep_out + ".manifest.json", app, args, {sweep_out}, elapsed());
        out << "wrote " << records.size() << " rows to " << sweep_out << "\n";
      } else {
        out << sweep_csv(records);
      }
      print_fits(records, fit_axis, windows, out);
      return failed == 0 ? kExitOk : kExitNumeric;
    }

    if (*bounds) {
      const SystemPair sys = resolve_system(bounds_sys);
      if (!(bounds_T > 0.0 && bounds_dt > 0.0)) throw DomainError("--T and --dt must be positive");
      out << format_bound_report(coefficients(sys.h1, sys.h2), bounds_T, bounds_dt);
      return kExitOk;
    }

    if (*diag) {
      const SystemPair sys = resolve_system(diag_sys);
      const SplitSystem system(sys.h1, sys.h2);
      const Schedule sched = build_schedule(diag_ramp, diag_ramp_file, diag_T);
      const TrotterPlan plan{diag_order, diag_dt, ordering_from_string(diag_ordering), diag_fraction};
      const GapMinimum gap = minimum_gap(system);
      const PopulationTrace trace = population_trace(system, sched, plan);
      const GroundDeficit deficit = ground_deficit(trace);
      out << "min_gap = " << format_double(gap.gap) << "\n"
          << "min_gap_u = " << format_double(gap.u) << "\n"
          << "convergent = " << (is_convergent(system, sched, plan) ? "true" : "false") << "\n"
          << "max_ground_deficit = " << format_double(deficit.max_deficit) << "\n"
          << "max_ground_deficit_time = " << format_double(deficit.max_at_time) << "\n"
          << "final_ground_deficit = " << format_double(deficit.final_deficit) << "\n";
      if (diag_at) {
        const CouplingDiagnostics c = coupling_diagnostics(system, sched, diag_dt, *diag_at);
        const Eigen::IOFormat f(6, 0, ", ", "\n", "  [", "]");
        out << "R =\n" << c.R.format(f) << "\nS =\n" << c.S.format(f) << "\nQ =\n" << c.Q.format(f) << "\n";
      }
      if (!diag_out.empty()) {
        ensure_parent(diag_out);
        write_population_csv(trace, diag_out);
        write_manifest(diag_out + ".manifest.json", app, args, {diag_out}, elapsed());
      }
      return kExitOk;
    }

    if (*vstep) {
      const SystemPair sys = resolve_system(vstep_sys);
      const SplitSystem system(sys.h1, sys.h2);
      const Schedule sched = build_schedule(v_ramp, v_ramp_file, v_T);
      const Matrix ground = ground_space(system.eigen_at(sched.value(v_fraction * v_T)));
      const Vector psi0 = system.initial_state(sched);
      VariableStepConfig config;
      config.ratio_limit = v_ratio;
      std::ostringstream table;
      table << "dt,standard,variable,steps,convergent\n";
      bool first = true;
      for (double dt : parse_grid(join_tokens(v_dt_grid))) {
        const TrotterPlan plan{1, dt, Ordering::h1_first, v_fraction};
        const double standard = ground_space_infidelity(trotter_state(system, sched, plan, psi0), ground);
        const VariableStepResult var = variable_step_evolution(system, sched, dt, v_fraction, config);
        const double variable = ground_space_infidelity(var.state, ground);
        table << format_double(dt) << ',' << format_double(standard) << ',' << format_double(variable) << ','
              << var.plan.steps.size() << ',' << (is_convergent(system, sched, plan) ? 1 : 0) << '\n';
        if (first && !v_plan_out.empty()) {
          ensure_parent(v_plan_out);
          write_plan_csv(var.plan, v_plan_out);
        }
        first = false;
      }
      if (!v_out.empty()) {
        ensure_parent(v_out);
        write_text(v_out, table.str());
        std::vector<std::string> outputs{v_out};
        if (!v_plan_out.empty()) outputs.push_back(v_plan_out);
        write_manifest(v_out + ".manifest.json", app, args, outputs, elapsed());
      } else {
        out << table.str();
      }
      return kExitOk;
    }

    if (*qaoa) {
      if (pipe.p_min > pipe.p_max) throw DomainError("--p-min must not exceed --p-max");
      pipe.periodic = !open_chain;
      fs::create_directories(out_dir);
      std::vector<std::string> outputs;
      std::vector<PipelineRow> rows;
      run_pipeline(pipe, [&](const PipelineLevel& level) {
        const std::string tag = "P" + std::to_string(level.row.P);
        const std::string angles_path = (fs::path(out_dir) / ("angles_" + tag + ".csv")).string();
        const std::string curve_path = (fs::path(out_dir) / ("curve_" + tag + ".csv")).string();
        const std::string trot_path = (fs::path(out_dir) / ("trotterized_" + tag + ".csv")).string();
        save_angles_csv(angles_path, level.angles);
        save_curve_csv(curve_path, level.curve);
        save_angles_csv(trot_path, level.trotterized);
        outputs.insert(outputs.end(), {angles_path, curve_path, trot_path});
        rows.push_back(level.row);
        out << "P=" << level.row.P << " T=" << fmt(level.row.T_total) << " J_qaoa=" << fmt(level.row.J_qaoa)
            << " J_curve=" << fmt(level.row.J_curve) << " infid_qaoa=" << fmt(level.row.infid_qaoa)
            << " infid_curve=" << fmt(level.row.infid_curve)
            << " infid_trotterized=" << fmt(level.row.infid_trotterized) << "\n";
      });
      const std::string summary = (fs::path(out_dir) / "summary.csv").string();
      write_text(summary, pipeline_csv(rows));
      outputs.insert(outputs.begin(), summary);
      write_manifest((fs::path(out_dir) / "manifest.json").string(), app, args, outputs, elapsed());
      return kExitOk;
    }

    if (*counts) {
      const StepCounts c = step_counts(epsilon, p_order);
      out << "epsilon = " << format_double(epsilon) << "\n"
          << "p = " << p_order << "\n"
          << "r_selfhealing = " << format_double(c.r_selfhealing) << "\n"
          << "r_generic = " << format_double(c.r_generic) << "\n"
          << "ratio = " << format_double(c.ratio) << "\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitUsage;
}

}  // namespace trotterlab::cli
