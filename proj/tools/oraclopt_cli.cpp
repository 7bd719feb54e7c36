// Copyright 2026 The oraclopt Authors. All Rights Reserved.
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

// Command-line front end: run, reproduce-all, refute, certify,
// list-benchmarks, plot.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <oraclopt/oraclopt.hpp>

using namespace oraclopt;

namespace {

std::string join_point(std::span<const double> p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + format_g12(p[i]);
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void print_summary(const RunSummary& s) {
  std::cout << "function    " << s.function << " (d=" << s.dim << ")\n"
            << "grid        " << s.grid << "\n"
            << "iterations  " << s.iterations << " (" << s.reason << ")\n"
            << "queries     " << s.queries << "\n"
            << "start f     " << format_g12(s.start_f) << "\n"
            << "final f     " << format_g12(s.final_f) << "\n"
            << "gap         " << format_g12(s.gap) << "\n"
            << "final x     " << join_point(s.final_point) << "\n"
            << "wall time   " << format_g12(s.wall_seconds) << " s\n";
}

struct RunArgs {
  std::string config_file;
  std::string function;
  std::size_t dim = 0;
  std::optional<double> step, basin, grad_tol;
  std::optional<std::size_t> iters, samples, grid_budget, query_cap;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> precision_k;
  std::string grid_mode = "auto";
  std::string start;
  std::string out, plot;
};

ExperimentConfig to_config(const RunArgs& a) {
  ExperimentConfig cfg;
  if (!a.config_file.empty()) {
    std::ifstream in(a.config_file);
    if (!in) throw IoError("cannot read config file " + a.config_file);
    cfg = apply_config(cfg, parse_key_values(in));
  }
  // Flags override the file.
  if (!a.function.empty()) cfg.function = a.function;
  if (a.dim) cfg.dim = a.dim;
  if (a.step) cfg.step_size = a.step;
  if (a.basin) cfg.basin_bound = a.basin;
  if (a.iters) cfg.max_iters = a.iters;
  if (a.samples) cfg.samples = *a.samples;
  if (a.grad_tol) cfg.grad_tolerance = *a.grad_tol;
  if (a.grid_budget) cfg.grid_budget = *a.grid_budget;
  if (a.query_cap) cfg.query_cap = *a.query_cap;
  if (a.seed) cfg.seed = *a.seed;
  if (a.precision_k) cfg.precision_k = *a.precision_k;
  if (a.grid_mode != "auto") cfg.grid_mode = parse_grid_mode(a.grid_mode, cfg.samples);
  else if (cfg.grid_mode && cfg.grid_mode->kind == GridMode::Kind::sampled)
    cfg.grid_mode = GridMode::sampled(cfg.samples);
  if (a.start == "corner") cfg.start = StartMode::corner;
  else if (a.start == "random") cfg.start = StartMode::random;
  else if (!a.start.empty()) {
    cfg.start = StartMode::explicit_point;
    cfg.start_point = parse_point(a.start);
  }
  if (!a.out.empty()) cfg.trace_path = a.out;
  if (!a.plot.empty()) cfg.plot_path = a.plot;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oracle-model global optimization toolkit"};
  app.require_subcommand(1);

  // run
  RunArgs ra;
  auto* run = app.add_subcommand("run", "Run the basin-grid descent on one benchmark");
  run->add_option("--config", ra.config_file, "key = value config file (flags override it)");
  run->add_option("--function", ra.function, "Benchmark name (default sphere)");
  run->add_option("--dim", ra.dim, "Dimension (default 2)");
  run->add_option("--step", ra.step, "Step size t (default: benchmark default)");
  run->add_option("--basin", ra.basin, "Basin bound m (default: benchmark default)");
  run->add_option("--iters", ra.iters, "Iteration cap");
  run->add_option("--grid-mode", ra.grid_mode, "full, sampled or auto")
      ->check(CLI::IsMember({"full", "sampled", "auto"}));
  run->add_option("--samples", ra.samples, "Points per sampled grid");
  run->add_option("--seed", ra.seed, "Seed for sampled grids and random starts");
  run->add_option("--precision-k", ra.precision_k, "Oracle precision in decimal digits");
  run->add_option("--grad-tol", ra.grad_tol, "Stop once |grad f(z_k)| <= tol");
  run->add_option("--grid-budget", ra.grid_budget, "Largest full grid allowed");
  run->add_option("--query-cap", ra.query_cap, "Query allowance for the default iteration cap");
  run->add_option("--start", ra.start, "corner, random, or a point such as 1.5;-2");
  run->add_option("--out", ra.out, "Trace CSV path");
  run->add_option("--plot", ra.plot, "SVG plot path (needs --out)");

  // reproduce-all
  SweepOptions so;
  std::string sweep_out;
  std::optional<std::size_t> sweep_iters, sweep_iters_hd;
  bool serial = false;
  auto* sweep = app.add_subcommand("reproduce-all", "Run the nine standard experiments");
  sweep->add_option("--out", sweep_out, "Directory for traces and summary.csv");
  sweep->add_option("--iters", sweep_iters, "Iteration cap for the 2-D runs");
  sweep->add_option("--iters-high-dim", sweep_iters_hd, "Iteration cap for the 20-D runs");
  sweep->add_option("--samples", so.samples, "Points per sampled grid");
  sweep->add_option("--seed", so.seed, "Seed for the sampled grids");
  sweep->add_option("--grid-budget", so.grid_budget, "Largest full grid allowed");
  sweep->add_flag("--serial", serial, "Run one experiment at a time");

  // refute
  std::string solver_name = "grid";
  std::size_t budget = 1000, rdim = 1;
  double eps = 0.1, lo = 0.0, hi = 1.0;
  std::uint64_t rseed = 0;
  std::string witness_out, log_out;
  auto* ref = app.add_subcommand("refute", "Refute a solver's claim with a witness function");
  ref->add_option("--solver", solver_name, "grid, random or basin")
      ->check(CLI::IsMember({"grid", "random", "basin"}));
  ref->add_option("--budget", budget, "Query budget")->check(CLI::PositiveNumber);
  ref->add_option("--dim", rdim, "Dimension of the box")->check(CLI::PositiveNumber);
  ref->add_option("--eps", eps, "Claimed accuracy")->check(CLI::PositiveNumber);
  ref->add_option("--lo", lo, "Lower box bound");
  ref->add_option("--hi", hi, "Upper box bound");
  ref->add_option("--seed", rseed, "Seed for the random solver and witness pool");
  ref->add_option("--out", witness_out, "Witness CSV sampled on a lattice (d <= 2)");
  ref->add_option("--log", log_out, "Query transcript CSV");

  // certify
  std::string kind = "basin", cfunc = "sphere";
  std::size_t cdim = 2, csamples = 10000, cbudget = kDefaultGridBudget;
  std::optional<double> cbasin, lipschitz;
  double ceps = 0.1;
  std::uint64_t cseed = 0;
  unsigned ck = 12;
  auto* cert = app.add_subcommand("certify", "Check a basin or Lipschitz certificate");
  cert->add_option("--kind", kind, "basin or lipschitz")
      ->check(CLI::IsMember({"basin", "lipschitz"}));
  cert->add_option("--function", cfunc, "Benchmark name");
  cert->add_option("--dim", cdim, "Dimension");
  cert->add_option("--basin", cbasin, "Basin side m (default: benchmark default)");
  cert->add_option("--samples", csamples, "Samples for the basin check");
  cert->add_option("--seed", cseed, "Sampling seed");
  cert->add_option("--lipschitz", lipschitz, "Lipschitz bound L");
  cert->add_option("--eps", ceps, "Target accuracy for the Lipschitz search");
  cert->add_option("--grid-budget", cbudget, "Largest lattice allowed");
  cert->add_option("--precision-k", ck, "Oracle precision in decimal digits");

  // list-benchmarks
  auto* list = app.add_subcommand("list-benchmarks", "Show the benchmark registry");

  // plot
  std::string trace_in, svg_out;
  auto* plot = app.add_subcommand("plot", "Render a trace CSV as an SVG line plot");
  plot->add_option("trace", trace_in, "Trace CSV")->required();
  plot->add_option("--out", svg_out, "SVG path (default: trace path with .svg)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto cfg = to_config(ra);
      print_summary(run_experiment(cfg));
      if (!cfg.trace_path.empty()) std::cout << "trace       " << cfg.trace_path << "\n";
      if (!cfg.plot_path.empty()) std::cout << "plot        " << cfg.plot_path << "\n";
      return 0;
    }

    if (*sweep) {
      so.iters_2d = sweep_iters;
      so.iters_high_dim = sweep_iters_hd;
      so.parallel = !serial;
      if (!sweep_out.empty()) {
        std::filesystem::create_directories(sweep_out);
        so.out_dir = sweep_out;
      }
      const auto rows = reproduce_all(so);
      write_summary_csv(std::cout, rows);
      if (!sweep_out.empty()) {
        auto out = open_out((std::filesystem::path(sweep_out) / "summary.csv").string());
        write_summary_csv(out, rows);
      }
      for (const auto& r : rows)
        if (!r.ok) return 1;
      return 0;
    }

    if (*ref) {
      const BoxDomain dom(lo, hi, rdim);
      const Solver solver =
          solver_name == "random" ? random_search_solver(rseed) : solver_by_name(solver_name);
      const auto res = refute(solver, dom, budget, eps, rseed);
      const auto& w = res.refutation;
      std::cout << "solver      " << solver.name << "\n"
                << "queries     " << res.queries << " of " << budget << "\n"
                << "claim       " << join_point(res.claimed_point.coords()) << " (f = "
                << format_g12(res.claimed_value) << ")\n"
                << "witness     " << join_point(w.witness_point.coords()) << "\n"
                << "radius      " << format_g12(w.radius) << "\n"
                << "depth       " << format_g12(w.depth) << "\n"
                << "witness min " << format_g12(res.witness_min) << "\n"
                << "agrees      " << (res.agrees ? "yes" : "no") << "\n"
                << "verdict     " << (res.confirmed() ? "REFUTED" : "NOT REFUTED") << "\n";
      if (!witness_out.empty()) {
        auto out = open_out(witness_out);
        write_witness_csv(out, w);
      }
      if (!log_out.empty()) {
        auto out = open_out(log_out);
        write_log_csv(out, res.transcript);
      }
      return 0;
    }

    if (*cert) {
      const Benchmark b = lookup(cfunc, cdim);
      if (kind == "basin") {
        const double m = cbasin.value_or(b.defaults().basin_bound);
        const auto rep = basin_certificate_check(b, m, csamples, cseed);
        std::cout << "certificate basin m=" << format_g12(m) << " on " << b.name()
                  << " (d=" << b.dim() << ")\n"
                  << "samples     " << rep.samples << "\n"
                  << "refined     " << rep.refined << "\n"
                  << "violations  " << rep.violations << "\n";
        if (rep.witness)
          std::cout << "stationary  " << join_point(rep.witness->coords()) << " (|grad| = "
                    << format_g12(rep.witness_grad_norm) << ")\n";
        std::cout << "result      " << (rep.passed ? "PASS" : "FAIL") << "\n";
        return 0;
      }
      if (!lipschitz) throw InvalidInputError("--kind lipschitz needs --lipschitz L");
      auto session = b.session(ck, LogRetention::count_only);
      const auto r = lipschitz_grid_minimize(session, b.domain(), *lipschitz, ceps, cbudget);
      std::cout << "certificate lipschitz L=" << format_g12(*lipschitz)
                << " eps=" << format_g12(ceps) << " on " << b.name() << " (d=" << b.dim()
                << ")\n"
                << "spacing     " << format_g12(r.spacing) << "\n"
                << "lattice     " << r.lattice_size << "\n"
                << "queries     " << r.queries << "\n"
                << "point       " << join_point(r.point.coords()) << "\n"
                << "value       " << format_g12(r.value) << "\n"
                << "result      PASS (value within eps of the minimum if L holds)\n";
      return 0;
    }

    if (*list) {
      std::printf("%-11s %-7s %-18s %-8s %s\n", "name", "dims", "domain", "step", "basin");
      for (const auto& info : benchmark_registry()) {
        const std::string dims = info.max_dim == 0 ? ">=" + std::to_string(info.min_dim)
                                 : info.min_dim == info.max_dim
                                     ? std::to_string(info.min_dim)
                                     : std::to_string(info.min_dim) + "-" +
                                           std::to_string(info.max_dim);
        const std::string domain = "[" + format_g12(info.lo) + ", " + format_g12(info.hi) + "]";
        std::printf("%-11s %-7s %-18s %-8s %s\n", std::string(info.name).c_str(), dims.c_str(),
                    domain.c_str(), format_g12(info.defaults.step_size).c_str(),
                    format_g12(info.defaults.basin_bound).c_str());
      }
      return 0;
    }

    if (*plot) {
      if (svg_out.empty()) svg_out = std::filesystem::path(trace_in).replace_extension(".svg").string();
      render_plot(trace_in, svg_out);
      std::cout << svg_out << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
