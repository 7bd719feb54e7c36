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

#ifndef ORACLOPT_HARNESS_HPP
#define ORACLOPT_HARNESS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oraclopt/benchmarks.hpp"
#include "oraclopt/core.hpp"
#include "oraclopt/optimizer.hpp"

namespace oraclopt {

enum class StartMode { corner, random, explicit_point };

inline constexpr std::size_t kDefaultIters2d = 50'000;
inline constexpr std::size_t kDefaultItersHighDim = 200'000;
inline constexpr std::size_t kDefaultSamples = 64;
/// Query allowance used to shorten the default iteration cap for runs with
/// very large lattices.
inline constexpr std::size_t kDefaultQueryCap = 200'000'000;

/// One experiment. Unset optionals fall back to the benchmark defaults:
/// step size and basin bound from its run parameters, a full grid when the
/// lattice fits the budget (sampled otherwise), and an iteration cap by
/// dimension, lowered so the run stays within `query_cap` queries.
struct ExperimentConfig {
  std::string function = "sphere";
  std::size_t dim = 2;
  std::optional<double> step_size;
  std::optional<double> basin_bound;
  std::optional<std::size_t> max_iters;
  std::optional<GridMode> grid_mode;
  std::size_t samples = kDefaultSamples;
  double grad_tolerance = 0.0;
  unsigned precision_k = 12;
  std::size_t grid_budget = kDefaultGridBudget;
  std::size_t query_cap = kDefaultQueryCap;
  std::uint64_t seed = 0;
  StartMode start = StartMode::corner;
  std::optional<Point> start_point;
  std::string trace_path;  // empty: no trace file
  std::string plot_path;   // empty: no plot
};

struct RunSummary {
  std::string function;
  std::size_t dim = 0;
  std::string grid;  // "full" or "sampled(n)"
  bool ok = false;
  std::string error;
  double start_f = 0.0;  // f(z_0)
  double final_f = 0.0;  // f(x_L)
  std::vector<double> final_point;
  double gap = 0.0;  // final_f - known minimum
  std::size_t iterations = 0;
  std::size_t queries = 0;
  std::string reason;
  double wall_seconds = 0.0;
};

inline std::size_t lattice_points_per_run(const BoxDomain& dom, double m) {
  const std::size_t per_axis =
      static_cast<std::size_t>(std::floor(dom.width() / m + 1e-9)) + 1;
  double total = 1.0;
  for (std::size_t i = 0; i < dom.dim(); ++i) total *= static_cast<double>(per_axis);
  return total >= static_cast<double>(std::numeric_limits<std::size_t>::max())
             ? std::numeric_limits<std::size_t>::max()
             : static_cast<std::size_t>(total);
}

/// Resolves defaults and builds the optimizer configuration.
inline AlgoConfig resolve_config(const ExperimentConfig& cfg, const Benchmark& b) {
  AlgoConfig algo;
  algo.step_size = cfg.step_size.value_or(b.defaults().step_size);
  algo.basin_bound = cfg.basin_bound.value_or(b.defaults().basin_bound);
  algo.grad_tolerance = cfg.grad_tolerance;
  algo.query_precision_k = cfg.precision_k;
  algo.grid_budget = cfg.grid_budget;
  algo.seed = cfg.seed;
  if (cfg.grid_mode) {
    algo.grid_mode = *cfg.grid_mode;
  } else if (algo.basin_bound > 0.0 &&
             lattice_points_per_run(b.domain(), algo.basin_bound) <= kDefaultGridBudget) {
    algo.grid_mode = GridMode::full();
  } else {
    algo.grid_mode = GridMode::sampled(cfg.samples);
  }
  if (cfg.max_iters) {
    algo.max_iters = *cfg.max_iters;
  } else {
    const std::size_t points = algo.grid_mode.kind == GridMode::Kind::full
                                   ? lattice_points_per_run(b.domain(), algo.basin_bound)
                                   : algo.grid_mode.n_samples;
    const std::size_t per_iter = std::min(points, std::numeric_limits<std::size_t>::max() - 2) + 2;
    const std::size_t by_dim = b.dim() <= 2 ? kDefaultIters2d : kDefaultItersHighDim;
    algo.max_iters = std::max<std::size_t>(1, std::min(by_dim, cfg.query_cap / per_iter));
  }
  switch (cfg.start) {
    case StartMode::corner:
      break;
    case StartMode::random: {
      std::mt19937_64 rng(cfg.seed);
      std::uniform_real_distribution<double> unif(b.domain().lo(), b.domain().hi());
      std::vector<double> p(b.dim());
      for (double& c : p) c = unif(rng);
      algo.start = Point(std::move(p));
      break;
    }
    case StartMode::explicit_point:
      if (!cfg.start_point) throw InvalidInputError("explicit start needs a start point");
      algo.start = *cfg.start_point;
      break;
  }
  return algo;
}

inline std::string grid_label(const GridMode& mode) {
  return mode.kind == GridMode::Kind::full ? "full"
                                           : "sampled(" + std::to_string(mode.n_samples) + ")";
}

inline void render_plot(const std::string& trace_path, const std::string& svg_path);

/// Runs one experiment and writes the trace (and plot) if paths are set.
/// Optimizer errors propagate; I/O errors name the path.
inline RunSummary run_experiment(const ExperimentConfig& cfg) {
  const Benchmark b = lookup(cfg.function, cfg.dim);
  const AlgoConfig algo = resolve_config(cfg, b);
  OracleSession session = b.session(cfg.precision_k, LogRetention::count_only);

  const auto t0 = std::chrono::steady_clock::now();
  const RunTrace trace = minimize(session, b.domain(), algo);
  const auto t1 = std::chrono::steady_clock::now();

  RunSummary s;
  s.function = b.name();
  s.dim = b.dim();
  s.grid = grid_label(algo.grid_mode);
  s.ok = true;
  s.start_f = trace.records.front().f_z;
  s.final_f = trace.final().f_x;
  const auto fx = trace.final().x.coords();
  s.final_point.assign(fx.begin(), fx.end());
  s.gap = s.final_f - b.min_value();
  s.iterations = trace.records.size() - 1;
  s.queries = trace.total_queries;
  s.reason = to_string(trace.reason);
  s.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

  if (!cfg.trace_path.empty()) {
    std::ofstream out(cfg.trace_path, std::ios::binary);
    if (!out) throw IoError("cannot write trace file " + cfg.trace_path);
    write_trace_csv(out, trace);
    if (!out) throw IoError("failed writing trace file " + cfg.trace_path);
  }
  if (!cfg.plot_path.empty()) {
    if (cfg.trace_path.empty()) throw InvalidInputError("plotting needs a trace path");
    render_plot(cfg.trace_path, cfg.plot_path);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Plotting
// ---------------------------------------------------------------------------

struct TracePoint {
  double iter;
  double f_x;
};

/// Reads (iter, f_x) from a trace CSV; ParseError carries the 1-based line.
inline std::vector<TracePoint> read_trace_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  ++lineno;
  if (line.rfind("iter,f_z,f_x,grad_norm,queries_cum", 0) != 0)
    throw ParseError(lineno, "unexpected header '" + line + "'");
  std::vector<TracePoint> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 5) throw ParseError(lineno, "expected at least 5 columns");
    try {
      std::size_t used = 0;
      const double iter = std::stod(cells[0], &used);
      if (used != cells[0].size()) throw std::invalid_argument("iter");
      const double fx = std::stod(cells[2], &used);
      if (used != cells[2].size()) throw std::invalid_argument("f_x");
      rows.push_back({iter, fx});
    } catch (const std::exception&) {
      throw ParseError(lineno, "non-numeric cell");
    }
  }
  return rows;
}

/// Standalone SVG with one polyline vertex per trace row. The value axis is
/// logarithmic when every value is positive, linear otherwise.
inline std::string trace_svg(const std::vector<TracePoint>& rows, const std::string& title) {
  if (rows.empty()) throw InvalidInputError("cannot plot an empty trace");
  const bool log_scale =
      std::all_of(rows.begin(), rows.end(), [](const TracePoint& p) { return p.f_x > 0.0; });
  auto yval = [&](double v) { return log_scale ? std::log10(v) : v; };
  double xmin = rows.front().iter, xmax = xmin, ymin = yval(rows.front().f_x), ymax = ymin;
  for (const auto& r : rows) {
    xmin = std::min(xmin, r.iter);
    xmax = std::max(xmax, r.iter);
    ymin = std::min(ymin, yval(r.f_x));
    ymax = std::max(ymax, yval(r.f_x));
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  constexpr double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"15\">"
     << title << "</text>\n"
     << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">iteration</text>\n"
     << "<text x=\"16\" y=\"" << (T + H - B) / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
     << (T + H - B) / 2 << ")\">" << (log_scale ? "log10 f(x_k)" : "f(x_k)") << "</text>\n"
     << "<text x=\"" << L - 6 << "\" y=\"" << py(ymax) + 4
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << format_g12(ymax)
     << "</text>\n"
     << "<text x=\"" << L - 6 << "\" y=\"" << py(ymin) + 4
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << format_g12(ymin)
     << "</text>\n"
     << "<text x=\"" << W - R << "\" y=\"" << H - B + 16
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << format_g12(xmax)
     << "</text>\n"
     << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
  char buf[64];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(rows[i].iter),
                  py(yval(rows[i].f_x)));
    os << buf;
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

inline void render_plot(const std::string& trace_path, const std::string& svg_path) {
  std::ifstream in(trace_path);
  if (!in) throw IoError("cannot read trace file " + trace_path);
  const auto rows = read_trace_csv(in);
  if (rows.empty()) throw InvalidInputError("trace " + trace_path + " has no rows");
  const std::string svg =
      trace_svg(rows, "Convergence: " + std::filesystem::path(trace_path).stem().string());
  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw IoError("cannot write plot file " + svg_path);
  out << svg;
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

struct SweepOptions {
  std::size_t grid_budget = kDefaultGridBudget;
  std::uint64_t seed = 0;
  std::string out_dir;  // empty: no trace files
  std::optional<std::size_t> iters_2d;
  std::optional<std::size_t> iters_high_dim;
  std::size_t samples = kDefaultSamples;
  bool parallel = true;
};

/// The nine standard runs: all six benchmarks in 2-D, then Rastrigin,
/// Sphere and Rosenbrock in 20-D on sampled grids.
inline std::vector<ExperimentConfig> sweep_configs(const SweepOptions& opt) {
  std::vector<ExperimentConfig> cfgs;
  auto add = [&](const char* name, std::size_t dim) {
    ExperimentConfig c;
    c.function = name;
    c.dim = dim;
    c.grid_budget = opt.grid_budget;
    c.seed = opt.seed;
    c.samples = opt.samples;
    if (dim > 2) {
      c.grid_mode = GridMode::sampled(opt.samples);
      c.max_iters = opt.iters_high_dim;
    } else {
      c.grid_mode = GridMode::full();
      c.max_iters = opt.iters_2d;
    }
    if (!opt.out_dir.empty())
      c.trace_path = (std::filesystem::path(opt.out_dir) /
                      (std::string(name) + "_d" + std::to_string(dim) + ".csv"))
                         .string();
    cfgs.push_back(std::move(c));
  };
  for (const char* name : {"rastrigin", "ackley", "sphere", "rosenbrock", "beale", "booth"})
    add(name, 2);
  for (const char* name : {"rastrigin", "sphere", "rosenbrock"}) add(name, 20);
  return cfgs;
}

/// Runs every sweep configuration; a failing run becomes a row with its
/// error message and the sweep carries on.
inline std::vector<RunSummary> reproduce_all(const SweepOptions& opt = {}) {
  const auto cfgs = sweep_configs(opt);
  auto run_one = [](const ExperimentConfig& c) {
    try {
      return run_experiment(c);
    } catch (const std::exception& e) {
      RunSummary s;
      s.function = c.function;
      s.dim = c.dim;
      s.grid = c.grid_mode ? grid_label(*c.grid_mode) : "auto";
      s.ok = false;
      s.error = e.what();
      return s;
    }
  };
  std::vector<RunSummary> rows;
  if (opt.parallel) {
    std::vector<std::future<RunSummary>> jobs;
    for (const auto& c : cfgs) jobs.push_back(std::async(std::launch::async, run_one, c));
    for (auto& j : jobs) rows.push_back(j.get());
  } else {
    for (const auto& c : cfgs) rows.push_back(run_one(c));
  }
  return rows;
}

/// Summary table as CSV. Wall time is left out so equal inputs give
/// byte-identical tables.
inline void write_summary_csv(std::ostream& os, const std::vector<RunSummary>& rows) {
  os << "function,dim,grid,status,start_f,final_f,gap,iterations,queries,reason,final_point\n";
  for (const auto& r : rows) {
    os << r.function << ',' << r.dim << ',' << r.grid << ',';
    if (!r.ok) {
      std::string err = r.error;
      std::replace(err.begin(), err.end(), ',', ';');
      os << "error: " << err << ",,,,,,,\n";
      continue;
    }
    os << "ok," << format_g12(r.start_f) << ',' << format_g12(r.final_f) << ','
       << format_g12(r.gap) << ',' << r.iterations << ',' << r.queries << ',' << r.reason << ',';
    for (std::size_t i = 0; i < r.final_point.size(); ++i)
      os << (i ? ";" : "") << format_g12(r.final_point[i]);
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

/// Flat `key = value` lines; '#' starts a comment.
inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(lineno, "empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline GridMode parse_grid_mode(const std::string& text, std::size_t samples) {
  if (text == "full") return GridMode::full();
  if (text == "sampled") return GridMode::sampled(samples);
  throw InvalidInputError("grid mode must be 'full' or 'sampled', got '" + text + "'");
}

inline Point parse_point(const std::string& text) {
  std::vector<double> c;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ';')) {
    try {
      c.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw InvalidInputError("bad coordinate '" + cell + "'");
    }
  }
  return Point(std::move(c));
}

/// Applies config-file entries on top of `cfg`. Keys mirror the CLI flags.
inline ExperimentConfig apply_config(ExperimentConfig cfg,
                                     const std::map<std::string, std::string>& kv) {
  auto num = [](const std::string& key, const std::string& v) {
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(key);
      return d;
    } catch (const std::exception&) {
      throw InvalidInputError("config key '" + key + "' needs a number, got '" + v + "'");
    }
  };
  std::optional<std::string> grid;
  for (const auto& [key, v] : kv) {
    if (key == "function") cfg.function = v;
    else if (key == "dim") cfg.dim = static_cast<std::size_t>(num(key, v));
    else if (key == "step") cfg.step_size = num(key, v);
    else if (key == "basin") cfg.basin_bound = num(key, v);
    else if (key == "iters") cfg.max_iters = static_cast<std::size_t>(num(key, v));
    else if (key == "grid-mode") grid = v;
    else if (key == "samples") cfg.samples = static_cast<std::size_t>(num(key, v));
    else if (key == "grad-tol") cfg.grad_tolerance = num(key, v);
    else if (key == "precision-k") cfg.precision_k = static_cast<unsigned>(num(key, v));
    else if (key == "grid-budget") cfg.grid_budget = static_cast<std::size_t>(num(key, v));
    else if (key == "query-cap") cfg.query_cap = static_cast<std::size_t>(num(key, v));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(num(key, v));
    else if (key == "start") {
      if (v == "corner") cfg.start = StartMode::corner;
      else if (v == "random") cfg.start = StartMode::random;
      else {
        cfg.start = StartMode::explicit_point;
        cfg.start_point = parse_point(v);
      }
    } else if (key == "out") cfg.trace_path = v;
    else if (key == "plot") cfg.plot_path = v;
    else throw InvalidInputError("unknown config key '" + key + "'");
  }
  if (grid) cfg.grid_mode = parse_grid_mode(*grid, cfg.samples);
  return cfg;
}

}  // namespace oraclopt

#endif  // ORACLOPT_HARNESS_HPP
