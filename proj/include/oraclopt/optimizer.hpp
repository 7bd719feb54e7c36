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

#ifndef ORACLOPT_OPTIMIZER_HPP
#define ORACLOPT_OPTIMIZER_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "oraclopt/core.hpp"
#include "oraclopt/oracle.hpp"

namespace oraclopt {

/// How the lattice of spacing m is visited each iteration.
struct GridMode {
  enum class Kind { full, sampled };

  Kind kind = Kind::full;
  std::size_t n_samples = 0;

  static GridMode full() { return {Kind::full, 0}; }
  static GridMode sampled(std::size_t n) { return {Kind::sampled, n}; }
};

inline constexpr std::size_t kDefaultGridBudget = 1'000'000;

struct AlgoConfig {
  double basin_bound = 0.0;  // lattice spacing m
  double step_size = 0.0;    // gradient step t
  std::size_t max_iters = 1000;
  GridMode grid_mode = GridMode::full();
  double grad_tolerance = 0.0;  // 0 disables the early stop
  unsigned query_precision_k = 12;
  std::size_t grid_budget = kDefaultGridBudget;
  std::uint64_t seed = 0;  // sampled grids only
  /// Anchor of the first lattice; the lower corner (a, ..., a) when unset.
  std::optional<Point> start;

  void validate() const {
    if (!(basin_bound > 0.0) || !std::isfinite(basin_bound))
      throw InvalidInputError("basin bound m must be positive");
    if (!(step_size > 0.0) || !std::isfinite(step_size))
      throw InvalidInputError("step size t must be positive");
    if (!(grad_tolerance >= 0.0)) throw InvalidInputError("gradient tolerance must be >= 0");
    if (query_precision_k == 0) throw InvalidInputError("query precision must be positive");
    if (grid_mode.kind == GridMode::Kind::sampled && grid_mode.n_samples == 0)
      throw InvalidInputError("sampled grid needs at least one sample");
  }
};

// ---------------------------------------------------------------------------
// Lattice construction
// ---------------------------------------------------------------------------

/// Coordinates c + j*m (integer j) inside [lo, hi]; index 0 of the result is
/// the lowest, and c itself is always present.
inline std::vector<double> lattice_axis(double lo, double hi, double c, double m) {
  constexpr double kSlack = 1e-9;
  const auto below = static_cast<long long>(std::floor((c - lo) / m + kSlack));
  const auto above = static_cast<long long>(std::floor((hi - c) / m + kSlack));
  std::vector<double> axis;
  axis.reserve(static_cast<std::size_t>(below + above + 1));
  for (long long j = -below; j <= above; ++j)
    axis.push_back(j == 0 ? c : std::clamp(c + static_cast<double>(j) * m, lo, hi));
  return axis;
}

namespace detail {

/// Product of sizes, saturating at SIZE_MAX.
inline std::size_t lattice_count(const std::vector<std::vector<double>>& axes) {
  std::size_t count = 1;
  for (const auto& a : axes) {
    if (a.size() != 0 && count > std::numeric_limits<std::size_t>::max() / a.size())
      return std::numeric_limits<std::size_t>::max();
    count *= a.size();
  }
  return count;
}

}  // namespace detail

/// Lattice of spacing m phased through `anchor` and clipped to the domain.
///
/// Full mode enumerates the Cartesian product in lexicographic index order
/// (first coordinate most significant). Sampled mode returns the anchor
/// followed by n_samples - 1 lattice points: even draws are uniform over the
/// whole lattice, odd draws re-draw one to three coordinates of the anchor's
/// lattice index. Both modes refuse to produce more than `budget` points.
template <class Rng>
PointSet grid_points(const BoxDomain& domain, const Point& anchor, double m,
                     const GridMode& mode, Rng& rng,
                     std::size_t budget = kDefaultGridBudget) {
  if (!(m > 0.0)) throw InvalidInputError("grid spacing must be positive");
  if (anchor.dim() != domain.dim()) throw InvalidInputError("anchor dimension mismatch");
  const Point a = domain.clip(anchor.coords());
  const std::size_t d = domain.dim();

  std::vector<std::vector<double>> axes;
  std::vector<std::size_t> anchor_index;
  axes.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    axes.push_back(lattice_axis(domain.lo(), domain.hi(), a[i], m));
    anchor_index.push_back(static_cast<std::size_t>(
        std::floor((a[i] - domain.lo()) / m + 1e-9)));
  }

  PointSet out(d);
  std::vector<double> p(d);
  if (mode.kind == GridMode::Kind::full) {
    const std::size_t count = detail::lattice_count(axes);
    if (count > budget) throw GridBudgetError(count, budget);
    out.reserve(count);
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t i = 0; i < d; ++i) p[i] = axes[i][0];
    while (true) {
      out.push_back(p);
      std::size_t i = d;
      while (i > 0) {
        --i;
        if (++idx[i] < axes[i].size()) {
          p[i] = axes[i][idx[i]];
          break;
        }
        idx[i] = 0;
        p[i] = axes[i][0];
        if (i == 0) return out;
      }
    }
  }

  if (mode.n_samples > budget) throw GridBudgetError(mode.n_samples, budget);
  out.reserve(mode.n_samples);
  out.push_back(a.coords());
  const std::size_t max_redraw = std::min<std::size_t>(d, 3);
  std::uniform_int_distribution<std::size_t> pick_axis(0, d - 1);
  std::uniform_int_distribution<std::size_t> pick_count(1, max_redraw);
  for (std::size_t s = 1; s < mode.n_samples; ++s) {
    if (s % 2 == 0) {
      for (std::size_t i = 0; i < d; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, axes[i].size() - 1);
        p[i] = axes[i][pick(rng)];
      }
    } else {
      for (std::size_t i = 0; i < d; ++i) p[i] = axes[i][anchor_index[i]];
      const std::size_t redraw = pick_count(rng);
      for (std::size_t r = 0; r < redraw; ++r) {
        const std::size_t i = pick_axis(rng);
        std::uniform_int_distribution<std::size_t> pick(0, axes[i].size() - 1);
        p[i] = axes[i][pick(rng)];
      }
    }
    out.push_back(p);
  }
  return out;
}

/// Full-mode convenience overload.
inline PointSet grid_points(const BoxDomain& domain, const Point& anchor, double m,
                            std::size_t budget = kDefaultGridBudget) {
  std::mt19937_64 unused(0);
  return grid_points(domain, anchor, m, GridMode::full(), unused, budget);
}

struct GridMinimum {
  std::size_t index;
  Point point;
  double value;
};

/// First point attaining the smallest oracle value; each point is queried once.
inline GridMinimum grid_argmin(OracleSession& session, const PointSet& points) {
  if (points.empty()) throw InvalidInputError("grid_argmin needs at least one point");
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double v = session.value(points[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  return {best, points.point(best), best_value};
}

struct DescentStep {
  Point next;
  double grad_norm;
};

/// x - t * grad f(x), clipped to the session domain, plus |grad f(x)|.
inline DescentStep descend(OracleSession& session, const Point& x, double t) {
  if (!session.has_gradient()) throw UnsupportedError("target provides no gradient oracle");
  std::vector<double> g(x.dim());
  session.gradient(x.coords(), g);
  std::vector<double> y(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) y[i] = x[i] - t * g[i];
  return {session.domain().clip(y), norm(g)};
}

inline Point gd_step(OracleSession& session, const Point& x, double t) {
  return descend(session, x, t).next;
}

// ---------------------------------------------------------------------------
// Basin-grid descent
// ---------------------------------------------------------------------------

struct IterationRecord {
  std::size_t iter;
  Point z;  // grid minimizer
  Point x;  // after the gradient step from z
  double f_z;
  double f_x;
  double grad_norm;  // |grad f(z)|
  std::size_t queries_cum;
};

enum class TerminalReason { max_iters, grad_tolerance };

inline const char* to_string(TerminalReason r) noexcept {
  return r == TerminalReason::max_iters ? "max_iters" : "grad_tolerance";
}

struct RunTrace {
  std::vector<IterationRecord> records;
  std::size_t total_queries = 0;
  TerminalReason reason = TerminalReason::max_iters;

  const IterationRecord& final() const { return records.back(); }
};

/// Grid-anchored gradient descent given a lower bound m on the basin of the
/// global minimizer.
///
/// Iteration 0 takes the lattice through the start anchor (default: the lower
/// corner), z_0 = its argmin, x_0 = z_0 - t grad f(z_0). Iteration k >= 1
/// re-phases the lattice through x_{k-1}, so x_{k-1} is itself a candidate
/// and f(z_k) <= f(x_{k-1}). All evaluations go through `session`.
inline RunTrace minimize(OracleSession& session, const BoxDomain& domain,
                         const AlgoConfig& config) {
  config.validate();
  if (!session.has_gradient()) throw UnsupportedError("target provides no gradient oracle");
  if (session.domain() != domain) throw InvalidInputError("session domain differs from run domain");
  if (config.start && config.start->dim() != domain.dim())
    throw InvalidInputError("start point dimension mismatch");

  std::mt19937_64 rng(config.seed);
  RunTrace trace;
  trace.records.reserve(std::min<std::size_t>(config.max_iters, 1'000'000) + 1);

  Point anchor = config.start ? domain.clip(config.start->coords()) : domain.lower_corner();
  for (std::size_t k = 0;; ++k) {
    const PointSet grid = grid_points(domain, anchor, config.basin_bound, config.grid_mode,
                                      rng, config.grid_budget);
    GridMinimum zmin = grid_argmin(session, grid);
    DescentStep step = descend(session, zmin.point, config.step_size);
    const double f_x = session.value(step.next.coords());
    trace.records.push_back(IterationRecord{k, std::move(zmin.point), step.next, zmin.value,
                                            f_x, step.grad_norm, session.query_count()});
    if (config.grad_tolerance > 0.0 && step.grad_norm <= config.grad_tolerance) {
      trace.reason = TerminalReason::grad_tolerance;
      break;
    }
    if (k >= config.max_iters) {
      trace.reason = TerminalReason::max_iters;
      break;
    }
    anchor = std::move(step.next);
  }
  trace.total_queries = session.query_count();
  return trace;
}

// ---------------------------------------------------------------------------
// Convergence checkers
// ---------------------------------------------------------------------------

struct CheckReport {
  bool passed = true;
  bool precondition_met = true;
  std::size_t checked = 0;
  std::optional<std::size_t> first_violation;  // iteration index
  double worst_slack = std::numeric_limits<double>::infinity();  // min(rhs - lhs)
  std::string message;
};

/// f(x_k) <= f(z_k) - (t/2) |grad f(z_k)|^2 on every step, to 1e-9.
inline CheckReport descent_check(const RunTrace& trace, double t, double grad_lipschitz) {
  constexpr double kTol = 1e-9;
  CheckReport report;
  if (!(t > 0.0) || !(grad_lipschitz > 0.0) || t > 1.0 / grad_lipschitz) {
    report.precondition_met = false;
    report.passed = false;
    report.message = "step size exceeds 1/L";
    return report;
  }
  for (const auto& r : trace.records) {
    const double rhs = r.f_z - 0.5 * t * r.grad_norm * r.grad_norm;
    const double slack = rhs - r.f_x;
    report.worst_slack = std::min(report.worst_slack, slack);
    ++report.checked;
    if (slack < -kTol && !report.first_violation) {
      report.first_violation = r.iter;
      report.passed = false;
      report.message = "descent inequality violated at iteration " + std::to_string(r.iter);
    }
  }
  return report;
}

/// f(x_k) - f* <= |x_M - x*|^2 / (2 t (k - M)) for every recorded k > M, to 1e-9.
inline CheckReport rate_bound_check(const RunTrace& trace, double t, std::size_t m_index,
                                    const Point& minimizer, double min_value) {
  constexpr double kTol = 1e-9;
  CheckReport report;
  if (m_index >= trace.records.size()) {
    report.precondition_met = false;
    report.passed = false;
    report.message = "trace has no iteration " + std::to_string(m_index);
    return report;
  }
  const double r0 = squared_distance(trace.records[m_index].x.coords(), minimizer.coords());
  for (const auto& r : trace.records) {
    if (r.iter <= m_index) continue;
    const double bound = r0 / (2.0 * t * static_cast<double>(r.iter - m_index));
    const double slack = bound - (r.f_x - min_value);
    report.worst_slack = std::min(report.worst_slack, slack);
    ++report.checked;
    if (slack < -kTol && !report.first_violation) {
      report.first_violation = r.iter;
      report.passed = false;
      report.message = "rate bound violated at iteration " + std::to_string(r.iter);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Trace CSV
// ---------------------------------------------------------------------------

inline std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// iter,f_z,f_x,grad_norm,queries_cum,x1..xd with 12 significant digits.
inline void write_trace_csv(std::ostream& os, const RunTrace& trace) {
  const std::size_t d = trace.records.empty() ? 0 : trace.records.front().x.dim();
  os << "iter,f_z,f_x,grad_norm,queries_cum";
  for (std::size_t i = 1; i <= d; ++i) os << ",x" << i;
  os << '\n';
  for (const auto& r : trace.records) {
    os << r.iter << ',' << format_g12(r.f_z) << ',' << format_g12(r.f_x) << ','
       << format_g12(r.grad_norm) << ',' << r.queries_cum;
    for (double c : r.x.coords()) os << ',' << format_g12(c);
    os << '\n';
  }
}

}  // namespace oraclopt

#endif  // ORACLOPT_OPTIMIZER_HPP
