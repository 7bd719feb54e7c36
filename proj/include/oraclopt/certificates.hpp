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

#ifndef ORACLOPT_CERTIFICATES_HPP
#define ORACLOPT_CERTIFICATES_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "oraclopt/benchmarks.hpp"
#include "oraclopt/core.hpp"
#include "oraclopt/optimizer.hpp"
#include "oraclopt/oracle.hpp"

namespace oraclopt {

/// A global property parameterized by a real: a Lipschitz constant L or a
/// basin side length m.
struct Certificate {
  enum class Kind { lipschitz, basin };

  Kind kind;
  double parameter;

  Certificate(Kind k, double p) : kind(k), parameter(p) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw InvalidInputError("certificate parameter must be positive");
  }
};

/// |f(x) - f(y)| <= L |x - y|.
inline bool lipschitz_holds(double lipschitz, const Point& x, const Point& y, double fx,
                            double fy) {
  if (x.dim() != y.dim()) throw InvalidInputError("lipschitz_holds: dimension mismatch");
  return std::fabs(fx - fy) <= lipschitz * distance(x.coords(), y.coords());
}

/// Lattice spacing that puts every point of a d-cube within eps / L of a
/// lattice vertex: a cell center sits delta * sqrt(d) / 2 from its corners.
inline double lipschitz_spacing(double lipschitz, double eps, std::size_t dim) {
  return 2.0 * eps / (lipschitz * std::sqrt(static_cast<double>(dim)));
}

/// ceil(width / delta) + 1 points per axis.
inline std::size_t lipschitz_axis_count(double width, double delta) {
  return static_cast<std::size_t>(std::ceil(width / delta - 1e-9)) + 1;
}

struct LipschitzResult {
  Point point;
  double value;
  double spacing;
  std::size_t lattice_size;
  std::size_t queries;
};

/// Exhaustive lattice search certified by a known Lipschitz bound: the
/// returned value is within eps of the true minimum.
inline LipschitzResult lipschitz_grid_minimize(OracleSession& session, const BoxDomain& domain,
                                               double lipschitz, double eps,
                                               std::size_t budget = kDefaultGridBudget) {
  if (!(lipschitz > 0.0) || !(eps > 0.0))
    throw InvalidInputError("lipschitz_grid_minimize needs L > 0 and eps > 0");
  const std::size_t d = domain.dim();
  const double delta = lipschitz_spacing(lipschitz, eps, d);
  const std::size_t n = lipschitz_axis_count(domain.width(), delta);

  std::size_t count = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (count > std::numeric_limits<std::size_t>::max() / n) {
      count = std::numeric_limits<std::size_t>::max();
      break;
    }
    count *= n;
  }
  if (count > budget) throw GridBudgetError(count, budget);

  std::vector<double> axis(n);
  for (std::size_t j = 0; j < n; ++j)
    axis[j] = j + 1 == n ? domain.hi() : domain.lo() + static_cast<double>(j) * delta;

  const std::size_t before = session.query_count();
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> p(d, axis[0]);
  std::vector<double> best_p = p;
  double best = std::numeric_limits<double>::infinity();
  for (bool done = false; !done;) {
    const double v = session.value(p);
    if (v < best) {
      best = v;
      best_p = p;
    }
    std::size_t i = d;
    while (true) {
      if (i == 0) {
        done = true;
        break;
      }
      --i;
      if (++idx[i] < n) {
        p[i] = axis[idx[i]];
        break;
      }
      idx[i] = 0;
      p[i] = axis[0];
    }
  }
  return {Point(best_p), best, delta, count, session.query_count() - before};
}

struct BasinReport {
  bool passed = true;
  std::size_t samples = 0;
  std::size_t refined = 0;  // Newton refinements that stayed in the cube
  std::size_t violations = 0;
  std::optional<Point> witness;  // a non-minimizer stationary point, if found
  double witness_grad_norm = 0.0;
};

namespace detail {

/// Newton iteration on grad f = 0 with a finite-difference Jacobian, kept
/// inside [lo, hi] per coordinate. Returns the last iterate, or nullopt if
/// it left the region.
inline std::optional<Point> refine_stationary(const Benchmark& b, Point x,
                                              std::span<const double> lo,
                                              std::span<const double> hi) {
  const std::size_t d = x.dim();
  Eigen::MatrixXd jac(d, d);
  Eigen::VectorXd g(d);
  auto grad_of = [&](std::span<const double> p) {
    const Point gp = b.grad(p);
    Eigen::VectorXd out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = gp[i];
    return out;
  };
  std::vector<double> cur(x.coords().begin(), x.coords().end());
  for (int it = 0; it < 60; ++it) {
    g = grad_of(cur);
    if (g.norm() <= 1e-14) break;
    for (std::size_t j = 0; j < d; ++j) {
      const double h = 1e-7 * std::max(1.0, std::fabs(cur[j]));
      std::vector<double> up = cur, dn = cur;
      up[j] += h;
      dn[j] -= h;
      jac.col(static_cast<Eigen::Index>(j)) = (grad_of(up) - grad_of(dn)) / (2.0 * h);
    }
    const Eigen::VectorXd step = jac.fullPivLu().solve(g);
    if (!step.allFinite()) return std::nullopt;
    double scale = 1.0;
    std::vector<double> next(d);
    for (int halving = 0; halving < 30; ++halving) {
      for (std::size_t i = 0; i < d; ++i) next[i] = cur[i] - scale * step[static_cast<Eigen::Index>(i)];
      if (grad_of(next).norm() < g.norm()) break;
      scale *= 0.5;
    }
    for (std::size_t i = 0; i < d; ++i)
      if (next[i] < lo[i] || next[i] > hi[i]) return std::nullopt;
    if (next == cur) break;
    cur = std::move(next);
  }
  return Point(std::move(cur));
}

}  // namespace detail

/// Sampling refuter for the basin predicate "x in B_m(x*), x != x* implies
/// grad f(x) != 0". Samples the side-m cube around the known minimizer,
/// tests each sample and then hunts for a stationary point near it. A
/// failed report carries the stationary point found; a passed report is
/// evidence, not proof.
inline BasinReport basin_certificate_check(const Benchmark& b, double m, std::size_t n_samples,
                                           std::uint64_t seed = 0) {
  constexpr double kZeroGrad = 1e-12;
  const BoxDomain& dom = b.domain();
  if (!(m > 0.0) || m > dom.width())
    throw InvalidInputError("basin side m must lie in (0, domain width]");
  if (n_samples == 0) throw InvalidInputError("basin check needs at least one sample");
  const std::size_t d = b.dim();
  const Point& xstar = b.minimizer();
  std::vector<double> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = std::max(dom.lo(), xstar[i] - 0.5 * m);
    hi[i] = std::min(dom.hi(), xstar[i] + 0.5 * m);
  }
  const double same_point = 1e-6 * m;

  std::mt19937_64 rng(seed);
  BasinReport report;
  std::vector<double> x(d);
  while (report.samples < n_samples) {
    for (std::size_t i = 0; i < d; ++i)
      x[i] = std::uniform_real_distribution<double>(lo[i], hi[i])(rng);
    if (distance(x, xstar.coords()) == 0.0) continue;
    ++report.samples;
    auto record = [&](const Point& p, double gn) {
      ++report.violations;
      if (!report.witness) {
        report.witness = p;
        report.witness_grad_norm = gn;
      }
      report.passed = false;
    };
    const double gn = norm(b.grad(x).coords());
    if (gn <= kZeroGrad) {
      record(Point(x), gn);
      continue;
    }
    auto stationary = detail::refine_stationary(b, Point(x), lo, hi);
    if (!stationary) continue;
    ++report.refined;
    const double sgn = norm(b.grad(*stationary).coords());
    if (sgn <= kZeroGrad && distance(stationary->coords(), xstar.coords()) > same_point)
      record(*stationary, sgn);
  }
  return report;
}

}  // namespace oraclopt

#endif  // ORACLOPT_CERTIFICATES_HPP
