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

#ifndef ORACLOPT_ADVERSARY_HPP
#define ORACLOPT_ADVERSARY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oraclopt/core.hpp"
#include "oraclopt/optimizer.hpp"
#include "oraclopt/oracle.hpp"

namespace oraclopt {

/// An oracle that answers 0 to every value and gradient query.
inline OracleSession zero_oracle(const BoxDomain& domain, unsigned precision_k = 12) {
  Target zero{
      [](std::span<const double>) { return 0.0; },
      [](std::span<const double>, std::span<double> g) { std::fill(g.begin(), g.end(), 0.0); }};
  return OracleSession(std::move(zero), domain, precision_k, LogRetention::full);
}

/// A continuous function that agrees with everything a solver saw yet has a
/// deeper minimum: w(x) = -depth * max(0, 1 - |x - witness| / radius).
struct Refutation {
  std::vector<Point> queried_points;
  Point witness_point;
  double radius;
  double depth;
  double epsilon;
  BoxDomain domain;
};

/// Tent value at x; exactly 0 outside the support ball.
inline double witness_eval(const Refutation& r, std::span<const double> x) {
  if (!r.domain.contains(x)) throw DomainError("witness evaluated outside its domain");
  const double dist = distance(x, r.witness_point.coords());
  if (dist >= r.radius) return 0.0;
  return -r.depth * (1.0 - dist / r.radius);
}
inline double witness_eval(const Refutation& r, const Point& x) {
  return witness_eval(r, x.coords());
}

/// Tent gradient; zero outside the support ball, where the tent is flat.
inline std::vector<double> witness_gradient(const Refutation& r, std::span<const double> x) {
  std::vector<double> g(x.size(), 0.0);
  const double dist = distance(x, r.witness_point.coords());
  if (dist >= r.radius || dist == 0.0) return g;
  const double s = r.depth / (r.radius * dist);
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = s * (x[i] - r.witness_point[i]);
  return g;
}

namespace detail {

inline constexpr std::size_t kLatticePool = 100'000;
inline constexpr std::size_t kRandomPool = 10'000;

/// Odd per-axis count n with n^d <= kLatticePool, so the box center is a
/// lattice point.
inline std::size_t pool_axis_count(std::size_t dim) {
  auto n = static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(kLatticePool), 1.0 / static_cast<double>(dim))));
  auto fits = [&](std::size_t c) {
    double total = 1.0;
    for (std::size_t i = 0; i < dim; ++i) total *= static_cast<double>(c);
    return total <= static_cast<double>(kLatticePool);
  };
  while (n > 1 && !fits(n)) --n;
  if (n % 2 == 0) --n;
  return std::max<std::size_t>(n, 1);
}

/// Nearest-query distance with a sweep along the first coordinate. Queries
/// must be sorted by coordinate 0. Stops early once the distance drops to
/// `cutoff` or below.
class NearestQuery {
 public:
  explicit NearestQuery(const std::vector<Point>& queries) : pts_(queries.front().dim()) {
    std::vector<std::size_t> order(queries.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return queries[a][0] < queries[b][0]; });
    for (std::size_t i : order) {
      pts_.push_back(queries[i].coords());
      keys_.push_back(queries[i][0]);
    }
  }

  double distance(std::span<const double> x, double cutoff) const {
    const auto mid = static_cast<std::size_t>(
        std::lower_bound(keys_.begin(), keys_.end(), x[0]) - keys_.begin());
    double best2 = std::numeric_limits<double>::infinity();
    const double cut2 = cutoff < 0.0 ? -1.0 : cutoff * cutoff;
    for (std::size_t i = mid; i < keys_.size(); ++i) {
      const double dx = keys_[i] - x[0];
      if (dx * dx >= best2) break;
      best2 = std::min(best2, squared_distance(pts_[i], x));
      if (best2 <= cut2) return std::sqrt(best2);
    }
    for (std::size_t i = mid; i-- > 0;) {
      const double dx = x[0] - keys_[i];
      if (dx * dx >= best2) break;
      best2 = std::min(best2, squared_distance(pts_[i], x));
      if (best2 <= cut2) return std::sqrt(best2);
    }
    return std::sqrt(best2);
  }

 private:
  PointSet pts_;
  std::vector<double> keys_;
};

}  // namespace detail

/// Builds the witness for a finished query transcript.
///
/// The witness point maximizes the distance to the nearest query over a
/// candidate pool (an odd lattice of at most 1e5 points, then 1e4 seeded
/// uniform points; first maximum wins). The radius is half that distance,
/// so every query lies strictly outside the support, and the depth is
/// 2 eps + eps / 10. With no queries the witness is the box center with
/// radius half the box width.
inline Refutation construct_witness(const std::vector<Point>& queried, const BoxDomain& domain,
                                    double eps, std::uint64_t seed = 0) {
  if (!(eps > 0.0)) throw InvalidInputError("epsilon must be positive");
  for (const auto& q : queried)
    if (q.dim() != domain.dim()) throw InvalidInputError("queried point dimension mismatch");
  const double depth = 2.0 * eps + eps / 10.0;
  if (queried.empty())
    return Refutation{{}, domain.center(), 0.5 * domain.width(), depth, eps, domain};

  const std::size_t d = domain.dim();
  const detail::NearestQuery nearest(queried);
  double best_dist = -1.0;
  std::vector<double> best(d);
  std::vector<double> cand(d);
  auto consider = [&]() {
    const double dist = nearest.distance(cand, best_dist);
    if (dist > best_dist) {
      best_dist = dist;
      best = cand;
    }
  };

  const std::size_t n = detail::pool_axis_count(d);
  const double step = n > 1 ? domain.width() / static_cast<double>(n - 1) : 0.0;
  std::vector<std::size_t> idx(d, 0);
  for (bool done = false; !done;) {
    for (std::size_t i = 0; i < d; ++i)
      cand[i] = idx[i] + 1 == n && n > 1 ? domain.hi()
                                         : domain.lo() + static_cast<double>(idx[i]) * step;
    consider();
    std::size_t i = d;
    while (true) {
      if (i == 0) {
        done = true;
        break;
      }
      --i;
      if (++idx[i] < n) break;
      idx[i] = 0;
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(domain.lo(), domain.hi());
  for (std::size_t s = 0; s < detail::kRandomPool; ++s) {
    for (double& c : cand) c = unif(rng);
    consider();
  }

  if (best_dist < 1e-9 * domain.width())
    throw SaturationError("queries leave no gap: widest hole has radius " +
                          std::to_string(best_dist) +
                          "; a refutation needs an unqueried region");
  return Refutation{queried, Point(best), 0.5 * best_dist, depth, eps, domain};
}

/// A black-box solver: consumes an oracle session within a query budget and
/// returns a point it claims is eps-optimal. The session answers with values
/// only; solvers may not assume anything about the sign of f.
struct Solver {
  std::string name;
  std::function<Point(OracleSession&, const BoxDomain&, std::size_t budget)> solve;
};

namespace detail {

/// Largest n with n^d <= limit.
inline std::size_t per_axis_within(std::size_t limit, std::size_t d) {
  std::size_t n = 1;
  auto pow_le = [&](std::size_t c) {
    double t = 1.0;
    for (std::size_t i = 0; i < d; ++i) t *= static_cast<double>(c);
    return t <= static_cast<double>(limit);
  };
  while (pow_le(n + 1)) ++n;
  return n;
}

}  // namespace detail

/// Evaluates a uniform lattice with as many points as the budget allows.
inline Solver uniform_grid_solver() {
  return {"grid", [](OracleSession& s, const BoxDomain& dom, std::size_t budget) {
            const std::size_t n = detail::per_axis_within(budget, dom.dim());
            const double m = n > 1 ? dom.width() / static_cast<double>(n - 1) : 2.0 * dom.width();
            return grid_argmin(s, grid_points(dom, dom.lower_corner(), m, budget)).point;
          }};
}

/// Evaluates `budget` seeded uniform points.
inline Solver random_search_solver(std::uint64_t seed = 0) {
  return {"random", [seed](OracleSession& s, const BoxDomain& dom, std::size_t budget) {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> unif(dom.lo(), dom.hi());
            PointSet pts(dom.dim());
            std::vector<double> p(dom.dim());
            for (std::size_t i = 0; i < budget; ++i) {
              for (double& c : p) c = unif(rng);
              pts.push_back(p);
            }
            return grid_argmin(s, pts).point;
          }};
}

/// The basin-grid descent, with its lattice and iteration count sized so the
/// whole run fits in the budget.
inline Solver basin_descent_solver() {
  return {"basin", [](OracleSession& s, const BoxDomain& dom, std::size_t budget) {
            if (budget < 3) throw BudgetError(budget);
            const std::size_t n = detail::per_axis_within((budget - 2) / 2, dom.dim());
            double lattice = 1.0;
            for (std::size_t i = 0; i < dom.dim(); ++i) lattice *= static_cast<double>(n);
            const auto per_iter = static_cast<std::size_t>(lattice) + 2;
            AlgoConfig cfg;
            cfg.basin_bound = n > 1 ? dom.width() / static_cast<double>(n - 1) : 2.0 * dom.width();
            cfg.step_size = 0.1;
            cfg.max_iters = budget / per_iter - 1;
            cfg.query_precision_k = s.default_precision();
            return minimize(s, dom, cfg).final().x;
          }};
}

inline std::vector<Solver> bundled_solvers() {
  return {uniform_grid_solver(), random_search_solver(), basin_descent_solver()};
}

inline Solver solver_by_name(std::string_view name) {
  for (auto& s : bundled_solvers())
    if (s.name == name) return s;
  throw LookupError("unknown solver '" + std::string(name) + "'");
}

struct RefuteResult {
  Refutation refutation;
  Point claimed_point;
  double claimed_value;  // what the solver observed at its claim
  double witness_min;    // w(witness_point) = -depth
  std::size_t queries;
  bool agrees;         // witness reproduces every logged response exactly
  bool gap_confirmed;  // claimed_value - witness_min >= 2 eps
  std::vector<QueryRecord> transcript;
  bool confirmed() const noexcept { return agrees && gap_confirmed; }
};

/// Runs `solver` against the zero oracle and builds a witness from its log.
///
/// Every logged value answer was 0 and the witness is exactly 0 (and flat)
/// at every logged point, so the transcript is identical on the witness.
/// Yet the witness dips to -2.1 eps, so the solver's claimed value 0 is not
/// eps-optimal for it.
inline RefuteResult refute(const Solver& solver, const BoxDomain& domain, std::size_t budget,
                           double eps, std::uint64_t seed = 0) {
  if (budget == 0) throw InvalidInputError("budget must be positive");
  OracleSession session = zero_oracle(domain);
  session.set_query_budget(budget);
  const Point claim = solver.solve(session, domain, budget);
  if (session.query_count() > budget) throw BudgetError(budget);

  std::vector<Point> queried;
  queried.reserve(session.log().size());
  for (const auto& rec : session.log()) queried.push_back(rec.point_as_double());
  Refutation r = construct_witness(queried, domain, eps, seed);

  bool agrees = true;
  for (std::size_t i = 0; i < session.log().size() && agrees; ++i) {
    const auto& rec = session.log()[i];
    const auto& p = queried[i];
    if (rec.kind == QueryKind::value) {
      agrees = witness_eval(r, p) == rec.response.front().to_double();
    } else {
      const auto g = witness_gradient(r, p.coords());
      for (std::size_t j = 0; j < g.size(); ++j)
        agrees = agrees && g[j] == rec.response[j].to_double();
    }
  }
  const double claimed_value = 0.0;
  const double wmin = witness_eval(r, r.witness_point);
  const bool gap = claimed_value - wmin >= 2.0 * eps;
  return RefuteResult{std::move(r), claim, claimed_value, wmin, session.query_count(),
                      agrees, gap, session.export_log()};
}

/// Samples the witness on a regular lattice (1-D or 2-D) for plotting.
inline void write_witness_csv(std::ostream& os, const Refutation& r, std::size_t per_axis = 201) {
  const BoxDomain& dom = r.domain;
  const std::size_t d = dom.dim();
  if (d > 2) throw InvalidInputError("witness dump supports dimension 1 or 2");
  const double step = dom.width() / static_cast<double>(per_axis - 1);
  os << (d == 1 ? "x1,w\n" : "x1,x2,w\n");
  std::vector<double> p(d);
  const std::size_t rows = d == 1 ? 1 : per_axis;
  for (std::size_t a = 0; a < per_axis; ++a) {
    for (std::size_t b = 0; b < rows; ++b) {
      p[0] = a + 1 == per_axis ? dom.hi() : dom.lo() + static_cast<double>(a) * step;
      if (d == 2) p[1] = b + 1 == per_axis ? dom.hi() : dom.lo() + static_cast<double>(b) * step;
      for (double c : p) os << format_g12(c) << ',';
      os << format_g12(witness_eval(r, p)) << '\n';
    }
  }
}

}  // namespace oraclopt

#endif  // ORACLOPT_ADVERSARY_HPP
