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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <oraclopt/adversary.hpp>

using namespace oraclopt;
using Catch::Approx;

namespace {

/// Brute-force nearest distance, independent of the sweep used inside the
/// witness search.
double nearest(const std::vector<Point>& pts, std::span<const double> x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) best = std::min(best, distance(p.coords(), x));
  return best;
}

}  // namespace

TEST_CASE("zero oracle", "[adversary]") {
  auto z = zero_oracle(BoxDomain(0, 1, 2));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0, 1);
  for (unsigned k = 1; k <= 14; ++k) {
    CHECK(z.query_value(Point{unif(rng), unif(rng)}, k).value() == 0);
  }
  CHECK(z.query_count() == 14);
  const auto g = z.query_gradient(Point{0.3, 0.4});
  CHECK(g[0].value() == 0);
  CHECK(g[1].value() == 0);
  CHECK(z.query_count() == 15);
  CHECK(z.log().size() == 15);
}

TEST_CASE("construct_witness examples", "[adversary]") {
  const auto r = construct_witness({Point{0.5}}, BoxDomain(0, 1, 1), 0.1);
  CHECK((r.witness_point[0] == 0.0 || r.witness_point[0] == 1.0));
  CHECK(r.radius == Approx(0.25));
  CHECK(r.depth == Approx(0.21));
  CHECK(r.depth >= 2 * r.epsilon);
  CHECK(witness_eval(r, Point{0.5}) == 0.0);
  CHECK(witness_eval(r, r.witness_point) == Approx(-0.21));

  const auto e = construct_witness({}, BoxDomain(0, 1, 2), 0.1);
  CHECK(e.witness_point == Point{0.5, 0.5});
  CHECK(e.radius == 0.5);

  const std::vector<Point> corners{Point{0.0, 0.0}, Point{0.0, 1.0}, Point{1.0, 0.0},
                                   Point{1.0, 1.0}};
  const auto c = construct_witness(corners, BoxDomain(0, 1, 2), 0.1);
  CHECK(c.witness_point == Point{0.5, 0.5});
  CHECK(c.radius == Approx(std::sqrt(2.0) / 4.0));
}

TEST_CASE("construct_witness errors", "[adversary]") {
  CHECK_THROWS_AS(construct_witness({}, BoxDomain(0, 1, 1), 0.0), InvalidInputError);
  CHECK_THROWS_AS(construct_witness({Point{0.1, 0.2}}, BoxDomain(0, 1, 1), 0.1),
                  InvalidInputError);
  // Every pool point of the 1-D lattice is itself queried.
  const std::size_t n = detail::pool_axis_count(1);
  std::vector<Point> dense;
  for (std::size_t i = 0; i < n; ++i)
    dense.push_back(Point{i + 1 == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1)});
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t s = 0; s < detail::kRandomPool; ++s) dense.push_back(Point{unif(rng)});
  CHECK_THROWS_AS(construct_witness(dense, BoxDomain(0, 1, 1), 0.1), SaturationError);
}

TEST_CASE("witness_eval examples", "[adversary]") {
  const Refutation r{{}, Point{0.5, 0.5}, 0.2, 0.3, 0.1, BoxDomain(0, 1, 2)};
  CHECK(witness_eval(r, Point{0.5, 0.5}) == -0.3);
  CHECK(witness_eval(r, Point{0.75, 0.5}) == 0.0);
  CHECK(witness_eval(r, Point{0.9, 0.9}) == 0.0);
  CHECK(witness_eval(r, Point{0.6, 0.5}) == Approx(-0.15));
  CHECK_THROWS_AS(witness_eval(r, Point{1.5, 0.5}), DomainError);

  const auto g = witness_gradient(r, std::vector<double>{0.6, 0.5});
  CHECK(g[0] == Approx(1.5));
  CHECK(g[1] == 0.0);
  CHECK(witness_gradient(r, std::vector<double>{0.9, 0.9}) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("witness properties", "[adversary][property]") {
  std::mt19937_64 rng(77);
  for (std::size_t d : {1u, 2u, 3u}) {
    const BoxDomain dom(-1, 2, d);
    std::uniform_real_distribution<double> unif(-1, 2);
    for (std::size_t nq : {1u, 10u, 300u}) {
      std::vector<Point> qs;
      for (std::size_t i = 0; i < nq; ++i) {
        std::vector<double> p(d);
        for (double& c : p) c = unif(rng);
        qs.emplace_back(std::move(p));
      }
      const auto r = construct_witness(qs, dom, 0.1, 5);
      INFO("d=" << d << " queries=" << nq);
      REQUIRE(dom.contains(r.witness_point));
      REQUIRE(nearest(qs, r.witness_point.coords()) > r.radius);
      REQUIRE(r.radius == Approx(0.5 * nearest(qs, r.witness_point.coords())));
      REQUIRE(r.depth >= 2.0 * r.epsilon);
      // Exactly zero at every query, not merely small.
      for (const auto& q : qs) REQUIRE(witness_eval(r, q) == 0.0);
      REQUIRE(witness_eval(r, r.witness_point) == -r.depth);

      const double slope = r.depth / r.radius;
      std::vector<double> a(d), b(d);
      for (int s = 0; s < 10000; ++s) {
        for (std::size_t i = 0; i < d; ++i) {
          // Half the pairs are drawn near the apex so the slope is exercised.
          const double c = r.witness_point[i];
          a[i] = s % 2 ? std::clamp(c + (unif(rng) - 0.5) * r.radius, -1.0, 2.0) : unif(rng);
          b[i] = s % 2 ? std::clamp(c + (unif(rng) - 0.5) * r.radius, -1.0, 2.0) : unif(rng);
        }
        const double wa = witness_eval(r, a), wb = witness_eval(r, b);
        REQUIRE(std::fabs(wa - wb) <= slope * distance(a, b) + 1e-12);
        REQUIRE(wa >= -r.depth);
      }
    }
  }
}

TEST_CASE("refute examples", "[adversary]") {
  const auto grid = refute(uniform_grid_solver(), BoxDomain(0, 1, 2), 1000, 0.1);
  CHECK(grid.confirmed());
  CHECK(grid.queries <= 1000);
  CHECK(grid.witness_min <= -0.2);

  const Solver idle{"idle", [](OracleSession&, const BoxDomain& dom, std::size_t) {
                      return dom.center();
                    }};
  const auto none = refute(idle, BoxDomain(0, 1, 2), 10, 0.1);
  CHECK(none.confirmed());
  CHECK(none.queries == 0);
  CHECK(none.refutation.queried_points.empty());

  const auto basin = refute(basin_descent_solver(), BoxDomain(0, 1, 2), 1000, 0.1);
  CHECK(basin.confirmed());
  CHECK(basin.queries <= 1000);
}

TEST_CASE("refute enforces the budget", "[adversary]") {
  const Solver greedy{"greedy", [](OracleSession& s, const BoxDomain& dom, std::size_t) {
                        for (int i = 0; i < 100; ++i) s.query_value(dom.center());
                        return dom.center();
                      }};
  CHECK_THROWS_AS(refute(greedy, BoxDomain(0, 1, 1), 10, 0.1), BudgetError);
  CHECK_THROWS_AS(refute(greedy, BoxDomain(0, 1, 1), 0, 0.1), InvalidInputError);
}

TEST_CASE("every bundled solver is refuted", "[adversary][property]") {
  for (const auto& solver : bundled_solvers()) {
    for (std::size_t d : {1u, 2u}) {
      for (std::size_t budget : {10u, 100u, 1000u, 10000u}) {
        const BoxDomain dom(0, 1, d);
        const auto res = refute(solver, dom, budget, 0.1);
        INFO(solver.name << " d=" << d << " budget=" << budget);
        REQUIRE(res.queries <= budget);
        REQUIRE(res.queries > 0);
        REQUIRE(res.agrees);
        REQUIRE(res.gap_confirmed);
        REQUIRE(res.confirmed());
      }
    }
  }
}

TEST_CASE("solver lookup", "[adversary]") {
  CHECK(solver_by_name("grid").name == "grid");
  CHECK(solver_by_name("random").name == "random");
  CHECK(solver_by_name("basin").name == "basin");
  CHECK_THROWS_AS(solver_by_name("oracle"), LookupError);
}

TEST_CASE("witness CSV dump", "[adversary]") {
  const Refutation r{{}, Point{0.5}, 0.25, 0.21, 0.1, BoxDomain(0, 1, 1)};
  std::ostringstream os;
  write_witness_csv(os, r, 5);
  CHECK(os.str() == "x1,w\n0,0\n0.25,0\n0.5,-0.21\n0.75,0\n1,0\n");

  const Refutation r2{{}, Point{0.5, 0.5}, 0.25, 0.21, 0.1, BoxDomain(0, 1, 2)};
  std::ostringstream os2;
  write_witness_csv(os2, r2, 3);
  std::size_t lines = 0;
  for (char ch : os2.str()) lines += ch == '\n';
  CHECK(lines == 10);

  const Refutation r3{{}, Point{0.5, 0.5, 0.5}, 0.25, 0.21, 0.1, BoxDomain(0, 1, 3)};
  std::ostringstream os3;
  CHECK_THROWS_AS(write_witness_csv(os3, r3), InvalidInputError);
}
