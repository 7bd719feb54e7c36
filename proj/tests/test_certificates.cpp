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

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <oraclopt/benchmarks.hpp>
#include <oraclopt/certificates.hpp>

using namespace oraclopt;
using Catch::Approx;

namespace {

using Fn = std::function<double(std::span<const double>)>;

/// Minimum over a regular lattice with `per_axis` points per coordinate.
double brute_min(const Fn& f, const BoxDomain& dom, std::size_t per_axis) {
  const std::size_t d = dom.dim();
  const double step = dom.width() / static_cast<double>(per_axis - 1);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> p(d);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t i = 0; i < d; ++i) p[i] = dom.lo() + static_cast<double>(idx[i]) * step;
    best = std::min(best, f(p));
    std::size_t i = 0;
    while (i < d && ++idx[i] == per_axis) idx[i++] = 0;
    if (i == d) return best;
  }
}

}  // namespace

TEST_CASE("lipschitz_holds examples", "[certificates]") {
  CHECK(lipschitz_holds(1.0, Point{0.0}, Point{1.0}, 0.0, 0.5));
  CHECK_FALSE(lipschitz_holds(1.0, Point{0.0}, Point{1.0}, 0.0, 2.0));
  CHECK_THROWS_AS(lipschitz_holds(1.0, Point{0.0}, Point{1.0, 0.0}, 0.0, 0.0),
                  InvalidInputError);
}

TEST_CASE("Sphere on [-1,1]^2 is 4-Lipschitz on sampled pairs", "[certificates][property]") {
  const auto b = lookup("sphere", 2);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const Point x{unif(rng), unif(rng)};
    const Point y{unif(rng), unif(rng)};
    const double fx = b.eval(x), fy = b.eval(y);
    REQUIRE(lipschitz_holds(4.0, x, y, fx, fy));
    REQUIRE(lipschitz_holds(4.0, y, x, fy, fx));
  }
}

TEST_CASE("certificate parameters must be positive", "[certificates]") {
  CHECK_NOTHROW(Certificate(Certificate::Kind::basin, 0.5));
  CHECK_THROWS_AS(Certificate(Certificate::Kind::lipschitz, 0.0), InvalidInputError);
  CHECK_THROWS_AS(Certificate(Certificate::Kind::basin, -1.0), InvalidInputError);
}

TEST_CASE("lipschitz_grid_minimize examples", "[certificates]") {
  OracleSession kink(Target{[](std::span<const double> x) { return std::fabs(x[0] - 0.3); }, {}},
                     BoxDomain(0, 1, 1));
  const auto r = lipschitz_grid_minimize(kink, kink.domain(), 1.0, 0.1);
  CHECK(r.spacing == Approx(0.2));
  CHECK(r.lattice_size == 6);
  CHECK(r.queries == 6);
  CHECK(r.value <= 0.1);

  OracleSession flat(Target{[](std::span<const double>) { return 4.25; }, {}},
                     BoxDomain(-1, 1, 2));
  const auto c = lipschitz_grid_minimize(flat, flat.domain(), 3.0, 0.5);
  CHECK(c.value == 4.25);
  CHECK(c.point == Point{-1.0, -1.0});

  CHECK_THROWS_AS(lipschitz_grid_minimize(flat, flat.domain(), 0.0, 0.5), InvalidInputError);
}

TEST_CASE("Booth with its sup-gradient bound", "[certificates]") {
  // The gradient is affine, so its norm peaks at a corner of the box.
  const auto b = lookup("booth", 2);
  double sup = 0.0;
  for (double x : {-10.0, 10.0})
    for (double y : {-10.0, 10.0}) sup = std::max(sup, norm(b.grad(Point{x, y}).coords()));
  auto s = b.session(12, LogRetention::count_only);
  const double eps = 1.0;
  const std::size_t n = lipschitz_axis_count(20.0, lipschitz_spacing(sup, eps, 2));
  const auto r = lipschitz_grid_minimize(s, b.domain(), sup, eps, 25'000'000);
  CHECK(r.lattice_size == n * n);
  CHECK(r.queries == n * n);
  CHECK(r.value <= 1.0);
  const double fine = brute_min([&](std::span<const double> x) { return b.eval(x); },
                                b.domain(), 2001);
  CHECK(r.value <= fine + eps);
}

TEST_CASE("lipschitz_grid_minimize budget", "[certificates]") {
  auto s = lookup("booth", 2).session();
  try {
    lipschitz_grid_minimize(s, s.domain(), 300.0, 0.01, 1000);
    FAIL("expected a budget error");
  } catch (const GridBudgetError& e) {
    const std::size_t n = lipschitz_axis_count(20.0, lipschitz_spacing(300.0, 0.01, 2));
    CHECK(e.required() == n * n);
  }
  CHECK(s.query_count() == 0);
}

TEST_CASE("certified value is within eps of a finer brute force", "[certificates][property]") {
  struct Case {
    Fn f;
    BoxDomain dom;
    double lipschitz;
  };
  const std::vector<Case> cases = {
      {[](std::span<const double> x) { return std::fabs(x[0] - 0.3); }, BoxDomain(0, 1, 1), 1.0},
      {[](std::span<const double> x) { return std::sin(3.0 * x[0]) + 0.5 * x[0]; },
       BoxDomain(-3, 3, 1), 3.5},
      {[](std::span<const double> x) { return std::hypot(x[0] - 0.2, x[1] + 0.7); },
       BoxDomain(-1, 1, 2), 1.0},
      {[](std::span<const double> x) { return std::cos(2.0 * x[0]) * std::cos(x[1]); },
       BoxDomain(-2, 2, 2), std::sqrt(5.0)},
  };
  for (const auto& c : cases) {
    for (double eps : {0.2, 0.05}) {
      OracleSession s(Target{c.f, {}}, c.dom);
      const auto r = lipschitz_grid_minimize(s, c.dom, c.lipschitz, eps);
      const std::size_t n = lipschitz_axis_count(c.dom.width(), r.spacing);
      const std::size_t fine_n = 10 * (n - 1) + 1;
      const double fine = brute_min(c.f, c.dom, fine_n);
      REQUIRE(r.queries == static_cast<std::size_t>(std::pow(n, c.dom.dim())));
      REQUIRE(r.value <= fine + eps);
      REQUIRE(r.value >= fine - 1e-12 - eps);
    }
  }
}

TEST_CASE("basin checks", "[certificates]") {
  const auto sphere = basin_certificate_check(lookup("sphere", 2), 0.3, 10000);
  CHECK(sphere.passed);
  CHECK(sphere.samples == 10000);
  CHECK(sphere.violations == 0);

  // On [-1, 1] Rastrigin has local maxima near +-0.5 and local minima near +-1.
  const auto wide = basin_certificate_check(lookup("rastrigin", 1), 2.0, 2000, 1);
  CHECK_FALSE(wide.passed);
  REQUIRE(wide.witness);
  CHECK(std::fabs((*wide.witness)[0]) > 0.4);
  CHECK(wide.witness_grad_norm <= 1e-12);

  const auto wide2 = basin_certificate_check(lookup("rastrigin", 2), 2.0, 2000, 1);
  CHECK_FALSE(wide2.passed);

  const auto tight = basin_certificate_check(lookup("rastrigin", 2), 0.5, 2000, 1);
  CHECK(tight.passed);

  CHECK_THROWS_AS(basin_certificate_check(lookup("sphere", 2), 20.0, 10), InvalidInputError);
  CHECK_THROWS_AS(basin_certificate_check(lookup("sphere", 2), 0.0, 10), InvalidInputError);
}
