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
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <oraclopt/benchmarks.hpp>

using namespace oraclopt;
using Catch::Approx;

namespace {

struct Case {
  const char* name;
  std::size_t dim;
};

const Case kCases[] = {{"rastrigin", 2}, {"ackley", 2},     {"sphere", 2},     {"rosenbrock", 2},
                       {"beale", 2},     {"booth", 2},      {"rastrigin", 5},  {"sphere", 20},
                       {"rosenbrock", 20}};

// Central differences with step scaled to the coordinate magnitude.
std::vector<double> central_diff(const Benchmark& b, std::vector<double> x) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::fabs(x[i]));
    const double xi = x[i];
    x[i] = xi + h;
    const double up = b.eval(x);
    x[i] = xi - h;
    const double dn = b.eval(x);
    x[i] = xi;
    g[i] = (up - dn) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("eval examples", "[benchmarks]") {
  CHECK(lookup("rastrigin", 2).eval(Point{0.0, 0.0}) == Approx(0.0).margin(1e-12));
  CHECK(lookup("rastrigin", 2).eval(Point{1.0, 1.0}) == Approx(2.0).margin(1e-12));
  CHECK(lookup("booth", 2).eval(Point{0.0, 0.0}) == 74.0);
  CHECK(lookup("beale", 2).eval(Point{0.0, 0.0}) == 14.203125);
  CHECK(lookup("rosenbrock", 2).eval(Point{0.0, 0.0}) == 1.0);
  CHECK(lookup("ackley", 2).eval(Point{0.0, 0.0}) == Approx(0.0).margin(1e-12));
}

TEST_CASE("grad examples", "[benchmarks]") {
  CHECK(lookup("sphere", 3).grad(Point{1.0, -2.0, 0.5}) == Point{2.0, -4.0, 1.0});
  CHECK(lookup("rastrigin", 1).grad(Point{0.0})[0] == 0.0);
  const Point g = lookup("beale", 2).grad(Point{3.0, 0.5});
  CHECK(g[0] == Approx(0.0).margin(1e-12));
  CHECK(g[1] == Approx(0.0).margin(1e-12));
  // The radial term is removable at the origin.
  CHECK(lookup("ackley", 2).grad(Point{0.0, 0.0}) == Point{0.0, 0.0});
}

TEST_CASE("dimension mismatch is rejected", "[benchmarks]") {
  const auto b = lookup("booth", 2);
  CHECK_THROWS_AS(b.eval(Point{1.0}), InvalidInputError);
  CHECK_THROWS_AS(b.grad(Point{1.0, 2.0, 3.0}), InvalidInputError);
}

TEST_CASE("lookup returns the registry parameters", "[benchmarks]") {
  const auto r = lookup("rastrigin", 20);
  CHECK(r.defaults().step_size == 0.0001);
  CHECK(r.defaults().basin_bound == 0.5);
  CHECK(r.domain() == BoxDomain(-5.12, 5.12, 20));

  const auto a = lookup("ackley", 2);
  CHECK(a.defaults().step_size == 0.0001);
  CHECK(a.defaults().basin_bound == 0.1);
  CHECK(a.domain() == BoxDomain(-5.0, 5.0, 2));

  const auto b = lookup("booth", 2);
  CHECK(b.defaults().step_size == 0.005);
  CHECK(b.defaults().basin_bound == 0.3);
  CHECK(b.domain() == BoxDomain(-10.0, 10.0, 2));

  CHECK(lookup("sphere", 4).defaults().step_size == 0.001);
  CHECK(lookup("rosenbrock", 3).defaults().basin_bound == 0.5);
  CHECK(lookup("beale", 2).defaults().step_size == 0.0005);
}

TEST_CASE("lookup errors", "[benchmarks]") {
  CHECK_THROWS_AS(lookup("himmelblau", 2), LookupError);
  CHECK_THROWS_AS(lookup("ackley", 3), LookupError);
  CHECK_THROWS_AS(lookup("beale", 1), LookupError);
  CHECK_THROWS_AS(lookup("rosenbrock", 1), LookupError);
  CHECK_THROWS_AS(lookup("sphere", 0), LookupError);
}

TEST_CASE("global minimizers", "[benchmarks]") {
  for (const auto& c : kCases) {
    const auto b = lookup(c.name, c.dim);
    INFO(c.name << " d=" << c.dim);
    CHECK(b.domain().contains(b.minimizer()));
    CHECK(std::fabs(b.eval(b.minimizer()) - b.min_value()) <= 1e-9);
    CHECK(norm(b.grad(b.minimizer()).coords()) <= 1e-6);
  }
}

TEST_CASE("analytic gradients match central differences", "[benchmarks][property]") {
  for (const auto& c : kCases) {
    const auto b = lookup(c.name, c.dim);
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unif(b.domain().lo(), b.domain().hi());
    for (int s = 0; s < 100; ++s) {
      std::vector<double> x(c.dim);
      for (double& v : x) v = unif(rng);
      const Point g = b.grad(x);
      const auto fd = central_diff(b, x);
      double diff = 0.0;
      for (std::size_t i = 0; i < c.dim; ++i) diff += (g[i] - fd[i]) * (g[i] - fd[i]);
      const double rel = std::sqrt(diff) / std::max(1.0, norm(g.coords()));
      INFO(c.name << " d=" << c.dim << " sample " << s);
      REQUIRE(rel <= 1e-5);
    }
  }
}

TEST_CASE("values never fall below the minimum", "[benchmarks][property]") {
  for (const auto& c : kCases) {
    const auto b = lookup(c.name, c.dim);
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> unif(b.domain().lo(), b.domain().hi());
    std::vector<double> x(c.dim);
    for (int s = 0; s < 10000; ++s) {
      for (double& v : x) v = unif(rng);
      REQUIRE(b.eval(x) >= b.min_value());
    }
  }
}

TEST_CASE("registry lists six families", "[benchmarks]") {
  CHECK(benchmark_registry().size() == 6);
  for (const auto& info : benchmark_registry()) {
    CHECK(info.lo < info.hi);
    CHECK(info.defaults.step_size > 0.0);
    CHECK(info.defaults.basin_bound > 0.0);
    CHECK(info.defaults.basin_bound <= info.hi - info.lo);
  }
}
