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

#ifndef ORACLOPT_BENCHMARKS_HPP
#define ORACLOPT_BENCHMARKS_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "oraclopt/core.hpp"
#include "oraclopt/oracle.hpp"

namespace oraclopt {

/// Closed forms of the benchmark suite, generic in the scalar type so tests
/// can evaluate them in extended precision.
namespace functions {

template <class T>
T rastrigin(std::span<const T> x) {
  using std::cos;
  const T a = 10;
  const T two_pi = boost::math::constants::two_pi<T>();
  T s = a * static_cast<T>(x.size());
  for (const T& xi : x) s += xi * xi - a * cos(two_pi * xi);
  return s;
}

template <class T>
T ackley(std::span<const T> x) {
  using std::cos;
  using std::exp;
  using std::sqrt;
  const T two_pi = boost::math::constants::two_pi<T>();
  const T r = sqrt(T(0.5) * (x[0] * x[0] + x[1] * x[1]));
  return T(-20) * exp(T(-0.2) * r) -
         exp(T(0.5) * (cos(two_pi * x[0]) + cos(two_pi * x[1]))) +
         boost::math::constants::e<T>() + T(20);
}

template <class T>
T sphere(std::span<const T> x) {
  T s = 0;
  for (const T& xi : x) s += xi * xi;
  return s;
}

template <class T>
T rosenbrock(std::span<const T> x) {
  T s = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const T a = x[i + 1] - x[i] * x[i];
    const T b = T(1) - x[i];
    s += T(100) * a * a + b * b;
  }
  return s;
}

template <class T>
T beale(std::span<const T> x) {
  const T& u = x[0];
  const T& v = x[1];
  const T a = T(1.5) - u + u * v;
  const T b = T(2.25) - u + u * v * v;
  const T c = T(2.625) - u + u * v * v * v;
  return a * a + b * b + c * c;
}

template <class T>
T booth(std::span<const T> x) {
  const T a = x[0] + T(2) * x[1] - T(7);
  const T b = T(2) * x[0] + x[1] - T(5);
  return a * a + b * b;
}

// Analytic gradients.

inline void rastrigin_grad(std::span<const double> x, std::span<double> g) {
  const double two_pi = boost::math::constants::two_pi<double>();
  for (std::size_t i = 0; i < x.size(); ++i)
    g[i] = 2.0 * x[i] + 10.0 * two_pi * std::sin(two_pi * x[i]);
}

/// The radial term has a removable 0/0 at the origin; it is taken as 0 there.
inline void ackley_grad(std::span<const double> x, std::span<double> g) {
  const double two_pi = boost::math::constants::two_pi<double>();
  const double pi = boost::math::constants::pi<double>();
  const double r = std::sqrt(0.5 * (x[0] * x[0] + x[1] * x[1]));
  const double radial = r > 0.0 ? 2.0 * std::exp(-0.2 * r) / r : 0.0;
  const double wave = std::exp(0.5 * (std::cos(two_pi * x[0]) + std::cos(two_pi * x[1])));
  for (std::size_t i = 0; i < 2; ++i)
    g[i] = radial * x[i] + pi * std::sin(two_pi * x[i]) * wave;
}

inline void sphere_grad(std::span<const double> x, std::span<double> g) {
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i];
}

inline void rosenbrock_grad(std::span<const double> x, std::span<double> g) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) g[i] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    g[i] += -400.0 * x[i] * a - 2.0 * (1.0 - x[i]);
    g[i + 1] += 200.0 * a;
  }
}

inline void beale_grad(std::span<const double> x, std::span<double> g) {
  const double u = x[0];
  const double v = x[1];
  const double a = 1.5 - u + u * v;
  const double b = 2.25 - u + u * v * v;
  const double c = 2.625 - u + u * v * v * v;
  g[0] = 2.0 * a * (v - 1.0) + 2.0 * b * (v * v - 1.0) + 2.0 * c * (v * v * v - 1.0);
  g[1] = 2.0 * a * u + 4.0 * b * u * v + 6.0 * c * u * v * v;
}

inline void booth_grad(std::span<const double> x, std::span<double> g) {
  g[0] = 10.0 * x[0] + 8.0 * x[1] - 34.0;
  g[1] = 8.0 * x[0] + 10.0 * x[1] - 38.0;
}

}  // namespace functions

/// Step size t and basin lower bound m used by the basin-grid descent.
struct RunParams {
  double step_size;
  double basin_bound;
};

/// A named test function with its box, known global minimum and defaults.
class Benchmark {
 public:
  using ValueFn = double (*)(std::span<const double>);
  using GradFn = void (*)(std::span<const double>, std::span<double>);

  Benchmark(std::string name, std::size_t dim, BoxDomain domain, Point minimizer,
            double min_value, RunParams defaults, ValueFn value, GradFn grad)
      : name_(std::move(name)),
        dim_(dim),
        domain_(domain),
        minimizer_(std::move(minimizer)),
        min_value_(min_value),
        defaults_(defaults),
        value_(value),
        grad_(grad) {}

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  const BoxDomain& domain() const noexcept { return domain_; }
  const Point& minimizer() const noexcept { return minimizer_; }
  double min_value() const noexcept { return min_value_; }
  const RunParams& defaults() const noexcept { return defaults_; }

  double eval(std::span<const double> x) const {
    check_dim(x.size());
    return value_(x);
  }
  double eval(const Point& x) const { return eval(x.coords()); }

  Point grad(std::span<const double> x) const {
    check_dim(x.size());
    std::vector<double> g(dim_);
    grad_(x, g);
    return Point(std::move(g));
  }
  Point grad(const Point& x) const { return grad(x.coords()); }

  /// Oracle target for this benchmark.
  Target target() const { return Target{value_, grad_}; }

  OracleSession session(unsigned precision_k = 12,
                        LogRetention retention = LogRetention::full) const {
    return OracleSession(target(), domain_, precision_k, retention);
  }

 private:
  void check_dim(std::size_t d) const {
    if (d != dim_)
      throw InvalidInputError(name_ + " expects dimension " + std::to_string(dim_) +
                              ", got " + std::to_string(d));
  }

  std::string name_;
  std::size_t dim_;
  BoxDomain domain_;
  Point minimizer_;
  double min_value_;
  RunParams defaults_;
  ValueFn value_;
  GradFn grad_;
};

/// Registry metadata for one benchmark family.
struct BenchmarkInfo {
  std::string_view name;
  std::size_t min_dim;
  std::size_t max_dim;  // 0: unbounded
  double lo;
  double hi;
  double minimizer_coord;
  RunParams defaults;
  Benchmark::ValueFn value;
  Benchmark::GradFn grad;
};

// Sphere and Rosenbrock are unbounded in their usual statement; they are
// clipped to the conventional boxes so the grid is finite.
inline const std::array<BenchmarkInfo, 6>& benchmark_registry() {
  static const std::array<BenchmarkInfo, 6> registry = {{
      {"rastrigin", 1, 0, -5.12, 5.12, 0.0, {0.0001, 0.5},
       &functions::rastrigin<double>, &functions::rastrigin_grad},
      {"ackley", 2, 2, -5.0, 5.0, 0.0, {0.0001, 0.1},
       &functions::ackley<double>, &functions::ackley_grad},
      {"sphere", 1, 0, -5.12, 5.12, 0.0, {0.001, 0.3},
       &functions::sphere<double>, &functions::sphere_grad},
      {"rosenbrock", 2, 0, -2.048, 2.048, 1.0, {0.001, 0.5},
       &functions::rosenbrock<double>, &functions::rosenbrock_grad},
      {"beale", 2, 2, -4.5, 4.5, 0.0, {0.0005, 0.3},
       &functions::beale<double>, &functions::beale_grad},
      {"booth", 2, 2, -10.0, 10.0, 0.0, {0.005, 0.3},
       &functions::booth<double>, &functions::booth_grad},
  }};
  return registry;
}

/// Benchmark `name` in dimension `dim`, with its default run parameters.
inline Benchmark lookup(std::string_view name, std::size_t dim) {
  for (const auto& info : benchmark_registry()) {
    if (info.name != name) continue;
    if (dim < info.min_dim || (info.max_dim != 0 && dim > info.max_dim))
      throw LookupError(std::string(name) + " does not support dimension " +
                        std::to_string(dim));
    std::vector<double> xs(dim, info.minimizer_coord);
    if (name == "beale") xs = {3.0, 0.5};
    if (name == "booth") xs = {1.0, 3.0};
    return Benchmark(std::string(name), dim, BoxDomain(info.lo, info.hi, dim),
                     Point(std::move(xs)), 0.0, info.defaults, info.value, info.grad);
  }
  throw LookupError("unknown benchmark '" + std::string(name) + "'");
}

}  // namespace oraclopt

#endif  // ORACLOPT_BENCHMARKS_HPP
