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

// A short tour: query an oracle, minimize Booth, check a basin certificate,
// and refute a grid search with a witness function.

#include <iostream>

#include <oraclopt/oraclopt.hpp>

int main() {
  using namespace oraclopt;

  // Answers come back truncated to k decimal digits.
  const Benchmark beale = lookup("beale", 2);
  OracleSession oracle = beale.session(4);
  const FixedDecimal v = oracle.query_value(Point{0.0, 0.0});
  const auto br = bracket(v);
  std::cout << "beale(0, 0) ~ " << v.to_string() << ", bracket width "
            << (br.upper - br.lower) << "\n";

  const Benchmark booth = lookup("booth", 2);
  OracleSession session = booth.session(12, LogRetention::count_only);
  AlgoConfig cfg;
  cfg.basin_bound = booth.defaults().basin_bound;
  cfg.step_size = booth.defaults().step_size;
  cfg.max_iters = 200;
  const RunTrace trace = minimize(session, booth.domain(), cfg);
  std::cout << "booth after " << trace.records.size() - 1 << " iterations: f = "
            << format_g12(trace.final().f_x) << " at (" << format_g12(trace.final().x[0])
            << ", " << format_g12(trace.final().x[1]) << "), " << trace.total_queries
            << " queries\n";

  const BasinReport basin = basin_certificate_check(lookup("rastrigin", 2), 0.5, 1000);
  std::cout << "rastrigin basin m=0.5: " << (basin.passed ? "no" : "found")
            << " spurious stationary points in " << basin.samples << " samples\n";

  const RefuteResult r = refute(uniform_grid_solver(), BoxDomain(0, 1, 2), 100, 0.1);
  std::cout << "grid search with 100 queries: witness at ("
            << format_g12(r.refutation.witness_point[0]) << ", "
            << format_g12(r.refutation.witness_point[1]) << ") dips to "
            << format_g12(r.witness_min) << ", claim " << (r.confirmed() ? "refuted" : "stands")
            << "\n";
  return 0;
}
