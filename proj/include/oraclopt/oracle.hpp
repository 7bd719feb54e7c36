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

#ifndef ORACLOPT_ORACLE_HPP
#define ORACLOPT_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oraclopt/core.hpp"

namespace oraclopt {

/// The function behind an oracle. Algorithms never see this directly; they
/// get an OracleSession wrapping it.
struct Target {
  std::function<double(std::span<const double>)> value;
  /// Writes the gradient at x into out (same size as x). May be empty.
  std::function<void(std::span<const double>, std::span<double>)> gradient;

  bool has_value() const noexcept { return static_cast<bool>(value); }
  bool has_gradient() const noexcept { return static_cast<bool>(gradient); }
};

enum class QueryKind { value, gradient };

inline const char* to_string(QueryKind kind) noexcept {
  return kind == QueryKind::value ? "value" : "gradient";
}

/// One entry of the query history: what was asked, at which precision, and
/// what came back. The point is stored in its k-digit form, which is the
/// point the target was actually evaluated at.
struct QueryRecord {
  std::size_t seq = 0;
  QueryKind kind = QueryKind::value;
  unsigned precision_k = 0;
  std::vector<FixedDecimal> point;
  /// One entry for value queries, dim entries for gradient queries.
  std::vector<FixedDecimal> response;

  Point point_as_double() const {
    std::vector<double> c;
    c.reserve(point.size());
    for (const auto& fd : point) c.push_back(fd.to_double());
    return Point(std::move(c));
  }
};

namespace detail {

/// Floor of v * 10^k for a computed target value. A value just below a digit
/// boundary is moved onto it: when the exact value sits on the boundary
/// (decimal inputs to a polynomial, say) evaluation error can drop the
/// double under it, and plain truncation would then be off by a whole unit.
/// The window is about 64 ulps of max(1, |v|), capped at half a unit in the
/// last place so that |r - f| < 10^-k still holds.
inline std::optional<std::int64_t> response_scaled_fast(double v, unsigned k) noexcept {
  auto n = floor_scaled_fast(v, k);
  if (!n) return n;
  const double s = kPow10Double[k];
  const double p = v * s;
  if (std::fabs(p) < 0x1p52) {
    const double err = std::fma(v, s, -p);
    const double gap = (static_cast<double>(*n + 1) - p) - err;
    const double window = std::min(0x1p-46 * std::max(1.0, std::fabs(v)) * s, 0.5);
    if (gap <= window) ++*n;
  }
  return n;
}

inline FixedDecimal response_expand(double v, unsigned k) {
  if (std::isfinite(v))
    if (auto n = response_scaled_fast(v, k)) return FixedDecimal(Integer(*n), k);
  return fixed_expand(v, k);
}

inline std::vector<FixedDecimal> response_expand(std::span<const double> v, unsigned k) {
  std::vector<FixedDecimal> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(response_expand(x, k));
  return out;
}

inline double response_truncate(double v, unsigned k) {
  if (std::isfinite(v) && k < kPow10Double.size())
    if (auto n = response_scaled_fast(v, k)) return scaled_to_double(*n, k);
  return response_expand(v, k).to_double();
}

}  // namespace detail

/// Whether the session keeps full records or only counts queries. Long
/// optimizer runs issue hundreds of millions of queries; counting keeps
/// those runs in bounded memory.
enum class LogRetention { full, count_only };

/// Precision-limited access to a target function over a box.
///
/// Each query truncates the input point to k decimals, evaluates the target
/// there and truncates the answer to k decimals (see response_scaled_fast),
/// so |r - f(x)| < 10^-k for the recorded point x. Single-owner: not safe for concurrent use.
class OracleSession {
 public:
  OracleSession(Target target, BoxDomain domain, unsigned default_precision_k = 12,
                LogRetention retention = LogRetention::full)
      : target_(std::move(target)),
        domain_(domain),
        default_k_(default_precision_k),
        retention_(retention) {
    if (default_precision_k == 0)
      throw InvalidInputError("oracle precision k must be positive");
    scratch_.resize(domain.dim());
    grad_scratch_.resize(domain.dim());
  }

  const BoxDomain& domain() const noexcept { return domain_; }
  unsigned default_precision() const noexcept { return default_k_; }
  LogRetention retention() const noexcept { return retention_; }
  bool has_gradient() const noexcept { return target_.has_gradient(); }

  /// Caps the total number of queries; the query that would exceed it throws.
  void set_query_budget(std::optional<std::size_t> budget) noexcept { budget_ = budget; }
  std::optional<std::size_t> query_budget() const noexcept { return budget_; }

  FixedDecimal query_value(const Point& x) { return query_value(x, default_k_); }
  FixedDecimal query_value(const Point& x, unsigned k) {
    begin_query(x.coords(), k, QueryKind::value);
    const double fx = target_.value(scratch_);
    FixedDecimal r = detail::response_expand(fx, k);
    if (retention_ == LogRetention::full) append(x.coords(), k, QueryKind::value, {r});
    ++count_;
    return r;
  }

  std::vector<FixedDecimal> query_gradient(const Point& x) {
    return query_gradient(x, default_k_);
  }
  std::vector<FixedDecimal> query_gradient(const Point& x, unsigned k) {
    begin_query(x.coords(), k, QueryKind::gradient);
    target_.gradient(scratch_, grad_scratch_);
    std::vector<FixedDecimal> r = detail::response_expand(grad_scratch_, k);
    if (retention_ == LogRetention::full) append(x.coords(), k, QueryKind::gradient, r);
    ++count_;
    return r;
  }

  /// Value query at the default precision, answered as a double. Logs exactly
  /// like query_value and returns query_value(x).to_double().
  double value(std::span<const double> x) {
    const unsigned k = default_k_;
    begin_query(x, k, QueryKind::value);
    const double fx = target_.value(scratch_);
    double r;
    if (retention_ == LogRetention::full) {
      FixedDecimal fd = detail::response_expand(fx, k);
      r = fd.to_double();
      append(x, k, QueryKind::value, {std::move(fd)});
    } else {
      r = detail::response_truncate(fx, k);
    }
    ++count_;
    return r;
  }

  /// Gradient query at the default precision into out.
  void gradient(std::span<const double> x, std::span<double> out) {
    const unsigned k = default_k_;
    begin_query(x, k, QueryKind::gradient);
    target_.gradient(scratch_, grad_scratch_);
    if (retention_ == LogRetention::full) {
      std::vector<FixedDecimal> r = detail::response_expand(grad_scratch_, k);
      for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i].to_double();
      append(x, k, QueryKind::gradient, std::move(r));
    } else {
      for (std::size_t i = 0; i < grad_scratch_.size(); ++i)
        out[i] = detail::response_truncate(grad_scratch_[i], k);
    }
    ++count_;
  }

  /// Re-evaluates a logged query without logging it.
  std::vector<FixedDecimal> replay(const QueryRecord& rec) const {
    const Point p = rec.point_as_double();
    if (rec.kind == QueryKind::value)
      return {detail::response_expand(target_.value(p.coords()), rec.precision_k)};
    std::vector<double> g(p.dim());
    target_.gradient(p.coords(), g);
    return detail::response_expand(g, rec.precision_k);
  }

  std::size_t query_count() const noexcept { return count_; }
  const std::vector<QueryRecord>& log() const noexcept { return log_; }
  std::vector<QueryRecord> export_log() const { return log_; }

 private:
  void begin_query(std::span<const double> x, unsigned k, QueryKind kind) {
    if (k == 0) throw InvalidInputError("query precision k must be positive");
    if (kind == QueryKind::value && !target_.has_value())
      throw UnsupportedError("target provides no value oracle");
    if (kind == QueryKind::gradient && !target_.has_gradient())
      throw UnsupportedError("target provides no gradient oracle");
    if (x.size() != domain_.dim())
      throw InvalidInputError("query point has dimension " + std::to_string(x.size()) +
                              ", domain has " + std::to_string(domain_.dim()));
    if (!domain_.contains(x)) throw DomainError("query point outside the oracle domain");
    if (budget_ && count_ >= *budget_) throw BudgetError(*budget_);
    for (std::size_t i = 0; i < x.size(); ++i) scratch_[i] = truncate_decimal(x[i], k);
  }

  void append(std::span<const double> x, unsigned k, QueryKind kind,
              std::vector<FixedDecimal> response) {
    log_.push_back(QueryRecord{count_, kind, k, fixed_expand(x, k), std::move(response)});
  }

  Target target_;
  BoxDomain domain_;
  unsigned default_k_;
  LogRetention retention_;
  std::optional<std::size_t> budget_;
  std::size_t count_ = 0;
  std::vector<QueryRecord> log_;
  std::vector<double> scratch_;
  std::vector<double> grad_scratch_;
};

/// Writes the log as CSV: seq,kind,k,point,response. Points and gradient
/// responses are semicolon-joined canonical decimal strings.
inline void write_log_csv(std::ostream& os, std::span<const QueryRecord> log) {
  auto join = [&](const std::vector<FixedDecimal>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ';';
      os << v[i].to_string();
    }
  };
  os << "seq,kind,k,point,response\n";
  for (const auto& rec : log) {
    os << rec.seq << ',' << to_string(rec.kind) << ',' << rec.precision_k << ',';
    join(rec.point);
    os << ',';
    join(rec.response);
    os << '\n';
  }
}

}  // namespace oraclopt

#endif  // ORACLOPT_ORACLE_HPP
