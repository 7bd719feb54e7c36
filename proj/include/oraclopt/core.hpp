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

#ifndef ORACLOPT_CORE_HPP
#define ORACLOPT_CORE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oraclopt/errors.hpp"

namespace oraclopt {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

/// A point of R^d with d >= 1 and finite coordinates.
class Point {
 public:
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
    validate();
  }
  Point(std::initializer_list<double> coords) : coords_(coords) { validate(); }
  explicit Point(std::span<const double> coords)
      : coords_(coords.begin(), coords.end()) {
    validate();
  }

  /// The point (v, v, ..., v).
  static Point filled(std::size_t dim, double v) {
    return Point(std::vector<double>(dim, v));
  }

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  void validate() const {
    if (coords_.empty()) throw InvalidInputError("point must have dimension >= 1");
    for (double c : coords_)
      if (!std::isfinite(c)) throw InvalidInputError("point coordinate is not finite");
  }

  std::vector<double> coords_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

inline double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

/// The cube [lo, hi]^dim.
class BoxDomain {
 public:
  BoxDomain(double lo, double hi, std::size_t dim) : lo_(lo), hi_(hi), dim_(dim) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
      throw InvalidInputError("box domain needs finite lo < hi");
    if (dim == 0) throw InvalidInputError("box domain needs dim >= 1");
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t dim() const noexcept { return dim_; }
  double width() const noexcept { return hi_ - lo_; }

  bool contains(std::span<const double> x) const noexcept {
    if (x.size() != dim_) return false;
    return std::all_of(x.begin(), x.end(),
                       [&](double c) { return c >= lo_ && c <= hi_; });
  }
  bool contains(const Point& p) const noexcept { return contains(p.coords()); }

  Point clip(std::span<const double> x) const {
    std::vector<double> out(x.begin(), x.end());
    for (double& c : out) c = std::clamp(c, lo_, hi_);
    return Point(std::move(out));
  }

  Point lower_corner() const { return Point::filled(dim_, lo_); }
  Point center() const { return Point::filled(dim_, 0.5 * (lo_ + hi_)); }

  friend bool operator==(const BoxDomain&, const BoxDomain&) = default;

 private:
  double lo_;
  double hi_;
  std::size_t dim_;
};

/// Flat, row-major storage of same-dimension points.
class PointSet {
 public:
  explicit PointSet(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw InvalidInputError("point set needs dim >= 1");
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size() / dim_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  Point point(std::size_t i) const { return Point((*this)[i]); }

  void push_back(std::span<const double> x) {
    if (x.size() != dim_) throw InvalidInputError("point set dimension mismatch");
    data_.insert(data_.end(), x.begin(), x.end());
  }
  void reserve(std::size_t n) { data_.reserve(n * dim_); }

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

template <class T>
struct Interval {
  T lower;
  T upper;

  T length() const { return upper - lower; }
  bool contains(const T& v) const { return lower <= v && v <= upper; }
  bool contains(const Interval& o) const { return lower <= o.lower && o.upper <= upper; }
};

// ---------------------------------------------------------------------------
// Finite-precision decimal representation
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr std::array<double, 23> kPow10Double = {
    1e0,  1e1,  1e2,  1e3,  1e4,  1e5,  1e6,  1e7,  1e8,  1e9,  1e10, 1e11,
    1e12, 1e13, 1e14, 1e15, 1e16, 1e17, 1e18, 1e19, 1e20, 1e21, 1e22};

inline Integer pow10(unsigned k) {
  Integer r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

/// floor(a / b) for b > 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (r < 0) q -= 1;
  return q;
}

/// floor(x * 10^k) computed exactly in machine integers, when that is
/// possible. Relies on the FMA residual being exact; returns nullopt
/// outside the range where that holds.
inline std::optional<std::int64_t> floor_scaled_fast(double x, unsigned k) noexcept {
  if (k > 18) return std::nullopt;
  if (x == 0.0) return 0;
  const double ax = std::fabs(x);
  if (ax < 1e-280 || ax > 1e280) return std::nullopt;
  const double s = kPow10Double[k];
  const double p = x * s;
  if (!(std::fabs(p) < 0x1p62)) return std::nullopt;
  const double err = std::fma(x, s, -p);  // x*s == p + err exactly
  const double fp = std::floor(p);
  if (fp != p) return static_cast<std::int64_t>(fp);
  return static_cast<std::int64_t>(p) + static_cast<std::int64_t>(std::floor(err));
}

/// floor(x * 10^k) by exact big-integer arithmetic on the binary expansion of x.
inline Integer floor_scaled_exact(double x, unsigned k) {
  if (x == 0.0) return 0;
  int exp = 0;
  const double frac = std::frexp(x, &exp);
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));  // exact
  exp -= 53;
  Integer num = Integer(mant) * pow10(k);
  if (exp >= 0) return num << exp;
  return floor_div(num, Integer(1) << (-exp));
}

inline Integer floor_scaled(double x, unsigned k) {
  if (auto fast = floor_scaled_fast(x, k)) return Integer(*fast);
  return floor_scaled_exact(x, k);
}

/// N / 10^k rounded to double; both oracle paths must go through this.
inline double scaled_to_double(std::int64_t n, unsigned k) {
  return static_cast<double>(n) / kPow10Double[k];
}

}  // namespace detail

/// Floor-based precision-k decimal expansion r0.r1...rk of a real.
///
/// Stored as the integer N = r0 * 10^k + (r1...rk); the represented value is
/// N / 10^k. The integer part is floor(N / 10^k), so -0.5 at k = 1 has
/// integer part -1 and digit 5.
class FixedDecimal {
 public:
  FixedDecimal(Integer scaled, unsigned k) : scaled_(std::move(scaled)), k_(k) {}

  /// Builds from an integer part and its k digits (each 0-9).
  static FixedDecimal from_parts(const Integer& integer_part,
                                 std::span<const std::uint8_t> digits) {
    Integer scaled = integer_part;
    for (std::uint8_t d : digits) {
      if (d > 9) throw InvalidInputError("decimal digit out of range");
      scaled = scaled * 10 + d;
    }
    return FixedDecimal(std::move(scaled), static_cast<unsigned>(digits.size()));
  }

  /// Parses the canonical "r0.d1d2...dk" form produced by to_string().
  static FixedDecimal parse(std::string_view text) {
    const auto dot = text.find('.');
    const std::string_view int_text = text.substr(0, dot);
    const std::string_view digit_text =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (int_text.empty() || int_text == "-")
      throw InvalidInputError("malformed fixed decimal '" + std::string(text) + "'");
    const std::size_t start = int_text.front() == '-' ? 1 : 0;
    for (std::size_t i = start; i < int_text.size(); ++i)
      if (int_text[i] < '0' || int_text[i] > '9')
        throw InvalidInputError("malformed fixed decimal '" + std::string(text) + "'");
    std::vector<std::uint8_t> digits;
    for (char c : digit_text) {
      if (c < '0' || c > '9')
        throw InvalidInputError("malformed fixed decimal '" + std::string(text) + "'");
      digits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return from_parts(Integer(std::string(int_text)), digits);
  }

  const Integer& scaled() const noexcept { return scaled_; }
  unsigned precision() const noexcept { return k_; }

  Integer integer_part() const { return detail::floor_div(scaled_, detail::pow10(k_)); }

  std::vector<std::uint8_t> digits() const {
    Integer rest = scaled_ - integer_part() * detail::pow10(k_);
    std::vector<std::uint8_t> out(k_, 0);
    for (unsigned i = k_; i-- > 0;) {
      out[i] = static_cast<std::uint8_t>(static_cast<unsigned>(rest % 10));
      rest /= 10;
    }
    return out;
  }

  /// r0 + sum r_i / 10^i, exactly.
  Rational value() const { return Rational(scaled_, detail::pow10(k_)); }

  double to_double() const {
    if (k_ < detail::kPow10Double.size() && scaled_ >= INT64_MIN && scaled_ <= INT64_MAX)
      return detail::scaled_to_double(static_cast<std::int64_t>(scaled_), k_);
    return static_cast<double>(value());
  }

  std::string to_string() const {
    std::string out = integer_part().str();
    if (k_ == 0) return out;
    out.push_back('.');
    for (std::uint8_t d : digits()) out.push_back(static_cast<char>('0' + d));
    return out;
  }

  friend bool operator==(const FixedDecimal&, const FixedDecimal&) = default;

 private:
  Integer scaled_;
  unsigned k_;
};

/// The unique floor-based expansion of x with k fractional digits:
/// value <= x < value + 10^-k.
inline FixedDecimal fixed_expand(double x, unsigned k) {
  if (!std::isfinite(x)) throw InvalidInputError("cannot expand a non-finite value");
  return FixedDecimal(detail::floor_scaled(x, k), k);
}

/// Expansion of an exact rational: floor(q * 10^k) / 10^k.
inline FixedDecimal fixed_expand(const Rational& q, unsigned k) {
  return FixedDecimal(detail::floor_div(boost::multiprecision::numerator(q) * detail::pow10(k),
                                        boost::multiprecision::denominator(q)),
                      k);
}

/// Coordinate-wise expansion of a point.
inline std::vector<FixedDecimal> fixed_expand(std::span<const double> x, unsigned k) {
  std::vector<FixedDecimal> out;
  out.reserve(x.size());
  for (double c : x) out.push_back(fixed_expand(c, k));
  return out;
}

inline Rational value(const FixedDecimal& fd) { return fd.value(); }

/// All reals sharing the k-digit prefix: [prefix + 0s, prefix + 9s].
inline Interval<Rational> bracket(const FixedDecimal& fd) {
  Rational lower = fd.value();
  Rational upper = lower + Rational(1, detail::pow10(fd.precision()));
  return {std::move(lower), std::move(upper)};
}

/// x truncated to k decimals and mapped back to double. Same result as
/// fixed_expand(x, k).to_double(), without the big-integer detour when
/// the fast path applies.
inline double truncate_decimal(double x, unsigned k) {
  if (auto fast = detail::floor_scaled_fast(x, k)) {
    if (k < detail::kPow10Double.size()) return detail::scaled_to_double(*fast, k);
  }
  return fixed_expand(x, k).to_double();
}

}  // namespace oraclopt

#endif  // ORACLOPT_CORE_HPP
