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

#ifndef ORACLOPT_ERRORS_HPP
#define ORACLOPT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oraclopt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// A query or evaluation point lies outside the declared box.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The target does not provide the requested oracle (e.g. no gradient).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

/// A lattice would need more points than the configured budget allows.
class GridBudgetError : public Error {
 public:
  GridBudgetError(std::size_t required, std::size_t budget)
      : Error("grid needs " + std::to_string(required) +
              " points, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t required_;
  std::size_t budget_;
};

/// An oracle session ran past its query budget.
class BudgetError : public Error {
 public:
  explicit BudgetError(std::size_t budget)
      : Error("query budget of " + std::to_string(budget) + " exhausted"),
        budget_(budget) {}

  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

/// The query set leaves no gap wide enough to hide a witness.
class SaturationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace oraclopt

#endif  // ORACLOPT_ERRORS_HPP
