// Copyright 2026 The IIM Hardening Authors.
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

#ifndef IIM_ERROR_HPP
#define IIM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iim {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: malformed network, unknown entity, bad configuration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Raised by the `.idr` parser and the solution reader. Carries a 1-based
/// line number (0 when not tied to a line).
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError(line == 0 ? what
                                  : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An exhaustive search would exceed its configured enumeration cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Two independent computations that must agree did not.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace iim

#endif  // IIM_ERROR_HPP
