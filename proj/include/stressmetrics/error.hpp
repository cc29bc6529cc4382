// Copyright 2026 The stressmetrics Authors.
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

#ifndef STRESSMETRICS_ERROR_HPP_
#define STRESSMETRICS_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stressmetrics {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line()` is 1-based; 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Operands disagree on vertex count.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Violated precondition on an argument value (alpha <= 0, iterations == 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Shortest paths are undefined across components.
class DisconnectedGraphError : public Error {
 public:
  using Error::Error;
};

// Layout has no usable scale: all points coincide, or a ratio needs a
// nonzero distance that is zero.
class DegenerateLayoutError : public Error {
 public:
  using Error::Error;
};

// Rank correlation of a constant series.
class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

// O(n^4) evaluation requested above the size guard without force.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace stressmetrics

#endif  // STRESSMETRICS_ERROR_HPP_
