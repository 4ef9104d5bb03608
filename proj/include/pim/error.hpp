// Copyright 2026 The pimkit Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pim {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed program text, with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Semantic problems found after parsing (undefined or duplicate functions,
// missing main, bad workload files).
class ProgramError : public Error {
 public:
  using Error::Error;
};

// Type errors and other failures while interpreting a program.
class RuntimeError : public Error {
 public:
  using Error::Error;
};

// The interpreter ran out of steps; usually an unbounded loop.
class StepBudgetExceeded : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

// A subspace of a partition has no supporting measurement.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// Operation refused because the option universe is too big for it.
class UniverseTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace pim
