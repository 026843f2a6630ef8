// Copyright 2026 The assortdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace assortdp {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (edge lists, bound tables, experiment specs).
// Carries the 1-based line number when one is known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg, std::size_t line = 0)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Invalid argument to an operation (out-of-range budget, bad node id, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Randomized response with flip probability 1/2 carries no signal; debiasing
// is impossible.
class DegenerateChannelError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Raw-moment orders above the supported cap must be added deliberately.
class UnsupportedOrderError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// A statistic that does not exist for the given input (edgeless graph,
// zero denominator, sign of zero).
class UndefinedStatError : public Error {
 public:
  using Error::Error;
};

// The shuffle amplification bound is only valid for populations with
// n > 16*ln(2/delta).
class InfeasiblePopulationError : public Error {
 public:
  using Error::Error;
};

// No local budget can deliver the requested central budget.
class InfeasibleBudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace assortdp
