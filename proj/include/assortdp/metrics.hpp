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

#include <cstdint>
#include <span>
#include <utility>

#include "assortdp/errors.hpp"

namespace assortdp {

// Guarded relative error |estimate - truth| / max(|truth|, eta) with
// eta = n / 1000. The eta guard keeps the metric finite near truth = 0.
double relative_error(double estimate, double truth, std::uint64_t n);

// Literal variant dividing by min(truth, eta) without absolute values; kept
// selectable for comparison, negative for strongly disassortative truths.
double relative_error_literal(double estimate, double truth, std::uint64_t n);

// Mean squared deviation from the truth. Empty input raises ParameterError.
double empirical_mse(std::span<const double> estimates, double truth);

// Fraction of estimates whose sign matches the truth's; estimates equal to
// zero count as incorrect. truth = 0 raises UndefinedStatError.
double sign_accuracy(std::span<const double> estimates, double truth);

// Second-order delta-method approximations for a ratio of random variables:
//   E(X/Y) ~ EX/EY - Cov/EY^2 + EX*VY/EY^3
//   V(X/Y) ~ VX/EY^2 - 2*EX*Cov/EY^3 + EX^2*VY/EY^4
// EY = 0 raises ParameterError.
std::pair<double, double> ratio_moment_approx(double ex, double ey, double vx,
                                              double vy, double cov);

}  // namespace assortdp
