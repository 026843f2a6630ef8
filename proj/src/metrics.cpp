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

#include "assortdp/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "assortdp/summation.hpp"

namespace assortdp {

namespace {
double eta_for(std::uint64_t n) { return static_cast<double>(n) / 1000.0; }
}  // namespace

double relative_error(double estimate, double truth, std::uint64_t n) {
  if (n == 0) throw ParameterError("relative error requires n >= 1");
  const double denom = std::max(std::abs(truth), eta_for(n));
  return std::abs(estimate - truth) / denom;
}

double relative_error_literal(double estimate, double truth, std::uint64_t n) {
  if (n == 0) throw ParameterError("relative error requires n >= 1");
  const double denom = std::min(truth, eta_for(n));
  return std::abs(estimate - truth) / denom;
}

double empirical_mse(std::span<const double> estimates, double truth) {
  if (estimates.empty()) throw ParameterError("mse requires at least one estimate");
  CompensatedSum sum;
  for (const double e : estimates) {
    const double d = e - truth;
    sum.add(d * d);
  }
  return sum.value() / static_cast<double>(estimates.size());
}

double sign_accuracy(std::span<const double> estimates, double truth) {
  if (truth == 0.0) throw UndefinedStatError("sign accuracy undefined for truth 0");
  if (estimates.empty()) throw ParameterError("sign accuracy requires at least one estimate");
  std::size_t correct = 0;
  for (const double e : estimates) {
    if (e == 0.0) continue;  // a zero estimate carries no sign
    if ((e > 0.0) == (truth > 0.0)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(estimates.size());
}

std::pair<double, double> ratio_moment_approx(double ex, double ey, double vx,
                                              double vy, double cov) {
  if (ey == 0.0) throw ParameterError("ratio moments require E(Y) != 0");
  const double ey2 = ey * ey;
  const double ey3 = ey2 * ey;
  const double ey4 = ey2 * ey2;
  const double mean = ex / ey - cov / ey2 + ex * vy / ey3;
  const double var = vx / ey2 - 2.0 * ex * cov / ey3 + ex * ex * vy / ey4;
  return {mean, var};
}

}  // namespace assortdp
