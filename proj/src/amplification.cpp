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

#include "assortdp/amplification.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace assortdp {

namespace {
constexpr double kInversionTolerance = 1e-9;
}

double epsilon0_cap(std::uint64_t n, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError("delta must lie in (0, 1)");
  }
  if (n == 0) throw ParameterError("population must be positive");
  const double threshold = 16.0 * std::log(2.0 / delta);
  if (static_cast<double>(n) <= threshold) {
    throw InfeasiblePopulationError(
        "shuffle bound needs n > 16*ln(2/delta) = " + std::to_string(threshold) +
        ", got n = " + std::to_string(n));
  }
  return std::log(static_cast<double>(n) / threshold);
}

double amplified_epsilon(std::uint64_t n, double epsilon0, double delta) {
  const double cap = epsilon0_cap(n, delta);
  if (!(epsilon0 > 0.0)) {
    throw ParameterError("epsilon0 must be positive");
  }
  // Tiny slack so that budgets returned by the bisection (which clamps to
  // the cap) evaluate cleanly.
  if (epsilon0 > cap * (1.0 + 1e-12)) {
    throw ParameterError("epsilon0 exceeds the admissible cap " + std::to_string(cap));
  }
  const double e = std::exp(epsilon0);
  const double contraction = (e - 1.0) / (e + 1.0);
  const double root_term =
      8.0 * std::sqrt(e * std::log(4.0 / delta)) / std::sqrt(static_cast<double>(n));
  const double linear_term = 8.0 * e / static_cast<double>(n);
  return std::log1p(contraction * (root_term + linear_term));
}

double local_budget_for(std::uint64_t n, double epsilon, double delta) {
  const ClosedFormBound bound;
  return local_budget_for(n, epsilon, delta, bound);
}

double local_budget_for(std::uint64_t n, double epsilon, double delta,
                        const ShuffleBound& bound) {
  if (!(epsilon > 0.0)) {
    throw InfeasibleBudgetError("target epsilon must be positive");
  }
  const double cap = epsilon0_cap(n, delta);
  const double floor = bound.lower_domain();
  const double ceiling = bound.upper_domain(cap);
  if (!(ceiling > floor)) {
    throw InfeasibleBudgetError("bound domain is empty under the cap");
  }
  if (bound.amplified(n, ceiling, delta) <= epsilon) {
    return ceiling;  // amplification already delivers the target at the cap
  }
  // The bound is increasing in epsilon0, so bisect. lo tracks the largest
  // budget known to satisfy the target (or the domain floor if none did).
  double lo = floor;
  double hi = ceiling;
  bool found = false;
  while (hi - lo > kInversionTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (bound.amplified(n, mid, delta) <= epsilon) {
      lo = mid;
      found = true;
    } else {
      hi = mid;
    }
  }
  if (!found) {
    // Only the untested floor remains; it might still qualify when positive.
    if (floor > 0.0 && bound.amplified(n, floor, delta) <= epsilon) {
      return floor;
    }
    throw InfeasibleBudgetError("no positive local budget satisfies the bound");
  }
  return lo;
}

LookupTableBound LookupTableBound::load(std::istream& in) {
  LookupTableBound table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string first, second;
    if (!std::getline(row, first, ',') || !std::getline(row, second)) {
      throw ParseError("expected 'epsilon0,epsilon'", line_no);
    }
    double e0 = 0.0;
    double e = 0.0;
    try {
      e0 = std::stod(first);
      e = std::stod(second);
    } catch (const std::exception&) {
      throw ParseError("non-numeric bound table entry", line_no);
    }
    if (!table.epsilon0_.empty() && e0 <= table.epsilon0_.back()) {
      throw ParseError("epsilon0 column must be strictly increasing", line_no);
    }
    if (!table.epsilon_.empty() && e < table.epsilon_.back()) {
      throw ParseError("epsilon column must be non-decreasing", line_no);
    }
    table.epsilon0_.push_back(e0);
    table.epsilon_.push_back(e);
  }
  if (table.epsilon0_.size() < 2) {
    throw ParseError("bound table needs at least two rows");
  }
  return table;
}

LookupTableBound LookupTableBound::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open bound table: " + path);
  return load(in);
}

double LookupTableBound::amplified(std::uint64_t /*n*/, double epsilon0,
                                   double /*delta*/) const {
  if (epsilon0 < epsilon0_.front() || epsilon0 > epsilon0_.back()) {
    throw ParameterError("epsilon0 outside the tabulated range");
  }
  const auto it = std::lower_bound(epsilon0_.begin(), epsilon0_.end(), epsilon0);
  const std::size_t hi = static_cast<std::size_t>(it - epsilon0_.begin());
  if (hi == 0 || epsilon0_[hi] == epsilon0) return epsilon_[hi];
  const std::size_t lo = hi - 1;
  const double t = (epsilon0 - epsilon0_[lo]) / (epsilon0_[hi] - epsilon0_[lo]);
  return epsilon_[lo] + t * (epsilon_[hi] - epsilon_[lo]);
}

}  // namespace assortdp
