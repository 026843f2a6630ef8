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
#include <iosfwd>
#include <string>
#include <vector>

#include "assortdp/errors.hpp"

namespace assortdp {

// Privacy accounting for the shuffle model. Natural logarithms throughout.

// Largest admissible per-user budget: ln(n / (16 * ln(2/delta))). Raises
// InfeasiblePopulationError when n <= 16 * ln(2/delta).
double epsilon0_cap(std::uint64_t n, double delta);

// Closed-form central budget after shuffling n reports that are each
// epsilon0-locally-private:
//   ln(1 + (e^e0 - 1)/(e^e0 + 1) * (8*sqrt(e^e0 * ln(4/delta))/sqrt(n)
//                                   + 8*e^e0/n)).
// Strictly increasing in epsilon0 and decreasing in n. epsilon0 must lie in
// (0, epsilon0_cap(n, delta)].
double amplified_epsilon(std::uint64_t n, double epsilon0, double delta);

// Interface for amplification bounds, so externally tabulated bounds can be
// swapped in for the closed form.
class ShuffleBound {
 public:
  virtual ~ShuffleBound() = default;
  virtual double amplified(std::uint64_t n, double epsilon0, double delta) const = 0;

  // Domain of epsilon0 values the bound can evaluate; inversion stays inside
  // [lower_domain, min(cap, upper_domain)].
  virtual double lower_domain() const { return 0.0; }
  virtual double upper_domain(double cap) const { return cap; }
};

class ClosedFormBound final : public ShuffleBound {
 public:
  double amplified(std::uint64_t n, double epsilon0, double delta) const override {
    return amplified_epsilon(n, epsilon0, delta);
  }
};

// Bound backed by a table of "epsilon0,epsilon" rows (strictly increasing
// epsilon0, non-decreasing epsilon), evaluated by linear interpolation.
// Intended for values produced by external numerical accountants; n and
// delta are baked into the table.
class LookupTableBound final : public ShuffleBound {
 public:
  static LookupTableBound load(std::istream& in);
  static LookupTableBound load_file(const std::string& path);

  double amplified(std::uint64_t n, double epsilon0, double delta) const override;

  double lower_domain() const override { return epsilon0_.front(); }
  double upper_domain(double cap) const override {
    return cap < epsilon0_.back() ? cap : epsilon0_.back();
  }

 private:
  std::vector<double> epsilon0_;
  std::vector<double> epsilon_;
};

// Largest epsilon0 <= epsilon0_cap whose amplified budget does not exceed
// epsilon, found by bisection to 1e-9 absolute. Returns the cap outright when
// even the cap satisfies the bound. epsilon <= 0 raises
// InfeasibleBudgetError; population errors propagate from epsilon0_cap.
double local_budget_for(std::uint64_t n, double epsilon, double delta);
double local_budget_for(std::uint64_t n, double epsilon, double delta,
                        const ShuffleBound& bound);

}  // namespace assortdp
