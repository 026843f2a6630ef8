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

#include "assortdp/mechanisms.hpp"

#include <cmath>

namespace assortdp {

double rr_flip_prob(double epsilon) {
  if (!(epsilon >= 0.0)) {
    throw ParameterError("randomized response requires epsilon >= 0");
  }
  // exp overflows to +inf for large budgets; 1/(inf + 1) correctly gives 0.
  return 1.0 / (std::exp(epsilon) + 1.0);
}

int rr_perturb(int bit, const RRParams& params, RngStream& rng) {
  if (bit != 0 && bit != 1) throw ParameterError("rr_perturb input must be 0 or 1");
  return rng.bernoulli(params.p) ? 1 - bit : bit;
}

double rr_debias(int noisy_bit, double p) {
  if (p == 0.5) {
    throw DegenerateChannelError("flip probability 1/2 cannot be debiased");
  }
  return (static_cast<double>(noisy_bit) - p) / (1.0 - 2.0 * p);
}

double laplace_sample(double scale, RngStream& rng) {
  if (scale < 0.0) throw ParameterError("Laplace scale must be >= 0");
  return rng.laplace(scale);
}

double laplace_raw_moment(double center, double scale, unsigned order) {
  if (scale < 0.0) throw ParameterError("Laplace scale must be >= 0");
  if (order > 8) {
    throw UnsupportedOrderError("raw moments are implemented up to order 8");
  }
  // Odd-k terms vanish; factorial ratios stay exact in double for order <= 8.
  double moment = 0.0;
  for (unsigned k = 0; k <= order; k += 2) {
    double falling = 1.0;  // order! / (order - k)!
    for (unsigned t = 0; t < k; ++t) falling *= static_cast<double>(order - t);
    moment += falling * std::pow(scale, k) * std::pow(center, order - k);
  }
  return moment;
}

double tail_upper_bound(double noisy_value, double scale, double delta) {
  if (!(scale > 0.0)) throw ParameterError("tail bound requires scale > 0");
  if (!(delta > 0.0 && delta < 0.5)) {
    throw ParameterError("tail bound requires delta in (0, 1/2)");
  }
  return noisy_value + scale * std::log(1.0 / (2.0 * delta));
}

}  // namespace assortdp
