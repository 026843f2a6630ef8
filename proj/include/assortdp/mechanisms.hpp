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

#include "assortdp/errors.hpp"
#include "assortdp/rng.hpp"

namespace assortdp {

// Flip probability of the binary randomized-response channel with budget
// epsilon: p = 1 / (e^epsilon + 1). p is in (0, 1/2], equals 1/2 only at
// epsilon = 0, and decreases strictly in epsilon. Negative epsilon raises
// ParameterError.
double rr_flip_prob(double epsilon);

// Randomized-response channel parameters.
struct RRParams {
  double epsilon = 0.0;
  double p = 0.5;

  static RRParams from_epsilon(double epsilon) {
    return RRParams{epsilon, rr_flip_prob(epsilon)};
  }
  // Identity channel (p = 0). Only meaningful in the noiseless test mode.
  static RRParams noiseless() { return RRParams{0.0, 0.0}; }
};

// Applies the channel: returns bit with probability 1-p, 1-bit otherwise.
int rr_perturb(int bit, const RRParams& params, RngStream& rng);

// Unbiased per-bit transform (noisy_bit - p) / (1 - 2p). Its expectation over
// the channel equals the true bit. p = 1/2 raises DegenerateChannelError.
double rr_debias(int noisy_bit, double p);

// Zero-mean Laplace draw with the given scale; scale 0 returns exactly 0
// (noiseless mode), negative scale raises ParameterError.
double laplace_sample(double scale, RngStream& rng);

// Exact raw moment E(X^r) for X ~ Laplace(center, scale):
//   sum over even k <= r of r!/(r-k)! * scale^k * center^(r-k).
// Orders above 8 raise UnsupportedOrderError.
double laplace_raw_moment(double center, double scale, unsigned order);

// High-probability upper bound for a value observed through Laplace noise:
// noisy_value + scale * ln(1/(2*delta)) >= true value with probability
// 1 - delta. Requires scale > 0 and delta in (0, 1/2).
double tail_upper_bound(double noisy_value, double scale, double delta);

}  // namespace assortdp
