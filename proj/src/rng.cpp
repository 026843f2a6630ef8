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

#include "assortdp/rng.hpp"

#include <cmath>

namespace assortdp {

namespace {

// SplitMix64 step; used only for key mixing and state expansion.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, StreamId id) {
  // Fold the full (seed, run, trial, role, user) tuple into one key, then
  // expand it into the xoshiro state. Distinct tuples give unrelated keys.
  std::uint64_t key = seed;
  key = splitmix64(key) ^ id.run;
  key = splitmix64(key) ^ id.trial;
  key = splitmix64(key) ^ static_cast<std::uint64_t>(id.role);
  key = splitmix64(key) ^ id.user;
  for (auto& word : state_) {
    word = splitmix64(key);
  }
}

std::uint64_t RngStream::next_u64() {
  // xoshiro256++ by Blackman and Vigna.
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(double p) { return next_unit() < p; }

std::uint64_t RngStream::below(std::uint64_t bound) {
  // Rejection sampling over the largest multiple of bound below 2^64.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double RngStream::laplace(double scale) {
  if (scale == 0.0) return 0.0;
  // u is uniform in (-1/2, 1/2); the 0 draw (which would map to -1/2 and an
  // infinite quantile) is resampled.
  double unit = next_unit();
  while (unit == 0.0) unit = next_unit();
  const double u = unit - 0.5;
  const double mag = std::log(1.0 - 2.0 * std::abs(u));
  return u < 0.0 ? scale * mag : -scale * mag;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  std::uint64_t key = base;
  key = splitmix64(key) ^ a;
  key = splitmix64(key) ^ b;
  key = splitmix64(key) ^ c;
  return splitmix64(key);
}

}  // namespace assortdp
