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

namespace assortdp {

// Protocol roles, used as part of a stream id so that every randomizer in a
// simulated multi-party run draws from its own independent stream.
enum class Role : std::uint32_t {
  kGenerator = 1,      // synthetic graph construction
  kDegreeNoise = 2,    // per-user Laplace noise on degrees
  kEdgeRandomizer = 3, // per-user randomized response over adjacency bits
  kTNoise = 4,         // per-user Laplace noise on neighbor degree sums
  kShuffler = 5,       // the shuffler's permutation
  kHarness = 6,        // experiment-level draws
};

// Identifies one logical random stream. Streams with distinct ids are
// independent; the same (seed, id) pair always reproduces the same sequence,
// so per-user work may run in parallel without changing any result.
struct StreamId {
  std::uint64_t run = 0;
  std::uint64_t trial = 0;
  Role role = Role::kHarness;
  std::uint64_t user = 0;
};

// Deterministic counter-seeded xoshiro256++ stream. All floating-point
// derivations (uniforms, Bernoulli, Laplace) are implemented here from raw
// 64-bit outputs so sequences are identical across platforms and standard
// library versions.
class RngStream {
 public:
  RngStream(std::uint64_t seed, StreamId id);

  std::uint64_t next_u64();

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit();

  // True with probability p. p <= 0 is never true, p >= 1 is always true.
  bool bernoulli(double p);

  // Uniform integer in [0, bound), unbiased via rejection. bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Zero-mean Laplace draw with the given scale via the inverse CDF applied
  // to a uniform in (-1/2, 1/2). A scale of exactly 0 returns 0.
  double laplace(double scale);

 private:
  std::uint64_t state_[4];
};

// Stable 64-bit seed mixer used to derive per-trial seeds from a base seed
// and small indices. The constants are fixed; derived seeds must not change
// across versions of this library.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c);

}  // namespace assortdp
