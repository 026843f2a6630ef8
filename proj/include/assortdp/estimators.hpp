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
#include <optional>
#include <string>
#include <vector>

#include "assortdp/amplification.hpp"
#include "assortdp/graph.hpp"
#include "assortdp/rng.hpp"

namespace assortdp {

// Three protocols produce private estimates of the assortativity factor,
// simulated here as role-separated computations:
//
//   local     one round; every user randomizes its lower-triangle adjacency
//             bits and reports a noisy degree.
//   shuffle   two rounds; noisy degrees are broadcast, per-user partial sums
//             pass through a shuffler, and the central budget is amplified.
//   decentral one round over 2-hop views; users report noisy degrees, degree
//             upper bounds, and noisy neighbor degree sums scaled by a
//             data-derived sensitivity.

enum class Algorithm { kLocal, kShuffle, kDecentral };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

// Budget split for the one-round local protocol: eps1 drives randomized
// response on adjacency bits, eps2 the Laplace noise on degrees.
struct LocalBudget {
  double eps1 = 0.0;
  double eps2 = 0.0;
};

// Budget for the shuffled protocol: a target central (epsilon, delta) and the
// fraction alpha of the derived per-user budget spent on degree noise.
struct ShuffleBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
};

// Budget for the decentralized protocol: eps1 perturbs degrees (scale
// 2/eps1, shared between the report and the sensitivity bound), eps2
// perturbs neighbor degree sums; delta is split in half for the two degree
// order statistics backing the sensitivity.
struct DecentralBudget {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double delta = 0.0;
};

struct EstimatorOptions {
  // Disables every randomizer; estimates then equal the exact statistic.
  // Only honored in builds compiled with ASSORTDP_ENABLE_NOISELESS.
  bool noiseless = false;
  // Overrides the edge count used by the collector (the true M otherwise).
  std::optional<std::uint64_t> m_override;
  // Floor applied when the noisy sensitivity comes out non-positive.
  double sensitivity_floor = 2.0;
  // Alternative amplification bound for the shuffle protocol (closed form
  // when null).
  const ShuffleBound* bound = nullptr;
  // Separate seed for the shuffler's permutation; defaults to the run seed.
  std::optional<std::uint64_t> shuffler_seed;
};

// One protocol run's output. q_hat always equals x/m_used - y/(m_used^2)
// as doubles.
struct Estimate {
  Algorithm algorithm = Algorithm::kLocal;
  double q_hat = 0.0;
  double x = 0.0;
  double y = 0.0;
  std::uint64_t m_used = 0;
  std::uint64_t seed = 0;

  // Budgets consumed (fields used depend on the protocol).
  double eps1 = 0.0;
  double eps2 = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double eps0 = 0.0;  // shuffle: derived per-user budget

  // Decentralized protocol only.
  double sensitivity = 0.0;
  bool sensitivity_clamped = false;

  double wall_time_sec = 0.0;
};

// Per-user reports of the decentralized protocol, for diagnostics and
// coverage checks.
struct DecentralArtifacts {
  std::vector<double> noisy_degrees;
  std::vector<double> degree_upper_bounds;
  std::vector<double> noisy_neighbor_sums;
  double sensitivity = 0.0;
  bool sensitivity_clamped = false;
};

Estimate local_ru(const Graph& g, const LocalBudget& budget, std::uint64_t seed,
                  const EstimatorOptions& options = {});

Estimate shuffle_ru(const Graph& g, const ShuffleBudget& budget, std::uint64_t seed,
                    const EstimatorOptions& options = {});

Estimate decentral_ru(const Graph& g, const DecentralBudget& budget, std::uint64_t seed,
                      const EstimatorOptions& options = {},
                      DecentralArtifacts* artifacts = nullptr);

// Fisher-Yates permutation of 0..k-1 drawn from the given stream; the
// shuffler role uses exactly this.
std::vector<std::uint32_t> random_permutation(std::size_t k, RngStream& rng);

}  // namespace assortdp
