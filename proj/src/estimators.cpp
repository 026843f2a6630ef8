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

#include "assortdp/estimators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "assortdp/mechanisms.hpp"
#include "assortdp/summation.hpp"

namespace assortdp {

namespace {

#ifdef ASSORTDP_ENABLE_NOISELESS
constexpr bool kNoiselessAvailable = true;
#else
constexpr bool kNoiselessAvailable = false;
#endif

void require_noiseless_available(const EstimatorOptions& options) {
  if (options.noiseless && !kNoiselessAvailable) {
    throw ParameterError("noiseless mode is disabled in this build");
  }
}

std::uint64_t resolve_m(const Graph& g, const EstimatorOptions& options) {
  const std::uint64_t m = options.m_override.value_or(g.edge_count());
  if (m == 0) throw ParameterError("edge count must be positive");
  return m;
}

// Collector-side correction of the squared-degree sum. With noisy degrees
// carrying Laplace noise of scale b, (sum of nd^2)/2 overshoots by n*b^2 and
// its square needs the variance terms removed:
//   y = (sum(nd^2)/2 - (n+2) b^2)^2 - (5n+4) b^4.
// Unbiased for the square of the per-edge mean-degree sum.
double corrected_y(const std::vector<double>& noisy_degrees, double scale) {
  CompensatedSum squares;
  for (const double nd : noisy_degrees) squares.add(nd * nd);
  const double n = static_cast<double>(noisy_degrees.size());
  const double b2 = scale * scale;
  const double centered = 0.5 * squares.value() - (n + 2.0) * b2;
  return centered * centered - (5.0 * n + 4.0) * b2 * b2;
}

std::vector<double> perturb_degrees(const Graph& g, double scale, std::uint64_t seed) {
  const std::uint32_t n = g.node_count();
  std::vector<double> noisy(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    RngStream stream(seed, StreamId{.role = Role::kDegreeNoise, .user = i});
    noisy[i] = static_cast<double>(g.degree(i)) + laplace_sample(scale, stream);
  }
  return noisy;
}

// Debiased randomized-response row sum for user i over partners j < i:
// sum_j (noisy_bit - p) * weight[j]. The caller divides by (1 - 2p).
double rr_row_sum(const Graph& g, std::uint32_t i, double p,
                  const std::vector<double>& weight, RngStream& rng) {
  double acc = 0.0;
  for (std::uint32_t j = 0; j < i; ++j) {
    const bool bit = g.has_edge(i, j);
    const bool noisy = rng.bernoulli(p) ? !bit : bit;
    acc += ((noisy ? 1.0 : 0.0) - p) * weight[j];
  }
  return acc;
}

// Noiseless shortcut: only true edges contribute when p = 0.
double exact_row_sum(const Graph& g, std::uint32_t i, const std::vector<double>& weight) {
  double acc = 0.0;
  for (const std::uint32_t j : g.neighbors(i)) {
    if (j >= i) break;
    acc += weight[j];
  }
  return acc;
}

double finish(double x, double y, std::uint64_t m_used) {
  const double m = static_cast<double>(m_used);
  return x / m - y / (m * m);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kLocal: return "local";
    case Algorithm::kShuffle: return "shuffle";
    case Algorithm::kDecentral: return "decentral";
  }
  return "unknown";
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "local") return Algorithm::kLocal;
  if (name == "shuffle") return Algorithm::kShuffle;
  if (name == "decentral") return Algorithm::kDecentral;
  throw ParameterError("unknown algorithm: " + name);
}

std::vector<std::uint32_t> random_permutation(std::size_t k, RngStream& rng) {
  std::vector<std::uint32_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t i = k; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  return perm;
}

Estimate local_ru(const Graph& g, const LocalBudget& budget, std::uint64_t seed,
                  const EstimatorOptions& options) {
  const auto start = Clock::now();
  require_noiseless_available(options);
  const std::uint32_t n = g.node_count();
  if (n < 2) throw ParameterError("local protocol requires n >= 2");
  const std::uint64_t m_used = resolve_m(g, options);

  double p = 0.5;
  double degree_scale = 0.0;
  if (options.noiseless) {
    p = 0.0;
  } else {
    if (!(budget.eps1 > 0.0)) {
      throw DegenerateChannelError("eps1 must be positive to debias the channel");
    }
    if (!(budget.eps2 > 0.0)) {
      throw ParameterError("eps2 must be positive");
    }
    p = rr_flip_prob(budget.eps1);
    degree_scale = 1.0 / budget.eps2;
  }

  // Every user reports RR bits for smaller ids plus one noisy degree; the
  // same noisy degree feeds both the cross term and the correction term.
  const std::vector<double> noisy_degrees = perturb_degrees(g, degree_scale, seed);

  const double inv = 1.0 / (1.0 - 2.0 * p);
  CompensatedSum x_sum;
  if (options.noiseless) {
    for (std::uint32_t i = 1; i < n; ++i) {
      x_sum.add(noisy_degrees[i] * exact_row_sum(g, i, noisy_degrees));
    }
  } else {
    for (std::uint32_t i = 1; i < n; ++i) {
      RngStream rr(seed, StreamId{.role = Role::kEdgeRandomizer, .user = i});
      x_sum.add(inv * noisy_degrees[i] * rr_row_sum(g, i, p, noisy_degrees, rr));
    }
  }

  Estimate est;
  est.algorithm = Algorithm::kLocal;
  est.x = x_sum.value();
  est.y = corrected_y(noisy_degrees, degree_scale);
  est.m_used = m_used;
  est.seed = seed;
  est.eps1 = budget.eps1;
  est.eps2 = budget.eps2;
  est.epsilon = budget.eps1 + budget.eps2;
  est.q_hat = finish(est.x, est.y, m_used);
  est.wall_time_sec = seconds_since(start);
  return est;
}

Estimate shuffle_ru(const Graph& g, const ShuffleBudget& budget, std::uint64_t seed,
                    const EstimatorOptions& options) {
  const auto start = Clock::now();
  require_noiseless_available(options);
  const std::uint32_t n = g.node_count();
  if (n < 2) throw ParameterError("shuffle protocol requires n >= 2");
  const std::uint64_t m_used = resolve_m(g, options);

  double p = 0.0;
  double degree_scale = 0.0;
  double eps0 = 0.0;
  if (!options.noiseless) {
    if (!(budget.alpha > 0.0 && budget.alpha < 1.0)) {
      throw ParameterError("alpha must lie in (0, 1)");
    }
    const ClosedFormBound closed_form;
    const ShuffleBound& bound =
        options.bound != nullptr ? *options.bound
                                 : static_cast<const ShuffleBound&>(closed_form);
    eps0 = local_budget_for(n, budget.epsilon, budget.delta, bound);
    degree_scale = 1.0 / (budget.alpha * eps0);
    p = rr_flip_prob((1.0 - budget.alpha) * eps0);
  }

  // Round 1: noisy degrees go to the collector and are broadcast back.
  const std::vector<double> noisy_degrees = perturb_degrees(g, degree_scale, seed);

  // Round 2: every user i randomizes its bits for smaller ids and reports
  // d_i * sum_j debias(bit_ij) * broadcast_degree_j. True degree, noisy
  // partner degrees.
  const double inv = 1.0 / (1.0 - 2.0 * p);
  std::vector<double> reports(n - 1, 0.0);
  if (options.noiseless) {
    for (std::uint32_t i = 1; i < n; ++i) {
      reports[i - 1] =
          static_cast<double>(g.degree(i)) * exact_row_sum(g, i, noisy_degrees);
    }
  } else {
    for (std::uint32_t i = 1; i < n; ++i) {
      RngStream rr(seed, StreamId{.role = Role::kEdgeRandomizer, .user = i});
      reports[i - 1] = static_cast<double>(g.degree(i)) * inv *
                       rr_row_sum(g, i, p, noisy_degrees, rr);
    }
  }

  // Shuffler: a uniform permutation detaches reports from user identities.
  RngStream shuffler(options.shuffler_seed.value_or(seed),
                     StreamId{.role = Role::kShuffler});
  const std::vector<std::uint32_t> perm = random_permutation(reports.size(), shuffler);
  std::vector<double> received(reports.size());
  for (std::size_t k = 0; k < perm.size(); ++k) received[k] = reports[perm[k]];

  // The collector needs only the sum; it sorts before accumulating so the
  // result is bit-identical under any permutation of the incoming reports.
  std::sort(received.begin(), received.end());
  CompensatedSum x_sum;
  for (const double r : received) x_sum.add(r);

  Estimate est;
  est.algorithm = Algorithm::kShuffle;
  est.x = x_sum.value();
  est.y = corrected_y(noisy_degrees, degree_scale);
  est.m_used = m_used;
  est.seed = seed;
  est.epsilon = budget.epsilon;
  est.delta = budget.delta;
  est.alpha = budget.alpha;
  est.eps0 = eps0;
  est.eps1 = (1.0 - budget.alpha) * eps0;
  est.eps2 = budget.alpha * eps0;
  est.q_hat = finish(est.x, est.y, m_used);
  est.wall_time_sec = seconds_since(start);
  return est;
}

Estimate decentral_ru(const Graph& g, const DecentralBudget& budget, std::uint64_t seed,
                      const EstimatorOptions& options, DecentralArtifacts* artifacts) {
  const auto start = Clock::now();
  require_noiseless_available(options);
  const std::uint32_t n = g.node_count();
  if (n < 2) throw ParameterError("decentralized protocol requires n >= 2");
  const std::uint64_t m_used = resolve_m(g, options);

  double degree_scale = 0.0;
  double delta1 = 0.0;
  if (!options.noiseless) {
    if (!(budget.eps1 > 0.0) || !(budget.eps2 > 0.0)) {
      throw ParameterError("eps1 and eps2 must be positive");
    }
    if (!(budget.delta > 0.0 && budget.delta < 1.0)) {
      throw ParameterError("delta must lie in (0, 1)");
    }
    degree_scale = 2.0 / budget.eps1;
    delta1 = budget.delta / 2.0;
  }

  // Round 1: noisy degree plus a high-probability upper bound per user.
  const std::vector<double> noisy_degrees = perturb_degrees(g, degree_scale, seed);
  std::vector<double> upper_bounds(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    upper_bounds[i] = options.noiseless
                          ? noisy_degrees[i]
                          : tail_upper_bound(noisy_degrees[i], degree_scale, delta1);
  }

  // Collector: sensitivity from the two largest bounds (ties broken by
  // ascending user id for determinism).
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (upper_bounds[a] != upper_bounds[b]) return upper_bounds[a] > upper_bounds[b];
    return a < b;
  });
  double sensitivity = 2.0 * (upper_bounds[order[0]] + upper_bounds[order[1]]);
  bool clamped = false;
  if (sensitivity <= 0.0) {
    sensitivity = options.sensitivity_floor;
    clamped = true;
  }

  // Round 2: each user perturbs its neighbor degree sum with the broadcast
  // sensitivity. The round-1 noisy degrees are reused by the collector, so
  // the two noise draws stay independent.
  const double t_scale = options.noiseless ? 0.0 : sensitivity / budget.eps2;
  std::vector<double> noisy_sums(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    RngStream stream(seed, StreamId{.role = Role::kTNoise, .user = i});
    noisy_sums[i] =
        static_cast<double>(g.neighbor_degree_sum(i)) + laplace_sample(t_scale, stream);
  }

  CompensatedSum x_sum;
  for (std::uint32_t i = 0; i < n; ++i) {
    x_sum.add(noisy_degrees[i] * noisy_sums[i]);
  }

  Estimate est;
  est.algorithm = Algorithm::kDecentral;
  est.x = 0.5 * x_sum.value();
  est.y = corrected_y(noisy_degrees, degree_scale);
  est.m_used = m_used;
  est.seed = seed;
  est.eps1 = budget.eps1;
  est.eps2 = budget.eps2;
  est.epsilon = budget.eps1 + budget.eps2;
  est.delta = budget.delta;
  est.sensitivity = sensitivity;
  est.sensitivity_clamped = clamped;
  est.q_hat = finish(est.x, est.y, m_used);
  est.wall_time_sec = seconds_since(start);

  if (artifacts != nullptr) {
    artifacts->noisy_degrees = noisy_degrees;
    artifacts->degree_upper_bounds = upper_bounds;
    artifacts->noisy_neighbor_sums = std::move(noisy_sums);
    artifacts->sensitivity = sensitivity;
    artifacts->sensitivity_clamped = clamped;
  }
  return est;
}

}  // namespace assortdp
