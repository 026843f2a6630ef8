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

#include <array>
#include <cmath>
#include <vector>

#include "assortdp/estimators.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace assortdp;
using namespace assortdp::testing;

namespace {

EstimatorOptions noiseless_options() {
  EstimatorOptions options;
  options.noiseless = true;
  return options;
}

struct MeanAndSem {
  double mean = 0.0;
  double sem = 0.0;
};

template <typename RunFn>
MeanAndSem monte_carlo_mean(int trials, const RunFn& run) {
  double sum = 0.0;
  double sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double q = run(static_cast<std::uint64_t>(t));
    sum += q;
    sq += q * q;
  }
  const double mean = sum / trials;
  const double var = (sq / trials - mean * mean) * trials / (trials - 1.0);
  return {mean, std::sqrt(var / trials)};
}

}  // namespace

TEST_CASE("noiseless mode reproduces the exact statistic") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::uint32_t n = 10 + static_cast<std::uint32_t>(seed * 7 % 91);
    const Graph g = seed % 2 == 0 ? generate_er(n, 0.1, 900 + seed)
                                  : generate_ba(std::max(n, 5u), 3, 900 + seed);
    if (g.edge_count() == 0) continue;
    const double truth = exact_stats(g).r_u;
    const double tol = 1e-9 * std::max(1.0, std::abs(truth));

    const Estimate local = local_ru(g, {}, seed, noiseless_options());
    const Estimate shuffle = shuffle_ru(g, {}, seed, noiseless_options());
    const Estimate decentral = decentral_ru(g, {}, seed, noiseless_options());
    CHECK(std::abs(local.q_hat - truth) <= tol);
    CHECK(std::abs(shuffle.q_hat - truth) <= tol);
    CHECK(std::abs(decentral.q_hat - truth) <= tol);
    ++checked;
  }
  CHECK(checked >= 45);
}

TEST_CASE("numerator identity: half the degree-weighted neighbor sums") {
  // For the path graph: (1*2 + 2*2 + 1*2)/2 = 4 = sum of d_i*d_j over edges.
  const Graph p3 = path3();
  std::uint64_t half_sum_twice = 0;
  for (std::uint32_t i = 0; i < p3.node_count(); ++i) {
    half_sum_twice += p3.degree(i) * p3.neighbor_degree_sum(i);
  }
  CHECK(half_sum_twice == 8);
  CHECK(half_sum_twice / 2 == 4);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = generate_er(60, 0.12, 300 + seed);
    std::uint64_t lhs_twice = 0;
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
      lhs_twice += g.degree(i) * g.neighbor_degree_sum(i);
    }
    std::uint64_t rhs = 0;
    g.for_each_edge([&](std::uint32_t i, std::uint32_t j) {
      rhs += static_cast<std::uint64_t>(g.degree(i)) * g.degree(j);
    });
    CHECK(lhs_twice == 2 * rhs);
  }
}

TEST_CASE("estimates are deterministic in the seed and internally consistent") {
  const Graph g = generate_ba(120, 4, 21);

  const LocalBudget local_budget{1.2, 0.8};
  const DecentralBudget dec_budget{0.8, 1.2, 1e-6};
  const ShuffleBudget sh_budget{1.0, 0.01, 0.4};

  const Estimate a = local_ru(g, local_budget, 424242);
  const Estimate b = local_ru(g, local_budget, 424242);
  CHECK(a.q_hat == b.q_hat);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  CHECK(a.q_hat != local_ru(g, local_budget, 424243).q_hat);

  for (const Estimate& est :
       {a, shuffle_ru(g, sh_budget, 7), decentral_ru(g, dec_budget, 7)}) {
    const double m = static_cast<double>(est.m_used);
    CHECK(est.q_hat == est.x / m - est.y / (m * m));
  }
}

TEST_CASE("shuffle specifics") {
  const Graph g = generate_ba(150, 3, 5);
  const ShuffleBudget budget{1.0, 0.01, 0.4};

  SUBCASE("the estimate does not depend on the permutation") {
    EstimatorOptions opt_a;
    opt_a.shuffler_seed = 1111;
    EstimatorOptions opt_b;
    opt_b.shuffler_seed = 2222;
    const Estimate a = shuffle_ru(g, budget, 99, opt_a);
    const Estimate b = shuffle_ru(g, budget, 99, opt_b);
    CHECK(a.q_hat == b.q_hat);
    CHECK(a.x == b.x);
  }

  SUBCASE("derived local budget respects the cap") {
    const Estimate est = shuffle_ru(g, budget, 1);
    CHECK(est.eps0 > 0.0);
    CHECK(est.eps0 <= epsilon0_cap(g.node_count(), budget.delta) + 1e-12);
    CHECK(est.eps1 == doctest::Approx(0.6 * est.eps0));
    CHECK(est.eps2 == doctest::Approx(0.4 * est.eps0));
  }

  SUBCASE("population too small for the bound") {
    CHECK_THROWS_AS(shuffle_ru(g, ShuffleBudget{1.0, 1e-8, 0.4}, 1),
                    InfeasiblePopulationError);
  }

  SUBCASE("alpha validation") {
    CHECK_THROWS_AS(shuffle_ru(g, ShuffleBudget{1.0, 0.01, 0.0}, 1), ParameterError);
    CHECK_THROWS_AS(shuffle_ru(g, ShuffleBudget{1.0, 0.01, 1.0}, 1), ParameterError);
  }

  SUBCASE("permutations are uniform") {
    // 5! = 120 outcomes; chi-square with 119 dof, 0.999 quantile ~ 172.5.
    constexpr int kDraws = 100'000;
    std::array<int, 120> counts{};
    RngStream rng(31, StreamId{.role = Role::kShuffler});
    for (int d = 0; d < kDraws; ++d) {
      const std::vector<std::uint32_t> perm = random_permutation(5, rng);
      // Lehmer rank.
      int rank = 0;
      for (int i = 0; i < 5; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < 5; ++j) smaller += perm[j] < perm[i] ? 1 : 0;
        static constexpr int kFact[5] = {24, 6, 2, 1, 1};
        rank += smaller * (i < 4 ? kFact[i] : 1);
      }
      ++counts[rank];
    }
    const double expected = static_cast<double>(kDraws) / 120.0;
    double chi2 = 0.0;
    for (const int c : counts) {
      const double d = c - expected;
      chi2 += d * d / expected;
    }
    CHECK(chi2 < 172.5);
  }
}

TEST_CASE("decentralized specifics") {
  const Graph g = generate_ba(200, 4, 13);
  const DecentralBudget budget{0.8, 1.2, 1e-8};

  SUBCASE("artifacts expose the per-user reports") {
    DecentralArtifacts artifacts;
    const Estimate est = decentral_ru(g, budget, 3, {}, &artifacts);
    REQUIRE(artifacts.noisy_degrees.size() == g.node_count());
    REQUIRE(artifacts.degree_upper_bounds.size() == g.node_count());
    REQUIRE(artifacts.noisy_neighbor_sums.size() == g.node_count());
    CHECK(artifacts.sensitivity == est.sensitivity);
    CHECK(est.sensitivity > 0.0);
    // The bound adds a positive margin to the noisy degree.
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
      CHECK(artifacts.degree_upper_bounds[i] > artifacts.noisy_degrees[i]);
    }
  }

  SUBCASE("sensitivity floor engages when noisy bounds collapse") {
    // Tiny budget, large delta: upper bounds are dominated by noise and can
    // go negative. Scan seeds until the clamp fires at least once.
    const Graph small = path3();
    const DecentralBudget harsh{1e-6, 1.0, 0.98};
    bool clamped_seen = false;
    for (std::uint64_t seed = 0; seed < 64 && !clamped_seen; ++seed) {
      const Estimate est = decentral_ru(small, harsh, seed);
      if (est.sensitivity_clamped) {
        clamped_seen = true;
        CHECK(est.sensitivity == 2.0);
        CHECK(std::isfinite(est.q_hat));
      }
    }
    CHECK(clamped_seen);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(decentral_ru(g, DecentralBudget{0.0, 1.0, 1e-8}, 1), ParameterError);
    CHECK_THROWS_AS(decentral_ru(g, DecentralBudget{1.0, 0.0, 1e-8}, 1), ParameterError);
    CHECK_THROWS_AS(decentral_ru(g, DecentralBudget{1.0, 1.0, 0.0}, 1), ParameterError);
    CHECK_NOTHROW(decentral_ru(path3(), DecentralBudget{1.0, 1.0, 1e-8}, 1));
  }
}

TEST_CASE("local specifics") {
  const Graph g = generate_ba(100, 3, 2);

  SUBCASE("validation") {
    CHECK_THROWS_AS(local_ru(g, LocalBudget{0.0, 1.0}, 1), DegenerateChannelError);
    CHECK_THROWS_AS(local_ru(g, LocalBudget{1.0, 0.0}, 1), ParameterError);
    const Graph tiny = Graph::from_edges(1, {});
    CHECK_THROWS_AS(local_ru(tiny, LocalBudget{1.0, 1.0}, 1), ParameterError);
  }

  SUBCASE("near-noiseless budgets recover a regular graph's zero") {
    const Estimate est = local_ru(triangle(), LocalBudget{1e6, 1e6}, 7);
    CHECK(std::abs(est.q_hat) <= 1e-3);
  }

  SUBCASE("m override changes only the collector division") {
    EstimatorOptions options;
    options.m_override = 123;
    const Estimate est = local_ru(g, LocalBudget{1.0, 1.0}, 5, options);
    const Estimate plain = local_ru(g, LocalBudget{1.0, 1.0}, 5);
    CHECK(est.m_used == 123);
    CHECK(est.x == plain.x);
    CHECK(est.y == plain.y);
    CHECK(est.q_hat == est.x / 123.0 - est.y / (123.0 * 123.0));
  }
}

TEST_CASE("Monte-Carlo unbiasedness smoke checks") {
  const Graph g = generate_ba(120, 3, 77);
  const double truth = exact_stats(g).r_u;
  constexpr int kTrials = 4000;

  SUBCASE("local") {
    const auto [mean, sem] = monte_carlo_mean(kTrials, [&](std::uint64_t seed) {
      return local_ru(g, LocalBudget{1.2, 0.8}, seed).q_hat;
    });
    CHECK(std::abs(mean - truth) <= 4.0 * sem);
  }

  SUBCASE("shuffle") {
    const auto [mean, sem] = monte_carlo_mean(kTrials, [&](std::uint64_t seed) {
      return shuffle_ru(g, ShuffleBudget{1.0, 0.01, 0.4}, seed).q_hat;
    });
    CHECK(std::abs(mean - truth) <= 4.0 * sem);
  }

  SUBCASE("decentral") {
    const auto [mean, sem] = monte_carlo_mean(kTrials, [&](std::uint64_t seed) {
      return decentral_ru(g, DecentralBudget{0.8, 1.2, 1e-8}, seed).q_hat;
    });
    CHECK(std::abs(mean - truth) <= 4.0 * sem);
  }
}
