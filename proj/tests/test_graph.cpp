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

#include <cmath>
#include <numeric>
#include <sstream>

#include "assortdp/graph.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace assortdp;
using namespace assortdp::testing;

TEST_CASE("edge list loading") {
  SUBCASE("path graph") {
    std::istringstream in("0 1\n1 2\n");
    const LoadResult r = load_edge_list(in);
    CHECK(r.graph.node_count() == 3);
    CHECK(r.graph.edge_count() == 2);
    CHECK(r.graph.degree(0) == 1);
    CHECK(r.graph.degree(1) == 2);
    CHECK(r.graph.degree(2) == 1);
  }

  SUBCASE("comments, blank lines, duplicates") {
    std::istringstream in("# a comment\n\n0 1\n1 0\n1 2\n");
    const LoadResult r = load_edge_list(in);
    CHECK(r.graph.edge_count() == 2);
    CHECK(r.duplicate_edges == 1);
  }

  SUBCASE("self-loop rejected by default") {
    std::istringstream in("0 0\n");
    CHECK_THROWS_AS(load_edge_list(in), ParseError);
  }

  SUBCASE("self-loop skipped when configured") {
    std::istringstream in("0 0\n0 1\n");
    LoadOptions options;
    options.skip_self_loops = true;
    const LoadResult r = load_edge_list(in, options);
    CHECK(r.graph.edge_count() == 1);
    CHECK(r.self_loops_skipped == 1);
  }

  SUBCASE("malformed line reports its number") {
    std::istringstream in("0 1\nx 2\n");
    try {
      load_edge_list(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }

  SUBCASE("wrong token count") {
    std::istringstream in("0 1 2\n");
    CHECK_THROWS_AS(load_edge_list(in), ParseError);
  }

  SUBCASE("one-indexed input") {
    std::istringstream in("1 2\n2 3\n");
    LoadOptions options;
    options.one_indexed = true;
    const LoadResult r = load_edge_list(in, options);
    CHECK(r.graph.node_count() == 3);
    CHECK(r.graph.degree(1) == 2);
  }

  SUBCASE("sparse ids remapped in first-appearance order") {
    std::istringstream in("10 30\n30 20\n");
    const LoadResult r = load_edge_list(in);
    CHECK(r.graph.node_count() == 3);
    REQUIRE(r.original_ids.size() == 3);
    CHECK(r.original_ids[0] == 10);
    CHECK(r.original_ids[1] == 30);
    CHECK(r.original_ids[2] == 20);
    CHECK(r.graph.has_edge(0, 1));
    CHECK(r.graph.has_edge(1, 2));
    CHECK_FALSE(r.graph.has_edge(0, 2));
  }

  SUBCASE("dense ids are kept, so save then load is the identity") {
    for (const Graph& g : {path3(), star4(), generate_ba(60, 3, 9)}) {
      std::ostringstream out;
      save_edge_list(g, out);
      std::istringstream in(out.str());
      const LoadResult r = load_edge_list(in);
      REQUIRE(r.graph.node_count() == g.node_count());
      REQUIRE(r.graph.edge_count() == g.edge_count());
      bool same = true;
      g.for_each_edge([&](std::uint32_t i, std::uint32_t j) {
        same = same && r.graph.has_edge(i, j);
      });
      CHECK(same);
    }
  }
}

TEST_CASE("graph construction invariants") {
  const Graph g = generate_ba(80, 4, 3);

  SUBCASE("edge count matches half the degree sum") {
    std::uint64_t degree_sum = 0;
    for (std::uint32_t i = 0; i < g.node_count(); ++i) degree_sum += g.degree(i);
    CHECK(degree_sum == 2 * g.edge_count());
  }

  SUBCASE("bit matrix and neighbor lists agree") {
    for (std::uint32_t i = 0; i < g.node_count(); ++i) {
      for (const std::uint32_t j : g.neighbors(i)) {
        CHECK(g.has_edge(i, j));
        CHECK(g.has_edge(j, i));
      }
    }
    std::uint64_t bits = 0;
    for (std::uint32_t i = 1; i < g.node_count(); ++i) {
      for (std::uint32_t j = 0; j < i; ++j) bits += g.has_edge(i, j) ? 1 : 0;
    }
    CHECK(bits == g.edge_count());
  }

  SUBCASE("self-loops and bad endpoints are rejected") {
    CHECK_THROWS_AS(Graph::from_edges(3, {{1, 1}}), ParameterError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), ParameterError);
  }
}

TEST_CASE("exact assortativity statistics") {
  SUBCASE("path graph") {
    const GraphStats s = exact_stats(path3());
    CHECK(s.r_u == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(s.r_d == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(s.r_defined);
    CHECK(s.r == doctest::Approx(-1.0).epsilon(1e-12));
  }

  SUBCASE("star graph") {
    const GraphStats s = exact_stats(star4());
    CHECK(s.r_u == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s.r == doctest::Approx(-1.0).epsilon(1e-12));
  }

  SUBCASE("regular graphs have an undefined coefficient") {
    CHECK_FALSE(exact_stats(triangle()).r_defined);
    CHECK(exact_stats(triangle()).r_u == 0.0);
    CHECK(exact_stats(triangle()).r_d == 0.0);
    // 4-cycle
    const Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const GraphStats s = exact_stats(c4);
    CHECK_FALSE(s.r_defined);
    CHECK(s.r_u == 0.0);
  }

  SUBCASE("degenerate graphs are rejected") {
    CHECK_THROWS_AS(exact_stats(Graph::from_edges(3, {})), UndefinedStatError);
    CHECK_THROWS_AS(exact_stats(Graph::from_edges(1, {})), UndefinedStatError);
  }

  SUBCASE("relabeling invariance") {
    const Graph g = generate_er(64, 0.12, 17);
    const GraphStats base = exact_stats(g);
    std::vector<std::uint32_t> perm(g.node_count());
    std::iota(perm.begin(), perm.end(), 0u);
    RngStream rng(5, StreamId{.role = Role::kHarness});
    for (std::size_t i = perm.size(); i > 1; --i) {
      std::swap(perm[i - 1], perm[rng.below(i)]);
    }
    const GraphStats moved = exact_stats(relabel(g, perm));
    CHECK(moved.r_u == doctest::Approx(base.r_u).epsilon(1e-12));
    CHECK(moved.r_d == doctest::Approx(base.r_d).epsilon(1e-12));
  }

  SUBCASE("denominator routes agree and stay non-negative") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Graph g = seed % 2 == 0
                          ? generate_er(20 + seed % 150, 0.1, seed)
                          : generate_ba(20 + seed % 150, 3, seed);
      if (g.edge_count() == 0) continue;
      const GraphStats s = exact_stats(g);
      const double alt = r_d_edge_form(g);
      const double scale = std::max(1.0, std::abs(s.r_d));
      CHECK(std::abs(s.r_d - alt) <= 1e-9 * scale);
      CHECK(s.r_d >= -1e-9);
    }
  }

  SUBCASE("half the squared-degree sum equals the per-edge mean-degree sum") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Graph g = generate_er(50, 0.15, 1000 + seed);
      std::uint64_t edge_sum_twice = 0;  // 2 * sum over edges of (d_i+d_j)/2
      g.for_each_edge([&](std::uint32_t i, std::uint32_t j) {
        edge_sum_twice += g.degree(i) + g.degree(j);
      });
      CHECK(edge_sum_twice == g.degree_square_sum());
    }
  }
}

TEST_CASE("neighbor degree sums") {
  const Graph p3 = path3();
  CHECK(p3.neighbor_degree_sum(1) == 2);  // center
  CHECK(p3.neighbor_degree_sum(0) == 2);  // leaf sees the center's degree
  CHECK(star4().neighbor_degree_sum(0) == 3);
  CHECK_THROWS_AS(p3.neighbor_degree_sum(3), ParameterError);
}

TEST_CASE("preferential attachment generator") {
  SUBCASE("edge count is exact") {
    CHECK(generate_ba(200, 3, 1).edge_count() == 197 * 3);
    CHECK(generate_ba(10, 9, 1).edge_count() == 9);
    CHECK(generate_ba(3, 1, 5).edge_count() == 2);
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(generate_ba(10, 0, 1), ParameterError);
    CHECK_THROWS_AS(generate_ba(10, 10, 1), ParameterError);
  }

  SUBCASE("deterministic in the seed") {
    const Graph a = generate_ba(120, 4, 42);
    const Graph b = generate_ba(120, 4, 42);
    CHECK(graph_digest(a) == graph_digest(b));
    const Graph c = generate_ba(120, 4, 43);
    CHECK(graph_digest(a) != graph_digest(c));
  }
}
