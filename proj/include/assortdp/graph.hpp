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
#include <span>
#include <utility>
#include <vector>

#include "assortdp/errors.hpp"

namespace assortdp {

// Immutable undirected simple graph with dense node ids 0..n-1.
//
// Edges are stored once, canonically: a lower-triangle bit matrix (one bit
// per unordered pair {i, j} with j < i) plus per-node sorted neighbor lists.
// Degrees and the edge count are cached at construction. No self-loops, no
// duplicate edges; symmetry is implied by the single canonical storage.
// After construction the graph is read-only and safe to share across threads.
class Graph {
 public:
  // Empty graph (n = 0); placeholder until assigned from a real source.
  Graph() = default;

  // Builds a graph over n nodes from unordered edge pairs. Duplicate pairs
  // are collapsed; self-loops raise ParameterError; out-of-range endpoints
  // raise ParameterError.
  static Graph from_edges(std::uint32_t n,
                          std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

  std::uint32_t node_count() const { return n_; }
  std::uint64_t edge_count() const { return m_; }

  std::uint32_t degree(std::uint32_t i) const {
    check_node(i);
    return static_cast<std::uint32_t>(offsets_[i + 1] - offsets_[i]);
  }

  std::span<const std::uint32_t> neighbors(std::uint32_t i) const {
    check_node(i);
    return {adjacency_.data() + offsets_[i],
            adjacency_.data() + offsets_[i + 1]};
  }

  bool has_edge(std::uint32_t i, std::uint32_t j) const {
    if (i == j) return false;
    const std::uint32_t hi = i > j ? i : j;
    const std::uint32_t lo = i > j ? j : i;
    const std::uint64_t bit = pair_index(hi, lo);
    return (tri_bits_[bit >> 6] >> (bit & 63)) & 1u;
  }

  std::uint32_t max_degree() const { return d_max_; }
  double avg_degree() const {
    return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(m_) / n_;
  }

  // Sum of the degrees of i's neighbors: the quantity a user with a 2-hop
  // view can compute locally about itself.
  std::uint64_t neighbor_degree_sum(std::uint32_t i) const;

  // Exact integer sum of d_i^2 over all nodes.
  std::uint64_t degree_square_sum() const;

  // Visits every edge once, in canonical order (i > j, ascending i then j).
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (std::uint32_t i = 1; i < n_; ++i) {
      for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
        const std::uint32_t j = adjacency_[k];
        if (j >= i) break;  // neighbor lists are sorted
        fn(i, j);
      }
    }
  }

 private:
  void check_node(std::uint32_t i) const {
    if (i >= n_) throw ParameterError("node id out of range");
  }

  static std::uint64_t pair_index(std::uint32_t hi, std::uint32_t lo) {
    return static_cast<std::uint64_t>(hi) * (hi - 1) / 2 + lo;
  }

  std::uint32_t n_ = 0;
  std::uint64_t m_ = 0;
  std::uint32_t d_max_ = 0;
  std::vector<std::size_t> offsets_;       // CSR offsets, size n+1
  std::vector<std::uint32_t> adjacency_;   // sorted neighbor lists
  std::vector<std::uint64_t> tri_bits_;    // lower-triangle bit matrix
};

// Exact (non-private) assortativity statistics of a graph.
struct GraphStats {
  double r_u = 0.0;       // assortativity factor (numerator)
  double r_d = 0.0;       // denominator, non-negative up to rounding
  double r = 0.0;         // r_u / r_d, meaningful only when r_defined
  bool r_defined = false; // false when r_d == 0 (e.g. regular graphs)
  std::uint32_t d_max = 0;
  double d_avg = 0.0;
  std::uint64_t m = 0;
  std::uint32_t n = 0;
};

// Computes r_u from the edge sums and r_d from the degree-polynomial form,
// with compensated accumulation. Requires n >= 2 and at least one edge;
// raises UndefinedStatError otherwise.
GraphStats exact_stats(const Graph& g);

// Alternate route to the denominator: per-edge sums of (d_i^2 + d_j^2)/2.
// Algebraically identical to GraphStats::r_d; kept as an independent path
// for cross-checking.
double r_d_edge_form(const Graph& g);

// Sum of d_i * d_j over all edges, compensated.
double edge_degree_product_sum(const Graph& g);

struct LoadOptions {
  bool one_indexed = false;   // subtract 1 from every node token
  bool skip_self_loops = false;  // skip (with a count) instead of rejecting
};

struct LoadResult {
  Graph graph;
  // original_ids[new_id] = id as it appeared in the input.
  std::vector<std::uint64_t> original_ids;
  std::uint64_t duplicate_edges = 0;
  std::uint64_t self_loops_skipped = 0;
};

// Parses a whitespace-separated edge list ('#' starts a comment line).
// Arbitrary ids are densely remapped in first-appearance order; ids that are
// already dense 0..n-1 are kept as-is so that load(save(g)) == g.
LoadResult load_edge_list(std::istream& in, const LoadOptions& options = {});
LoadResult load_edge_list_file(const std::string& path,
                               const LoadOptions& options = {});

// Writes the canonical edge list: one "j i" line per edge (j < i), ascending
// by (i, j).
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

// Preferential-attachment graph: starts from m isolated nodes, then each new
// node attaches m edges to distinct existing nodes sampled proportionally to
// degree (repeated-endpoints list, re-drawing on collision). The edge count
// is exactly (n - m) * m. Deterministic given the seed.
Graph generate_ba(std::uint32_t n, std::uint32_t m, std::uint64_t seed);

// FNV-1a digest of the canonical edge list, for provenance records.
std::uint64_t graph_digest(const Graph& g);

}  // namespace assortdp
