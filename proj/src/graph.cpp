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

#include "assortdp/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>

#include "assortdp/rng.hpp"
#include "assortdp/summation.hpp"

namespace assortdp {

Graph Graph::from_edges(std::uint32_t n,
                        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  Graph g;
  g.n_ = n;

  // Canonicalize to (hi, lo), validate, dedup.
  for (auto& e : edges) {
    if (e.first == e.second) {
      throw ParameterError("self-loop on node " + std::to_string(e.first));
    }
    if (e.first >= n || e.second >= n) {
      throw ParameterError("edge endpoint out of range");
    }
    if (e.first < e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.m_ = edges.size();

  std::vector<std::uint32_t> deg(n, 0);
  for (const auto& [hi, lo] : edges) {
    ++deg[hi];
    ++deg[lo];
  }
  g.d_max_ = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());

  g.offsets_.assign(n + 1, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  }
  g.adjacency_.resize(2 * g.m_);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);

  const std::uint64_t bits = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  g.tri_bits_.assign((bits + 63) / 64, 0);

  for (const auto& [hi, lo] : edges) {
    g.adjacency_[cursor[hi]++] = lo;
    g.adjacency_[cursor[lo]++] = hi;
    const std::uint64_t bit = pair_index(hi, lo);
    g.tri_bits_[bit >> 6] |= 1ULL << (bit & 63);
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    std::sort(g.adjacency_.begin() + g.offsets_[i],
              g.adjacency_.begin() + g.offsets_[i + 1]);
  }
  return g;
}

std::uint64_t Graph::neighbor_degree_sum(std::uint32_t i) const {
  check_node(i);
  std::uint64_t total = 0;
  for (const std::uint32_t j : neighbors(i)) {
    total += offsets_[j + 1] - offsets_[j];
  }
  return total;
}

std::uint64_t Graph::degree_square_sum() const {
  std::uint64_t total = 0;
  for (std::uint32_t i = 0; i < n_; ++i) {
    const std::uint64_t d = offsets_[i + 1] - offsets_[i];
    total += d * d;
  }
  return total;
}

GraphStats exact_stats(const Graph& g) {
  if (g.node_count() < 2 || g.edge_count() == 0) {
    throw UndefinedStatError(
        "assortativity requires at least 2 nodes and 1 edge");
  }
  const double m = static_cast<double>(g.edge_count());

  // Per-edge sums of d_i*d_j and (d_i+d_j)/2.
  CompensatedSum products;
  CompensatedSum half_degree_sums;
  g.for_each_edge([&](std::uint32_t i, std::uint32_t j) {
    const double di = g.degree(i);
    const double dj = g.degree(j);
    products.add(di * dj);
    half_degree_sums.add(0.5 * (di + dj));
  });
  const double mean_sum = half_degree_sums.value() / m;

  // Denominator via the degree-polynomial form.
  CompensatedSum cubes;
  CompensatedSum squares;
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    const double d = g.degree(i);
    cubes.add(d * d * d);
    squares.add(d * d);
  }
  const double half_cubes = cubes.value() / (2.0 * m);
  const double half_squares = squares.value() / (2.0 * m);

  GraphStats stats;
  stats.n = g.node_count();
  stats.m = g.edge_count();
  stats.d_max = g.max_degree();
  stats.d_avg = g.avg_degree();
  stats.r_u = products.value() / m - mean_sum * mean_sum;
  stats.r_d = half_cubes - half_squares * half_squares;
  stats.r_defined = stats.r_d > 0.0;
  stats.r = stats.r_defined ? stats.r_u / stats.r_d : 0.0;
  return stats;
}

double r_d_edge_form(const Graph& g) {
  if (g.edge_count() == 0) {
    throw UndefinedStatError("denominator requires at least 1 edge");
  }
  const double m = static_cast<double>(g.edge_count());
  CompensatedSum square_sums;
  CompensatedSum half_degree_sums;
  g.for_each_edge([&](std::uint32_t i, std::uint32_t j) {
    const double di = g.degree(i);
    const double dj = g.degree(j);
    square_sums.add(0.5 * (di * di + dj * dj));
    half_degree_sums.add(0.5 * (di + dj));
  });
  const double mean_sum = half_degree_sums.value() / m;
  return square_sums.value() / m - mean_sum * mean_sum;
}

double edge_degree_product_sum(const Graph& g) {
  CompensatedSum products;
  g.for_each_edge([&](std::uint32_t i, std::uint32_t j) {
    products.add(static_cast<double>(g.degree(i)) * g.degree(j));
  });
  return products.value();
}

namespace {

bool parse_u64(const std::string& token, std::uint64_t& out) {
  if (token.empty()) return false;
  std::uint64_t value = 0;
  for (const char c : token) {
    if (c < '0' || c > '9') return false;
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  out = value;
  return true;
}

}  // namespace

LoadResult load_edge_list(std::istream& in, const LoadOptions& options) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw_edges;
  std::vector<std::uint64_t> appearance_order;
  std::unordered_map<std::uint64_t, std::uint32_t> remap;
  LoadResult result;

  const auto intern = [&](std::uint64_t id) -> std::uint32_t {
    auto [it, inserted] = remap.emplace(id, static_cast<std::uint32_t>(appearance_order.size()));
    if (inserted) appearance_order.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  std::uint64_t max_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // Strip a trailing CR so Windows-style files load.
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = 0;
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos == line.size() || line[pos] == '#') continue;

    std::string tokens[2];
    int count = 0;
    while (pos < line.size()) {
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      if (count < 2) tokens[count] = line.substr(pos, end - pos);
      ++count;
      pos = end;
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    }
    if (count != 2) {
      throw ParseError("expected two node tokens, got " + std::to_string(count), line_no);
    }
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!parse_u64(tokens[0], a) || !parse_u64(tokens[1], b)) {
      throw ParseError("non-integer node token", line_no);
    }
    if (options.one_indexed) {
      if (a == 0 || b == 0) {
        throw ParseError("node id 0 in a one-indexed edge list", line_no);
      }
      --a;
      --b;
    }
    if (a == b) {
      if (options.skip_self_loops) {
        ++result.self_loops_skipped;
        continue;
      }
      throw ParseError("self-loop (" + std::to_string(a) + ", " + std::to_string(b) + ") rejected",
                       line_no);
    }
    max_id = std::max({max_id, a, b});
    raw_edges.emplace_back(a, b);
  }

  // First pass fixes the appearance order; ids that are already dense 0..n-1
  // keep their values so canonical files round-trip unchanged.
  for (const auto& [a, b] : raw_edges) {
    intern(a);
    intern(b);
  }
  const std::uint32_t n = static_cast<std::uint32_t>(appearance_order.size());
  const bool already_dense = n > 0 && max_id == n - 1;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(raw_edges.size());
  if (already_dense) {
    result.original_ids.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) result.original_ids[i] = i;
    for (const auto& [a, b] : raw_edges) {
      edges.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    }
  } else {
    result.original_ids = appearance_order;
    for (const auto& [a, b] : raw_edges) {
      edges.emplace_back(remap[a], remap[b]);
    }
  }

  const std::size_t before = edges.size();
  result.graph = Graph::from_edges(n, std::move(edges));
  result.duplicate_edges = before - result.graph.edge_count();
  return result;
}

LoadResult load_edge_list_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list: " + path);
  return load_edge_list(in, options);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  g.for_each_edge([&](std::uint32_t i, std::uint32_t j) {
    out << j << ' ' << i << '\n';
  });
}

void save_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  save_edge_list(g, out);
  if (!out) throw ParseError("failed writing edge list: " + path);
}

Graph generate_ba(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
  if (m == 0 || m >= n) {
    throw ParameterError("preferential attachment requires 1 <= m < n");
  }
  RngStream rng(seed, StreamId{.role = Role::kGenerator});

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(static_cast<std::size_t>(n - m) * m);
  // One entry per edge endpoint, so sampling an index is sampling a node
  // proportionally to its degree.
  std::vector<std::uint32_t> repeated;
  repeated.reserve(2 * static_cast<std::size_t>(n - m) * m);

  std::vector<std::uint32_t> targets(m);
  for (std::uint32_t t = 0; t < m; ++t) targets[t] = t;

  for (std::uint32_t source = m; source < n; ++source) {
    for (const std::uint32_t t : targets) {
      edges.emplace_back(source, t);
      repeated.push_back(t);
      repeated.push_back(source);
    }
    if (source + 1 == n) break;
    std::set<std::uint32_t> chosen;
    while (chosen.size() < m) {
      chosen.insert(repeated[rng.below(repeated.size())]);
    }
    targets.assign(chosen.begin(), chosen.end());
  }
  return Graph::from_edges(n, std::move(edges));
}

std::uint64_t graph_digest(const Graph& g) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  const auto mix = [&hash](std::uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (value >> (8 * byte)) & 0xff;
      hash *= 0x100000001b3ULL;
    }
  };
  mix(g.node_count());
  mix(g.edge_count());
  g.for_each_edge([&](std::uint32_t i, std::uint32_t j) {
    mix((static_cast<std::uint64_t>(i) << 32) | j);
  });
  return hash;
}

}  // namespace assortdp
