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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "assortdp/estimators.hpp"
#include "assortdp/graph.hpp"

namespace assortdp {

// Graph input for an experiment: either an edge-list file or synthetic
// preferential-attachment parameters. Exactly one must be set.
struct GraphSource {
  std::string path;
  bool one_indexed = false;
  std::optional<std::uint32_t> ba_n;
  std::optional<std::uint32_t> ba_m;
  std::uint64_t ba_seed = 1;
};

// Monte-Carlo evaluation grid: algorithms x budgets, with per-cell trial
// counts for the relative-error average and for the sign-accuracy rate.
struct ExperimentSpec {
  GraphSource graph;
  std::vector<Algorithm> algorithms{Algorithm::kLocal, Algorithm::kShuffle,
                                    Algorithm::kDecentral};
  std::vector<double> epsilons{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  double delta = 1e-8;
  double local_eps1_frac = 0.6;      // adjacency share of the local budget
  double decentral_eps1_frac = 0.4;  // degree share of the decentralized budget
  double shuffle_alpha = 0.4;
  std::string bound_table;           // optional tabulated amplification bound
  int trials_re = 20;
  int trials_sign = 100;
  std::uint64_t base_seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::optional<std::uint64_t> m_override;
  bool re_paper_literal = false;
  bool noiseless = false;

  static ExperimentSpec from_json_text(const std::string& text);
  static ExperimentSpec from_json_file(const std::string& path);
  std::string to_json_text() const;
};

struct TrialOutcome {
  double q_hat = 0.0;
  double re = 0.0;
  bool sign_correct = false;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
};

struct CellResult {
  Algorithm algorithm = Algorithm::kLocal;
  double epsilon = 0.0;
  std::vector<TrialOutcome> trials;  // max(trials_re, trials_sign) entries
  double mean_re = 0.0;
  double median_re = 0.0;
  double mse = 0.0;
  double sign_accuracy = 0.0;
  bool partial = false;  // at least one trial failed
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  double truth_ru = 0.0;
  std::uint32_t graph_n = 0;
  std::uint64_t graph_m = 0;
  std::uint64_t graph_digest = 0;
  std::uint64_t base_seed = 0;
  int trials_re = 0;
  int trials_sign = 0;
  std::string code_version;
  double wall_time_sec = 0.0;

  bool any_partial() const;
};

using ProgressFn = std::function<void(std::size_t cells_done, std::size_t cells_total)>;

// Loads or generates the graph named by the spec.
Graph load_graph_source(const GraphSource& source);

// Runs every (algorithm, epsilon) cell. Per-trial seeds derive from
// (base_seed, algorithm, epsilon index, trial index) only, so results are
// independent of thread count and execution order. Trial failures are
// recorded per cell rather than raised.
ExperimentResult run_experiment(const ExperimentSpec& spec, const Graph& g,
                                const ProgressFn& progress = {});
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const ProgressFn& progress = {});

// Per-trial rows: algorithm,epsilon,trial,q_hat,re,sign_correct,seed
void write_detail_csv(const ExperimentResult& result, std::ostream& out);
// Aggregates: algorithm,epsilon,mean_re,mse,sign_accuracy,trials
void write_summary_csv(const ExperimentResult& result, std::ostream& out);
// Full mirror with provenance (graph digest, seeds, medians, timings).
std::string result_json_text(const ExperimentSpec& spec, const ExperimentResult& result);

// Round-trippable, locale-independent formatting used in all result files.
std::string format_double(double value);

}  // namespace assortdp
