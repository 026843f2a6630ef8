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

#include "assortdp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "assortdp/metrics.hpp"
#include "assortdp/summation.hpp"
#include "json.hpp"

namespace assortdp {

namespace {

constexpr const char* kCodeVersion = "assortdp 0.1.0";

using nlohmann::json;

Algorithm parse_algorithm(const json& value, const char* field) {
  if (!value.is_string()) throw ParseError(std::string(field) + " must be a string");
  try {
    return algorithm_from_name(value.get<std::string>());
  } catch (const ParameterError& e) {
    throw ParseError(std::string(field) + ": " + e.what());
  }
}

double require_positive(const json& value, const char* field) {
  if (!value.is_number()) throw ParseError(std::string(field) + " must be a number");
  const double v = value.get<double>();
  if (!(v > 0.0)) throw ParseError(std::string(field) + " must be > 0");
  return v;
}

}  // namespace

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("experiment spec: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("experiment spec must be a JSON object");

  ExperimentSpec spec;

  if (!doc.contains("graph") || !doc["graph"].is_object()) {
    throw ParseError("graph must be an object with 'path' or 'ba'");
  }
  const json& graph = doc["graph"];
  const bool has_path = graph.contains("path");
  const bool has_ba = graph.contains("ba");
  if (has_path == has_ba) {
    throw ParseError("graph: exactly one of 'path' and 'ba' is required");
  }
  if (has_path) {
    if (!graph["path"].is_string()) throw ParseError("graph.path must be a string");
    spec.graph.path = graph["path"].get<std::string>();
    if (graph.contains("one_indexed")) {
      if (!graph["one_indexed"].is_boolean()) {
        throw ParseError("graph.one_indexed must be a boolean");
      }
      spec.graph.one_indexed = graph["one_indexed"].get<bool>();
    }
  } else {
    const json& ba = graph["ba"];
    if (!ba.is_object() || !ba.contains("n") || !ba.contains("m")) {
      throw ParseError("graph.ba needs integer fields 'n' and 'm'");
    }
    spec.graph.ba_n = static_cast<std::uint32_t>(require_positive(ba["n"], "graph.ba.n"));
    spec.graph.ba_m = static_cast<std::uint32_t>(require_positive(ba["m"], "graph.ba.m"));
    if (ba.contains("seed")) {
      if (!ba["seed"].is_number_unsigned()) throw ParseError("graph.ba.seed must be unsigned");
      spec.graph.ba_seed = ba["seed"].get<std::uint64_t>();
    }
  }

  if (doc.contains("algorithms")) {
    if (!doc["algorithms"].is_array() || doc["algorithms"].empty()) {
      throw ParseError("algorithms must be a non-empty array");
    }
    spec.algorithms.clear();
    for (const auto& a : doc["algorithms"]) {
      spec.algorithms.push_back(parse_algorithm(a, "algorithms[]"));
    }
  }

  if (doc.contains("epsilons")) {
    if (!doc["epsilons"].is_array() || doc["epsilons"].empty()) {
      throw ParseError("epsilons must be a non-empty array");
    }
    spec.epsilons.clear();
    for (std::size_t i = 0; i < doc["epsilons"].size(); ++i) {
      spec.epsilons.push_back(require_positive(
          doc["epsilons"][i], ("epsilons[" + std::to_string(i) + "]").c_str()));
    }
  }

  if (doc.contains("delta")) spec.delta = require_positive(doc["delta"], "delta");
  if (spec.delta >= 1.0) throw ParseError("delta must be < 1");

  if (doc.contains("local")) {
    const json& local = doc["local"];
    if (local.contains("eps1_frac")) {
      spec.local_eps1_frac = require_positive(local["eps1_frac"], "local.eps1_frac");
      if (spec.local_eps1_frac >= 1.0) throw ParseError("local.eps1_frac must be < 1");
    }
  }
  if (doc.contains("decentral")) {
    const json& dec = doc["decentral"];
    if (dec.contains("eps1_frac")) {
      spec.decentral_eps1_frac = require_positive(dec["eps1_frac"], "decentral.eps1_frac");
      if (spec.decentral_eps1_frac >= 1.0) throw ParseError("decentral.eps1_frac must be < 1");
    }
  }
  if (doc.contains("shuffle")) {
    const json& sh = doc["shuffle"];
    if (sh.contains("alpha")) {
      spec.shuffle_alpha = require_positive(sh["alpha"], "shuffle.alpha");
      if (spec.shuffle_alpha >= 1.0) throw ParseError("shuffle.alpha must be < 1");
    }
    if (sh.contains("bound_table")) {
      if (!sh["bound_table"].is_string()) throw ParseError("shuffle.bound_table must be a string");
      spec.bound_table = sh["bound_table"].get<std::string>();
    }
  }

  if (doc.contains("trials_re")) {
    spec.trials_re = static_cast<int>(require_positive(doc["trials_re"], "trials_re"));
  }
  if (doc.contains("trials_sign")) {
    spec.trials_sign = static_cast<int>(require_positive(doc["trials_sign"], "trials_sign"));
  }
  if (doc.contains("base_seed")) {
    if (!doc["base_seed"].is_number_unsigned()) throw ParseError("base_seed must be unsigned");
    spec.base_seed = doc["base_seed"].get<std::uint64_t>();
  }
  if (doc.contains("threads")) {
    if (!doc["threads"].is_number_unsigned()) throw ParseError("threads must be unsigned");
    spec.threads = doc["threads"].get<unsigned>();
  }
  if (doc.contains("m_override")) {
    if (!doc["m_override"].is_null()) {
      spec.m_override = static_cast<std::uint64_t>(
          require_positive(doc["m_override"], "m_override"));
    }
  }
  if (doc.contains("re_paper_literal")) {
    if (!doc["re_paper_literal"].is_boolean()) throw ParseError("re_paper_literal must be a boolean");
    spec.re_paper_literal = doc["re_paper_literal"].get<bool>();
  }
  if (doc.contains("noiseless")) {
    if (!doc["noiseless"].is_boolean()) throw ParseError("noiseless must be a boolean");
    spec.noiseless = doc["noiseless"].get<bool>();
  }
  return spec;
}

ExperimentSpec ExperimentSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open experiment spec: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string ExperimentSpec::to_json_text() const {
  json doc;
  if (!graph.path.empty()) {
    doc["graph"] = {{"path", graph.path}, {"one_indexed", graph.one_indexed}};
  } else {
    doc["graph"] = {{"ba", {{"n", *graph.ba_n}, {"m", *graph.ba_m}, {"seed", graph.ba_seed}}}};
  }
  json algos = json::array();
  for (const Algorithm a : algorithms) algos.push_back(algorithm_name(a));
  doc["algorithms"] = algos;
  doc["epsilons"] = epsilons;
  doc["delta"] = delta;
  doc["local"] = {{"eps1_frac", local_eps1_frac}};
  doc["decentral"] = {{"eps1_frac", decentral_eps1_frac}};
  doc["shuffle"] = {{"alpha", shuffle_alpha}, {"bound_table", bound_table}};
  doc["trials_re"] = trials_re;
  doc["trials_sign"] = trials_sign;
  doc["base_seed"] = base_seed;
  doc["threads"] = threads;
  if (m_override) {
    doc["m_override"] = *m_override;
  } else {
    doc["m_override"] = nullptr;
  }
  doc["re_paper_literal"] = re_paper_literal;
  doc["noiseless"] = noiseless;
  return doc.dump(2);
}

Graph load_graph_source(const GraphSource& source) {
  const bool has_path = !source.path.empty();
  const bool has_ba = source.ba_n.has_value() && source.ba_m.has_value();
  if (has_path == has_ba) {
    throw ParameterError("graph source needs exactly one of a path or ba parameters");
  }
  if (has_path) {
    LoadOptions options;
    options.one_indexed = source.one_indexed;
    return load_edge_list_file(source.path, options).graph;
  }
  return generate_ba(*source.ba_n, *source.ba_m, source.ba_seed);
}

bool ExperimentResult::any_partial() const {
  return std::any_of(cells.begin(), cells.end(),
                     [](const CellResult& c) { return c.partial; });
}

namespace {

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

Estimate run_one_trial(const Graph& g, const ExperimentSpec& spec, Algorithm algorithm,
                       double epsilon, std::uint64_t seed,
                       const ShuffleBound* bound) {
  EstimatorOptions options;
  options.noiseless = spec.noiseless;
  options.m_override = spec.m_override;
  options.bound = bound;
  switch (algorithm) {
    case Algorithm::kLocal: {
      LocalBudget budget;
      budget.eps1 = spec.local_eps1_frac * epsilon;
      budget.eps2 = (1.0 - spec.local_eps1_frac) * epsilon;
      return local_ru(g, budget, seed, options);
    }
    case Algorithm::kShuffle: {
      ShuffleBudget budget;
      budget.epsilon = epsilon;
      budget.delta = spec.delta;
      budget.alpha = spec.shuffle_alpha;
      return shuffle_ru(g, budget, seed, options);
    }
    case Algorithm::kDecentral: {
      DecentralBudget budget;
      budget.eps1 = spec.decentral_eps1_frac * epsilon;
      budget.eps2 = (1.0 - spec.decentral_eps1_frac) * epsilon;
      budget.delta = spec.delta;
      return decentral_ru(g, budget, seed, options);
    }
  }
  throw ParameterError("unknown algorithm");
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, const Graph& g,
                                const ProgressFn& progress) {
  const auto start = std::chrono::steady_clock::now();
  if (spec.algorithms.empty()) throw ParameterError("no algorithms selected");
  if (spec.epsilons.empty()) throw ParameterError("empty epsilon grid");
  if (spec.trials_re < 1 || spec.trials_sign < 1) {
    throw ParameterError("trial counts must be >= 1");
  }

  const GraphStats truth = exact_stats(g);

  std::optional<LookupTableBound> table;
  if (!spec.bound_table.empty()) {
    table = LookupTableBound::load_file(spec.bound_table);
  }
  const ShuffleBound* bound = table ? &*table : nullptr;

  const int trials_per_cell = std::max(spec.trials_re, spec.trials_sign);
  const std::size_t cell_count = spec.algorithms.size() * spec.epsilons.size();

  ExperimentResult result;
  result.cells.resize(cell_count);
  result.truth_ru = truth.r_u;
  result.graph_n = g.node_count();
  result.graph_m = g.edge_count();
  result.graph_digest = graph_digest(g);
  result.base_seed = spec.base_seed;
  result.trials_re = spec.trials_re;
  result.trials_sign = spec.trials_sign;
  result.code_version = kCodeVersion;

  for (std::size_t c = 0; c < cell_count; ++c) {
    CellResult& cell = result.cells[c];
    cell.algorithm = spec.algorithms[c / spec.epsilons.size()];
    cell.epsilon = spec.epsilons[c % spec.epsilons.size()];
    cell.trials.resize(trials_per_cell);
  }

  // One task per trial; every trial is seeded independently of scheduling,
  // so any thread count produces the same numbers.
  const std::size_t total_tasks = cell_count * static_cast<std::size_t>(trials_per_cell);
  std::atomic<std::size_t> next_task{0};
  std::atomic<std::size_t> cells_done{0};
  std::mutex progress_mutex;
  std::vector<std::atomic<int>> cell_remaining(cell_count);
  for (auto& r : cell_remaining) r.store(trials_per_cell);

  const auto worker = [&]() {
    for (;;) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= total_tasks) return;
      const std::size_t c = task / trials_per_cell;
      const int t = static_cast<int>(task % trials_per_cell);
      CellResult& cell = result.cells[c];
      const std::size_t algo_index = c / spec.epsilons.size();
      const std::size_t eps_index = c % spec.epsilons.size();
      const std::uint64_t seed =
          derive_seed(spec.base_seed, static_cast<std::uint64_t>(algo_index) + 1,
                      eps_index, static_cast<std::uint64_t>(t));
      TrialOutcome& out = cell.trials[t];
      out.seed = seed;
      try {
        const Estimate est =
            run_one_trial(g, spec, cell.algorithm, cell.epsilon, seed, bound);
        out.q_hat = est.q_hat;
        out.re = spec.re_paper_literal
                     ? relative_error_literal(est.q_hat, truth.r_u, g.node_count())
                     : relative_error(est.q_hat, truth.r_u, g.node_count());
        out.sign_correct = truth.r_u != 0.0 && est.q_hat != 0.0 &&
                           ((est.q_hat > 0.0) == (truth.r_u > 0.0));
      } catch (const Error& e) {
        out.failed = true;
        out.error = e.what();
        out.q_hat = std::nan("");
        out.re = std::nan("");
      }
      if (cell_remaining[c].fetch_sub(1) == 1 && progress) {
        const std::size_t done = cells_done.fetch_add(1) + 1;
        const std::lock_guard<std::mutex> lock(progress_mutex);
        progress(done, cell_count);
      }
    }
  };

  unsigned thread_count = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  if (thread_count == 0) thread_count = 1;
  thread_count = std::min<unsigned>(thread_count, static_cast<unsigned>(total_tasks));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Aggregate in a fixed order: RE statistics over the first trials_re
  // trials, sign accuracy over the first trials_sign trials.
  for (CellResult& cell : result.cells) {
    std::vector<double> re_values;
    std::vector<double> q_values;
    re_values.reserve(spec.trials_re);
    q_values.reserve(spec.trials_re);
    int sign_total = 0;
    int sign_correct = 0;
    for (int t = 0; t < trials_per_cell; ++t) {
      const TrialOutcome& out = cell.trials[t];
      if (out.failed) {
        cell.partial = true;
        continue;
      }
      if (t < spec.trials_re) {
        re_values.push_back(out.re);
        q_values.push_back(out.q_hat);
      }
      if (t < spec.trials_sign) {
        ++sign_total;
        if (out.sign_correct) ++sign_correct;
      }
    }
    if (!re_values.empty()) {
      CompensatedSum re_sum;
      for (const double re : re_values) re_sum.add(re);
      cell.mean_re = re_sum.value() / static_cast<double>(re_values.size());
      cell.median_re = median_of(re_values);
      cell.mse = empirical_mse(q_values, truth.r_u);
    }
    cell.sign_accuracy =
        sign_total > 0 ? static_cast<double>(sign_correct) / sign_total : 0.0;
  }

  result.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const ProgressFn& progress) {
  const Graph g = load_graph_source(spec.graph);
  return run_experiment(spec, g, progress);
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_detail_csv(const ExperimentResult& result, std::ostream& out) {
  out << "algorithm,epsilon,trial,q_hat,re,sign_correct,seed\n";
  for (const CellResult& cell : result.cells) {
    for (std::size_t t = 0; t < cell.trials.size(); ++t) {
      const TrialOutcome& trial = cell.trials[t];
      out << algorithm_name(cell.algorithm) << ',' << format_double(cell.epsilon)
          << ',' << t << ',' << format_double(trial.q_hat) << ','
          << format_double(trial.re) << ',' << (trial.sign_correct ? 1 : 0) << ','
          << trial.seed << '\n';
    }
  }
}

void write_summary_csv(const ExperimentResult& result, std::ostream& out) {
  out << "algorithm,epsilon,mean_re,mse,sign_accuracy,trials\n";
  for (const CellResult& cell : result.cells) {
    out << algorithm_name(cell.algorithm) << ',' << format_double(cell.epsilon)
        << ',' << format_double(cell.mean_re) << ',' << format_double(cell.mse)
        << ',' << format_double(cell.sign_accuracy) << ',' << cell.trials.size()
        << '\n';
  }
}

std::string result_json_text(const ExperimentSpec& spec, const ExperimentResult& result) {
  json doc;
  doc["spec"] = json::parse(spec.to_json_text());
  char digest[20];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(result.graph_digest));
  doc["provenance"] = {
      {"graph_digest", digest},
      {"graph_n", result.graph_n},
      {"graph_m", result.graph_m},
      {"base_seed", result.base_seed},
      {"code_version", result.code_version},
      {"truth_ru", result.truth_ru},
      {"wall_time_sec", result.wall_time_sec},
  };
  json cells = json::array();
  for (const CellResult& cell : result.cells) {
    json trials = json::array();
    for (const TrialOutcome& t : cell.trials) {
      json row = {{"q_hat", t.q_hat}, {"re", t.re},
                  {"sign_correct", t.sign_correct}, {"seed", t.seed}};
      if (t.failed) row["error"] = t.error;
      trials.push_back(row);
    }
    cells.push_back({{"algorithm", algorithm_name(cell.algorithm)},
                     {"epsilon", cell.epsilon},
                     {"mean_re", cell.mean_re},
                     {"median_re", cell.median_re},
                     {"mse", cell.mse},
                     {"sign_accuracy", cell.sign_accuracy},
                     {"partial", cell.partial},
                     {"trials", trials}});
  }
  doc["cells"] = cells;
  return doc.dump(2);
}

}  // namespace assortdp
