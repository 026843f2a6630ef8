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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "assortdp/amplification.hpp"
#include "assortdp/estimators.hpp"
#include "assortdp/experiment.hpp"
#include "assortdp/graph.hpp"
#include "assortdp/metrics.hpp"
#include "json.hpp"

namespace {

using namespace assortdp;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;
constexpr int kExitInfeasible = 3;

struct GraphArgs {
  std::string input;
  bool one_indexed = false;
  bool skip_self_loops = false;
  std::optional<std::uint32_t> ba_n;
  std::optional<std::uint32_t> ba_m;
  std::uint64_t ba_seed = 1;
};

void add_graph_flags(CLI::App* cmd, GraphArgs& args) {
  cmd->add_option("--input", args.input, "Edge-list file ('#' comments, two ids per line)");
  cmd->add_flag("--one-indexed", args.one_indexed, "Treat input ids as 1-based");
  cmd->add_flag("--skip-self-loops", args.skip_self_loops,
                "Skip self-loops instead of rejecting the file");
  cmd->add_option("--ba-n", args.ba_n, "Synthetic graph: node count");
  cmd->add_option("--ba-m", args.ba_m, "Synthetic graph: edges per new node");
  cmd->add_option("--ba-seed", args.ba_seed, "Synthetic graph seed");
}

Graph load_graph(const GraphArgs& args) {
  const bool has_file = !args.input.empty();
  const bool has_ba = args.ba_n.has_value() || args.ba_m.has_value();
  if (has_file == has_ba) {
    throw CLI::ValidationError("graph", "give exactly one of --input or --ba-n/--ba-m");
  }
  if (has_file) {
    LoadOptions options;
    options.one_indexed = args.one_indexed;
    options.skip_self_loops = args.skip_self_loops;
    return load_edge_list_file(args.input, options).graph;
  }
  if (!args.ba_n || !args.ba_m) {
    throw CLI::ValidationError("graph", "--ba-n and --ba-m are both required");
  }
  return generate_ba(*args.ba_n, *args.ba_m, args.ba_seed);
}

int cmd_exact(const GraphArgs& graph_args, const std::string& format) {
  const Graph g = load_graph(graph_args);
  const GraphStats stats = exact_stats(g);
  if (format == "json") {
    nlohmann::json doc = {
        {"n", stats.n},      {"M", stats.m},
        {"d_max", stats.d_max}, {"d_avg", stats.d_avg},
        {"r_u", stats.r_u},  {"r_d", stats.r_d},
    };
    if (stats.r_defined) {
      doc["r"] = stats.r;
    } else {
      doc["r"] = nullptr;
    }
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "n " << stats.n << '\n'
              << "M " << stats.m << '\n'
              << "d_max " << stats.d_max << '\n'
              << "d_avg " << format_double(stats.d_avg) << '\n'
              << "r_u " << format_double(stats.r_u) << '\n'
              << "r_d " << format_double(stats.r_d) << '\n'
              << "r " << (stats.r_defined ? format_double(stats.r) : "undefined") << '\n';
  }
  return kExitOk;
}

struct EstimateArgs {
  std::string algo;
  double eps = 0.0;
  std::optional<double> eps1;
  std::optional<double> eps2;
  double delta = 1e-8;
  double alpha = 0.4;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> m_override;
  std::string bound_table;
  bool noiseless = false;
};

int cmd_estimate(const GraphArgs& graph_args, const EstimateArgs& args,
                 const std::string& format) {
  const Graph g = load_graph(graph_args);
  EstimatorOptions options;
  options.noiseless = args.noiseless;
  options.m_override = args.m_override;
  std::optional<LookupTableBound> table;
  if (!args.bound_table.empty()) {
    table = LookupTableBound::load_file(args.bound_table);
    options.bound = &*table;
  }

  const Algorithm algorithm = algorithm_from_name(args.algo);
  Estimate est;
  switch (algorithm) {
    case Algorithm::kLocal: {
      LocalBudget budget;
      budget.eps1 = args.eps1.value_or(0.6 * args.eps);
      budget.eps2 = args.eps2.value_or(args.eps - budget.eps1);
      est = local_ru(g, budget, args.seed, options);
      break;
    }
    case Algorithm::kShuffle: {
      ShuffleBudget budget;
      budget.epsilon = args.eps;
      budget.delta = args.delta;
      budget.alpha = args.alpha;
      est = shuffle_ru(g, budget, args.seed, options);
      break;
    }
    case Algorithm::kDecentral: {
      DecentralBudget budget;
      budget.eps1 = args.eps1.value_or(0.4 * args.eps);
      budget.eps2 = args.eps2.value_or(args.eps - budget.eps1);
      budget.delta = args.delta;
      est = decentral_ru(g, budget, args.seed, options);
      break;
    }
  }

  if (format == "json") {
    nlohmann::json doc = {
        {"algorithm", algorithm_name(est.algorithm)},
        {"q_hat", est.q_hat},
        {"X", est.x},
        {"Y", est.y},
        {"M_used", est.m_used},
        {"seed", est.seed},
        {"eps1", est.eps1},
        {"eps2", est.eps2},
        {"epsilon", est.epsilon},
        {"delta", est.delta},
        {"wall_time_sec", est.wall_time_sec},
    };
    if (est.algorithm == Algorithm::kShuffle) {
      doc["alpha"] = est.alpha;
      doc["eps0"] = est.eps0;
    }
    if (est.algorithm == Algorithm::kDecentral) {
      doc["sensitivity"] = est.sensitivity;
      doc["sensitivity_clamped"] = est.sensitivity_clamped;
    }
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "algorithm " << algorithm_name(est.algorithm) << '\n'
              << "q_hat " << format_double(est.q_hat) << '\n'
              << "X " << format_double(est.x) << '\n'
              << "Y " << format_double(est.y) << '\n'
              << "M_used " << est.m_used << '\n'
              << "seed " << est.seed << '\n'
              << "eps1 " << format_double(est.eps1) << '\n'
              << "eps2 " << format_double(est.eps2) << '\n'
              << "epsilon " << format_double(est.epsilon) << '\n';
    if (est.algorithm == Algorithm::kShuffle) {
      std::cout << "delta " << format_double(est.delta) << '\n'
                << "alpha " << format_double(est.alpha) << '\n'
                << "eps0 " << format_double(est.eps0) << '\n';
    }
    if (est.algorithm == Algorithm::kDecentral) {
      std::cout << "delta " << format_double(est.delta) << '\n'
                << "sensitivity " << format_double(est.sensitivity) << '\n'
                << "sensitivity_clamped " << (est.sensitivity_clamped ? 1 : 0) << '\n';
    }
  }
  return kExitOk;
}

struct ExperimentOverrides {
  bool re_paper_literal = false;
  bool noiseless = false;
  std::optional<std::uint64_t> m_override;
};

int cmd_experiment(const std::string& spec_path, std::string out_dir, bool quiet,
                   const ExperimentOverrides& overrides) {
  ExperimentSpec spec = ExperimentSpec::from_json_file(spec_path);
  if (overrides.re_paper_literal) spec.re_paper_literal = true;
  if (overrides.noiseless) spec.noiseless = true;
  if (overrides.m_override) spec.m_override = overrides.m_override;
  if (out_dir.empty()) {
    if (const char* env = std::getenv("ASSORTDP_OUT_DIR")) out_dir = env;
  }
  if (out_dir.empty()) out_dir = ".";
  std::filesystem::create_directories(out_dir);

  const ProgressFn progress = quiet ? ProgressFn{} : [](std::size_t done, std::size_t total) {
    std::cerr << "cell " << done << "/" << total << " done\n";
  };
  const ExperimentResult result = run_experiment(spec, progress);

  const auto write_file = [&](const std::string& name, const auto& writer) {
    const std::string path = out_dir + "/" + name;
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    writer(out);
  };
  write_file("detail.csv", [&](std::ostream& o) { write_detail_csv(result, o); });
  write_file("summary.csv", [&](std::ostream& o) { write_summary_csv(result, o); });
  write_file("result.json",
             [&](std::ostream& o) { o << result_json_text(spec, result) << '\n'; });

  if (result.any_partial()) {
    std::size_t failed = 0;
    for (const CellResult& cell : result.cells) {
      for (const TrialOutcome& t : cell.trials) failed += t.failed ? 1 : 0;
    }
    std::cerr << "warning: " << failed << " trial(s) failed; see result.json\n";
    return kExitPartial;
  }
  return kExitOk;
}

int cmd_gen_ba(std::uint32_t n, std::uint32_t m, std::uint64_t seed,
               const std::string& out_path) {
  const Graph g = generate_ba(n, m, seed);
  save_edge_list_file(g, out_path);
  std::cout << "n " << g.node_count() << '\n' << "M " << g.edge_count() << '\n';
  return kExitOk;
}

int cmd_amplify(std::uint64_t n, double delta, std::optional<double> eps0,
                std::optional<double> eps, const std::string& bound_table) {
  if (eps0.has_value() == eps.has_value()) {
    throw CLI::ValidationError("amplify", "give exactly one of --eps0 (forward) or --eps (inverse)");
  }
  std::optional<LookupTableBound> table;
  const ClosedFormBound closed_form;
  const ShuffleBound* bound = &closed_form;
  if (!bound_table.empty()) {
    table = LookupTableBound::load_file(bound_table);
    bound = &*table;
  }
  const double cap = epsilon0_cap(n, delta);
  std::cout << "cap " << format_double(cap) << '\n';
  if (eps0) {
    std::cout << "epsilon " << format_double(bound->amplified(n, *eps0, delta)) << '\n';
  } else {
    const double e0 = local_budget_for(n, *eps, delta, *bound);
    std::cout << "eps0 " << format_double(e0) << '\n'
              << "epsilon_at_eps0 " << format_double(bound->amplified(n, e0, delta)) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and differentially private network assortativity"};
  app.require_subcommand(1);

  GraphArgs graph_args;
  std::string format = "text";

  auto* exact = app.add_subcommand("exact", "Exact assortativity statistics");
  add_graph_flags(exact, graph_args);
  exact->add_option("--format", format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  EstimateArgs est_args;
  auto* estimate = app.add_subcommand("estimate", "One private estimation run");
  add_graph_flags(estimate, graph_args);
  estimate->add_option("--algo", est_args.algo, "local, shuffle or decentral")->required();
  estimate->add_option("--eps", est_args.eps, "Total privacy budget")->required();
  estimate->add_option("--eps1", est_args.eps1, "Override the first budget share");
  estimate->add_option("--eps2", est_args.eps2, "Override the second budget share");
  estimate->add_option("--delta", est_args.delta, "Failure probability (shuffle, decentral)");
  estimate->add_option("--alpha", est_args.alpha, "Shuffle degree-noise budget fraction");
  estimate->add_option("--seed", est_args.seed, "Run seed");
  estimate->add_option("--m-override", est_args.m_override,
                       "Use this edge count in the collector instead of the true M");
  estimate->add_option("--bound-table", est_args.bound_table,
                       "Tabulated amplification bound (epsilon0,epsilon rows)");
#ifdef ASSORTDP_ENABLE_NOISELESS
  estimate->add_flag("--noiseless", est_args.noiseless,
                     "Disable all randomizers (test builds only)");
#endif
  estimate->add_option("--format", format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string spec_path;
  std::string out_dir;
  bool quiet = false;
  bool re_literal = false;
  bool exp_noiseless = false;
  std::optional<std::uint64_t> exp_m_override;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte-Carlo experiment grid");
  experiment->add_option("--spec", spec_path, "Experiment spec (JSON)")->required();
  experiment->add_option("--out", out_dir,
                         "Output directory (default $ASSORTDP_OUT_DIR or .)");
  experiment->add_flag("--quiet", quiet, "Suppress progress lines");
  experiment->add_flag("--re-paper-literal", re_literal,
                       "Relative error with the min(truth, eta) denominator");
  experiment->add_option("--m-override", exp_m_override,
                         "Collector edge count override for every trial");
#ifdef ASSORTDP_ENABLE_NOISELESS
  experiment->add_flag("--noiseless", exp_noiseless,
                       "Disable all randomizers (test builds only)");
#endif

  std::uint32_t gen_n = 0;
  std::uint32_t gen_m = 0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-ba", "Generate a preferential-attachment graph");
  gen->add_option("--n", gen_n, "Node count")->required();
  gen->add_option("--m", gen_m, "Edges per new node")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output edge-list path")->required();

  std::uint64_t amp_n = 0;
  double amp_delta = 1e-8;
  std::optional<double> amp_eps0;
  std::optional<double> amp_eps;
  std::string amp_table;
  auto* amplify = app.add_subcommand("amplify", "Shuffle-model privacy accounting");
  amplify->add_option("--n", amp_n, "Population size")->required();
  amplify->add_option("--delta", amp_delta, "Failure probability");
  amplify->add_option("--eps0", amp_eps0, "Forward: local budget to amplify");
  amplify->add_option("--eps", amp_eps, "Inverse: target central budget");
  amplify->add_option("--bound-table", amp_table,
                      "Tabulated amplification bound (epsilon0,epsilon rows)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (exact->parsed()) return cmd_exact(graph_args, format);
    if (estimate->parsed()) return cmd_estimate(graph_args, est_args, format);
    if (experiment->parsed()) {
      ExperimentOverrides overrides;
      overrides.re_paper_literal = re_literal;
      overrides.noiseless = exp_noiseless;
      overrides.m_override = exp_m_override;
      return cmd_experiment(spec_path, out_dir, quiet, overrides);
    }
    if (gen->parsed()) return cmd_gen_ba(gen_n, gen_m, gen_seed, gen_out);
    if (amplify->parsed()) return cmd_amplify(amp_n, amp_delta, amp_eps0, amp_eps, amp_table);
  } catch (const InfeasiblePopulationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InfeasibleBudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
