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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "assortdp/amplification.hpp"
#include "assortdp/estimators.hpp"
#include "assortdp/experiment.hpp"
#include "assortdp/graph.hpp"
#include "assortdp/mechanisms.hpp"
#include "assortdp/metrics.hpp"

namespace py = pybind11;
using namespace assortdp;

namespace {

EstimatorOptions make_options(bool noiseless, std::optional<std::uint64_t> m_override) {
  EstimatorOptions options;
  options.noiseless = noiseless;
  options.m_override = m_override;
  return options;
}

}  // namespace

PYBIND11_MODULE(_assortdp, m) {
  m.doc() = "Exact and differentially private network assortativity";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<UndefinedStatError>(m, "UndefinedStatError", PyExc_ValueError);
  py::register_exception<InfeasiblePopulationError>(m, "InfeasiblePopulationError",
                                                    PyExc_ValueError);
  py::register_exception<InfeasibleBudgetError>(m, "InfeasibleBudgetError",
                                                PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_edges",
          [](std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
            return Graph::from_edges(n, std::move(edges));
          },
          py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Graph::node_count)
      .def_property_readonly("m", &Graph::edge_count)
      .def("degree", &Graph::degree, py::arg("i"))
      .def("neighbors",
           [](const Graph& g, std::uint32_t i) {
             const auto view = g.neighbors(i);
             return std::vector<std::uint32_t>(view.begin(), view.end());
           },
           py::arg("i"))
      .def("has_edge", &Graph::has_edge, py::arg("i"), py::arg("j"))
      .def_property_readonly("max_degree", &Graph::max_degree)
      .def_property_readonly("avg_degree", &Graph::avg_degree)
      .def("neighbor_degree_sum", &Graph::neighbor_degree_sum, py::arg("i"))
      .def("__repr__", [](const Graph& g) {
        std::ostringstream s;
        s << "Graph(n=" << g.node_count() << ", m=" << g.edge_count() << ")";
        return s.str();
      });

  py::class_<GraphStats>(m, "GraphStats")
      .def_readonly("r_u", &GraphStats::r_u)
      .def_readonly("r_d", &GraphStats::r_d)
      .def_readonly("r", &GraphStats::r)
      .def_readonly("r_defined", &GraphStats::r_defined)
      .def_readonly("d_max", &GraphStats::d_max)
      .def_readonly("d_avg", &GraphStats::d_avg)
      .def_readonly("m", &GraphStats::m)
      .def_readonly("n", &GraphStats::n);

  py::class_<Estimate>(m, "Estimate")
      .def_property_readonly("algorithm",
                             [](const Estimate& e) { return algorithm_name(e.algorithm); })
      .def_readonly("q_hat", &Estimate::q_hat)
      .def_readonly("x", &Estimate::x)
      .def_readonly("y", &Estimate::y)
      .def_readonly("m_used", &Estimate::m_used)
      .def_readonly("seed", &Estimate::seed)
      .def_readonly("eps1", &Estimate::eps1)
      .def_readonly("eps2", &Estimate::eps2)
      .def_readonly("epsilon", &Estimate::epsilon)
      .def_readonly("delta", &Estimate::delta)
      .def_readonly("alpha", &Estimate::alpha)
      .def_readonly("eps0", &Estimate::eps0)
      .def_readonly("sensitivity", &Estimate::sensitivity)
      .def_readonly("sensitivity_clamped", &Estimate::sensitivity_clamped);

  m.def(
      "load_edge_list",
      [](const std::string& path, bool one_indexed, bool skip_self_loops) {
        LoadOptions options;
        options.one_indexed = one_indexed;
        options.skip_self_loops = skip_self_loops;
        return load_edge_list_file(path, options).graph;
      },
      py::arg("path"), py::arg("one_indexed") = false, py::arg("skip_self_loops") = false);
  m.def("save_edge_list", &save_edge_list_file, py::arg("graph"), py::arg("path"));
  m.def("generate_ba", &generate_ba, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("exact_stats", &exact_stats, py::arg("graph"));
  m.def("r_d_edge_form", &r_d_edge_form, py::arg("graph"));

  m.def(
      "local_ru",
      [](const Graph& g, double eps1, double eps2, std::uint64_t seed, bool noiseless,
         std::optional<std::uint64_t> m_override) {
        return local_ru(g, LocalBudget{eps1, eps2}, seed, make_options(noiseless, m_override));
      },
      py::arg("graph"), py::arg("eps1"), py::arg("eps2"), py::arg("seed"),
      py::arg("noiseless") = false, py::arg("m_override") = std::nullopt);
  m.def(
      "shuffle_ru",
      [](const Graph& g, double epsilon, double delta, double alpha, std::uint64_t seed,
         bool noiseless, std::optional<std::uint64_t> m_override) {
        return shuffle_ru(g, ShuffleBudget{epsilon, delta, alpha}, seed,
                          make_options(noiseless, m_override));
      },
      py::arg("graph"), py::arg("epsilon"), py::arg("delta"), py::arg("alpha"),
      py::arg("seed"), py::arg("noiseless") = false, py::arg("m_override") = std::nullopt);
  m.def(
      "decentral_ru",
      [](const Graph& g, double eps1, double eps2, double delta, std::uint64_t seed,
         bool noiseless, std::optional<std::uint64_t> m_override) {
        return decentral_ru(g, DecentralBudget{eps1, eps2, delta}, seed,
                            make_options(noiseless, m_override));
      },
      py::arg("graph"), py::arg("eps1"), py::arg("eps2"), py::arg("delta"), py::arg("seed"),
      py::arg("noiseless") = false, py::arg("m_override") = std::nullopt);

  m.def("epsilon0_cap", &epsilon0_cap, py::arg("n"), py::arg("delta"));
  m.def("amplified_epsilon", &amplified_epsilon, py::arg("n"), py::arg("epsilon0"),
        py::arg("delta"));
  m.def("local_budget_for",
        [](std::uint64_t n, double epsilon, double delta) {
          return local_budget_for(n, epsilon, delta);
        },
        py::arg("n"), py::arg("epsilon"), py::arg("delta"));

  m.def("rr_flip_prob", &rr_flip_prob, py::arg("epsilon"));
  m.def("rr_debias", &rr_debias, py::arg("noisy_bit"), py::arg("p"));
  m.def("laplace_raw_moment", &laplace_raw_moment, py::arg("center"), py::arg("scale"),
        py::arg("order"));
  m.def("tail_upper_bound", &tail_upper_bound, py::arg("noisy_value"), py::arg("scale"),
        py::arg("delta"));

  m.def("relative_error", &relative_error, py::arg("estimate"), py::arg("truth"),
        py::arg("n"));
  m.def(
      "empirical_mse",
      [](const std::vector<double>& estimates, double truth) {
        return empirical_mse(estimates, truth);
      },
      py::arg("estimates"), py::arg("truth"));
  m.def(
      "sign_accuracy",
      [](const std::vector<double>& estimates, double truth) {
        return sign_accuracy(estimates, truth);
      },
      py::arg("estimates"), py::arg("truth"));
  m.def("ratio_moment_approx", &ratio_moment_approx, py::arg("ex"), py::arg("ey"),
        py::arg("vx"), py::arg("vy"), py::arg("cov"));

  m.attr("noiseless_available") =
#ifdef ASSORTDP_ENABLE_NOISELESS
      true;
#else
      false;
#endif
  m.attr("__version__") = "0.1.0";
}
