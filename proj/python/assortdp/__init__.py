# Copyright 2026 The assortdp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact and differentially private network assortativity."""

from ._assortdp import (  # noqa: F401
    Estimate,
    Graph,
    GraphStats,
    InfeasibleBudgetError,
    InfeasiblePopulationError,
    ParameterError,
    ParseError,
    UndefinedStatError,
    __version__,
    amplified_epsilon,
    decentral_ru,
    empirical_mse,
    epsilon0_cap,
    exact_stats,
    generate_ba,
    laplace_raw_moment,
    load_edge_list,
    local_budget_for,
    local_ru,
    noiseless_available,
    r_d_edge_form,
    ratio_moment_approx,
    relative_error,
    rr_debias,
    rr_flip_prob,
    save_edge_list,
    shuffle_ru,
    sign_accuracy,
    tail_upper_bound,
)
