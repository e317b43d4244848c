"""Persuasive signaling schemes on weighted collaboration networks.

Submodules:
  graphs          weighted graph type, cut/induced weights, instance families
  lp              float and exact-rational simplex
  benchmarks      OPT / OPT^IR / OPT^stable and solution predicates
  schemes         scheme mixtures, slack reports, persuasiveness, sampling
  constructions   every scheme constructor with pinned parameters
  lowerbounds     dual certificates, clique-leaves reduction, binary scans
  sweep           family sweeps, rate fits, CSV/JSON/figure emission
  cli             the command-line entry point
"""

from .benchmarks import (
    compute_benchmarks,
    is_feasible,
    is_ir,
    is_stable,
    solve_opt,
    solve_opt_ir,
    solve_opt_stable,
    wastefulness_gap,
)
from .graphs import (
    WeightedGraph,
    cut_weight,
    gen_clique_leaves,
    gen_component_mix,
    gen_double_star,
    gen_k_star_clique,
    gen_triangle_centers,
    induced_weight,
)
from .lp import LinearProgram, lp_minimize
from .schemes import (
    SignalingScheme,
    SignalSpace,
    cost,
    is_persuasive,
    sample_labeling,
    slack_report_exact,
    slack_report_mc,
)

__all__ = [
    "WeightedGraph",
    "induced_weight",
    "cut_weight",
    "gen_double_star",
    "gen_k_star_clique",
    "gen_triangle_centers",
    "gen_clique_leaves",
    "gen_component_mix",
    "LinearProgram",
    "lp_minimize",
    "solve_opt",
    "solve_opt_ir",
    "solve_opt_stable",
    "compute_benchmarks",
    "is_feasible",
    "is_ir",
    "is_stable",
    "wastefulness_gap",
    "SignalingScheme",
    "SignalSpace",
    "slack_report_exact",
    "slack_report_mc",
    "is_persuasive",
    "cost",
    "sample_labeling",
]

__version__ = "0.1.0"
