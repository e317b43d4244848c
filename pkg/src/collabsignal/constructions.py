"""Constructors for every scheme family, with parameters pinned numerically.

These families are naturally described with parameters fixed only up to
constant factors.  Each constructor here pins them concretely: closed-form
choices (alpha, epsilon) come from exact component moments so the zero-slack
equalities hold exactly, and free mixture parameters are set to the smallest
value satisfying the relevant sufficient inequality (bisection at 1e-12 for
the unit-graph quadratic, exact solve for the ternary plan-C weight).  Every
constructor asserts exact persuasiveness of what it returns before returning
it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .benchmarks import (
    STABLE_CAP_DEFAULT,
    is_stable,
    solve_opt,
    solve_opt_ir,
    solve_opt_stable,
)
from .errors import InputError, NoImprovementPossible, VerificationError
from .graphs import WeightedGraph, cut_weight, induced_weight
from .modes import RATIONAL, Number, to_fraction
from .schemes import (
    ConstantLabeling,
    ExplicitSubset,
    ExponentialClocks,
    IndependentRounding,
    SignalingScheme,
    is_persuasive,
    scheme_from_components,
    slack_report_exact,
)


@dataclass
class SchemeParams:
    """Concrete parameter values and which construction path fired."""

    branch: str
    alpha: Optional[Fraction] = None
    epsilon: Optional[Fraction] = None
    p: Optional[Fraction] = None
    q: Optional[Fraction] = None
    kappa: Optional[Fraction] = None
    beta: Optional[int] = None  # independent-set size used
    iota: Optional[Fraction] = None  # measured |DS| / OPT
    gamma: Optional[Fraction] = None
    r: Optional[Fraction] = None
    cost_bound: Optional[Fraction] = None
    cost: Optional[Fraction] = None
    notes: dict = field(default_factory=dict)

    def to_json_obj(self, mode: str):
        from .modes import format_number

        def num(x):
            return None if x is None else format_number(x, mode)

        return {
            "branch": self.branch,
            "alpha": num(self.alpha),
            "epsilon": num(self.epsilon),
            "p": num(self.p),
            "q": num(self.q),
            "kappa": num(self.kappa),
            "beta": self.beta,
            "iota": num(self.iota),
            "gamma": num(self.gamma),
            "r": num(self.r),
            "cost_bound": num(self.cost_bound),
            "cost": num(self.cost),
            "notes": {k: str(v) for k, v in self.notes.items()},
        }


def _assert_persuasive(g: WeightedGraph, scheme: SignalingScheme, what: str) -> Fraction:
    report = slack_report_exact(g, scheme, RATIONAL)
    if not is_persuasive(report, 0):
        raise VerificationError(f"{what}: constructed scheme is not persuasive (bug)")
    return report.cost


# -- baseline: the no-information scheme ----------------------------------------


def no_info_scheme(g: WeightedGraph) -> SignalingScheme:
    """Label all of V with alpha = n / Induced(V); persuasive, cost n^2/(n+2m)."""
    if g.n < 1:
        raise InputError("no-info scheme needs at least one vertex")
    alpha = Fraction(g.n) / induced_weight(g, range(g.n))
    scheme = scheme_from_components(
        [(Fraction(1), ExplicitSubset(frozenset(range(g.n)), alpha))], g
    )
    _assert_persuasive(g, scheme, "no_info_scheme")
    return scheme


# -- set primitives ---------------------------------------------------------------


def dominating_set_lp_rounded(g: WeightedGraph, seed: int) -> frozenset:
    """Dominating set from randomized rounding of the workload LP.

    Each vertex joins with probability min(1, theta*_v ln n); greedy repair
    then covers whatever the rounding missed, so the result always dominates.
    """
    if not g.is_unit_weight():
        raise InputError("LP rounding for dominating sets assumes a unit-weight graph")
    _, theta = solve_opt(g, RATIONAL)
    rng = np.random.default_rng(seed)
    scale = math.log(g.n) if g.n > 1 else 0.0
    ds = {
        v
        for v in range(g.n)
        if rng.random() < min(1.0, float(theta[v]) * scale) or theta[v] >= 1
    }
    covered = set()
    for v in ds:
        covered.add(v)
        covered.update(g.neighbors(v))
    while len(covered) < g.n:
        uncovered = [v for v in range(g.n) if v not in covered]
        best, best_gain = None, -1
        for v in range(g.n):
            if v in ds:
                continue
            gain = sum(1 for u in [v, *g.neighbors(v)] if u not in covered)
            if gain > best_gain:
                best, best_gain = v, gain
        ds.add(best)
        covered.add(best)
        covered.update(g.neighbors(best))
    return frozenset(ds)


def maximal_independent_set(g: WeightedGraph, exclude: Sequence[int] = ()) -> frozenset:
    """Greedy smallest-degree maximal independent set of G[V \\ exclude].

    Any positive edge weight counts as adjacency.  Repeatedly takes the
    lowest-degree remaining vertex (ties to the smallest id) and deletes its
    closed neighborhood, which realizes the Omega(min(n^2/m, n)) size bound.
    """
    excluded = frozenset(exclude)
    for v in excluded:
        if not 0 <= v < g.n:
            raise InputError(f"exclude vertex {v} out of range")
    alive = set(range(g.n)) - excluded
    chosen = set()
    while alive:
        v = min(alive, key=lambda u: (sum(1 for w in g.neighbors(u) if w in alive), u))
        chosen.add(v)
        alive.discard(v)
        alive -= set(g.neighbors(v))
    return frozenset(chosen)


def greedy_is_size_bound(n_sub: int, m_sub: int) -> float:
    """Guaranteed lower bound on the greedy independent set size."""
    if n_sub == 0:
        return 0.0
    if m_sub == 0:
        return n_sub / 16
    return min(n_sub * n_sub / m_sub, n_sub) / 16


# -- binary scheme for unit-weight graphs -----------------------------------------


def _exceeds_sqrt_bound(cost: Fraction, n: int, opt: Fraction, factor: int = 10) -> bool:
    """cost > factor * sqrt(n) * opt, compared exactly via squares."""
    return cost > 0 and cost * cost > factor * factor * n * opt * opt


def binary_unit_scheme(g: WeightedGraph, seed: int) -> Tuple[SignalingScheme, SchemeParams]:
    """Persuasive binary scheme with cost <= 10 sqrt(n) OPT on unit graphs.

    The preferred branch mixes an independent rounding of the optimal LP
    solution with a maximal independent set of the rest of the graph; the
    mixture ratio comes from the smallest kappa >= 0 with

        kappa^2 b (b - iota OPT) >= OPT^2 (n - OPT + kappa (n - b + iota) + 1)

    (found by bisection to 1e-12), after which the shared signal value is
    re-derived from exact moments so the positive-signal slack is exactly 0.
    When the quadratic has no nonnegative root (tiny or dense graphs) the
    expanded maximal-independent-set and no-information fallbacks fire.
    """
    if not g.is_unit_weight():
        raise InputError("binary_unit_scheme requires a unit-weight graph")
    if g.n < 1:
        raise InputError("empty graph")
    n = g.n
    opt, theta = solve_opt(g, RATIONAL)
    ds = dominating_set_lp_rounded(g, seed)
    iota = Fraction(len(ds)) / opt
    is_set = maximal_independent_set(g, ds)
    beta = Fraction(len(is_set))

    candidates = []

    kappa = _smallest_kappa(n, opt, beta, iota)
    if kappa is not None and len(is_set) > 0:
        p = kappa / (1 + kappa)
        size = (1 - p) * opt + p * beta
        ind_a = _rounding_induced(g, theta)
        induced = (1 - p) * ind_a + p * beta
        alpha = size / induced
        comps = [
            (1 - p, IndependentRounding(tuple(theta), alpha)),
            (p, ExplicitSubset(is_set, alpha)),
        ]
        scheme = scheme_from_components(comps, g)
        report = slack_report_exact(g, scheme, RATIONAL)
        if is_persuasive(report, 0):
            params = SchemeParams(
                branch="mixture",
                alpha=alpha,
                epsilon=1 - alpha,
                p=p,
                kappa=kappa,
                beta=len(is_set),
                iota=iota,
                cost=report.cost,
            )
            candidates.append((scheme, params))

    expanded = set(is_set)
    for v in sorted(set(range(n)) - expanded):
        if all(u not in expanded for u in g.neighbors(v)):
            expanded.add(v)
    m_scheme = scheme_from_components(
        [(Fraction(1), ExplicitSubset(frozenset(expanded), Fraction(1)))], g
    )
    m_cost = _assert_persuasive(g, m_scheme, "binary_unit_scheme/independent-set")
    candidates.append(
        (
            m_scheme,
            SchemeParams(
                branch="independent-set",
                alpha=Fraction(1),
                beta=len(expanded),
                iota=iota,
                cost=m_cost,
            ),
        )
    )

    ni = no_info_scheme(g)
    ni_cost = Fraction(n * n) / induced_weight(g, range(n))
    candidates.append(
        (ni, SchemeParams(branch="no-info", alpha=Fraction(n) / (n + 2 * g.total_edge_weight), cost=ni_cost))
    )

    bound_note = {"cost_bound_form": "10*sqrt(n)*OPT"}
    for scheme, params in candidates:
        if not _exceeds_sqrt_bound(params.cost, n, opt):
            params.notes.update(bound_note)
            params.cost_bound = None
            return scheme, params
    scheme, params = min(candidates, key=lambda sp: sp[1].cost)
    params.notes.update(bound_note)
    return scheme, params


def _smallest_kappa(n: int, opt: Fraction, beta: Fraction, iota: Fraction):
    """Bisect for the smallest kappa >= 0 satisfying the mixing quadratic."""
    lead = beta * (beta - iota * opt)
    if lead <= 0:
        return None

    def q(k: Fraction) -> Fraction:
        return k * k * lead - opt * opt * (n - opt + k * (n - beta + iota) + 1)

    if q(Fraction(0)) >= 0:
        return Fraction(0)
    hi = Fraction(1)
    for _ in range(200):
        if q(hi) >= 0:
            break
        hi *= 2
    else:
        return None
    lo = Fraction(0)
    eps = Fraction(1, 10**12)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if q(mid) >= 0:
            hi = mid
        else:
            lo = mid
    return hi


def _rounding_induced(g: WeightedGraph, marginals: Sequence[Fraction]) -> Fraction:
    """E[Induced(S)] of an independent rounding with the given marginals."""
    pi = [to_fraction(x) for x in marginals]
    total = sum(pi, Fraction(0))
    for u, v, w in g.edges:
        total += 2 * w * pi[u] * pi[v]
    return total


def _rounding_cut(g: WeightedGraph, marginals: Sequence[Fraction]) -> Fraction:
    pi = [to_fraction(x) for x in marginals]
    total = Fraction(0)
    for u, v, w in g.edges:
        total += w * (pi[u] * (1 - pi[v]) + pi[v] * (1 - pi[u]))
    return total


# -- matching and beating the optimal stable cost ---------------------------------


def exp_clocks_component(
    g: WeightedGraph,
    theta_stable: Sequence[Number],
    on_value: Number = 1,
    off_value: Number = 0,
) -> ExponentialClocks:
    """Competing-clocks component; requires a stable theta on a unit graph,
    which is exactly when the sampled marginals equal theta."""
    if not g.is_unit_weight():
        raise InputError("exponential clocks assume a unit-weight graph")
    th = [to_fraction(x) for x in theta_stable]
    if not is_stable(g, th, RATIONAL):
        raise InputError("exponential clocks require a stable contribution vector")
    return ExponentialClocks(tuple(th), to_fraction(on_value), to_fraction(off_value))


def _stable_vector(
    g: WeightedGraph, stable_cap: int, stable_solution: Optional[Sequence[Number]]
):
    if stable_solution is not None:
        th = [to_fraction(x) for x in stable_solution]
        if not is_stable(g, th, RATIONAL):
            raise InputError("provided solution is not stable")
        return sum(th, Fraction(0)), th
    value, th = solve_opt_stable(g, RATIONAL, cap=stable_cap)
    if value is None:
        raise InputError("no stable solution found by the oracle")
    return value, th


def match_stable_scheme(
    g: WeightedGraph,
    stable_cap: int = STABLE_CAP_DEFAULT,
    stable_solution: Optional[Sequence[Number]] = None,
) -> Tuple[SignalingScheme, SchemeParams]:
    """Binary scheme with cost exactly OPT^stable, via exponential clocks.

    The clock set is always independent, so Induced(S) = |S| in expectation
    and the signal value alpha = E|S| / E[Induced(S)] collapses to 1.
    """
    opt_stable, th = _stable_vector(g, stable_cap, stable_solution)
    comp = exp_clocks_component(g, th, Fraction(1))
    scheme = scheme_from_components([(Fraction(1), comp)], g)
    cost = _assert_persuasive(g, scheme, "match_stable_scheme")
    if cost != opt_stable:
        raise VerificationError("match_stable_scheme cost drifted from OPT^stable")
    return scheme, SchemeParams(branch="match-stable", alpha=Fraction(1), cost=cost)


def improve_unit_scheme(
    g: WeightedGraph,
    stable_cap: int = STABLE_CAP_DEFAULT,
    stable_solution: Optional[Sequence[Number]] = None,
) -> Tuple[SignalingScheme, SchemeParams]:
    """Binary scheme strictly cheaper than OPT^stable when OPT < OPT^stable.

    Mixes an independent rounding of the optimal solution (weight epsilon)
    with the clock rounding of the optimal stable solution, with

        epsilon = max(min(1/2, (PoS-1)/(PoS + 2n/(PoS+1))),
                      (PoS-1)/(PoS + n - OPT))
    """
    if not g.is_unit_weight():
        raise InputError("improve_unit_scheme requires a unit-weight graph")
    opt, theta = solve_opt(g, RATIONAL)
    opt_stable, th_stable = _stable_vector(g, stable_cap, stable_solution)
    if opt_stable <= opt:
        raise NoImprovementPossible(
            f"OPT = OPT^stable = {opt}; full revelation is already optimal"
        )
    n = g.n
    pos = opt_stable / opt
    option1 = min(Fraction(1, 2), (pos - 1) / (pos + Fraction(2 * n) / (pos + 1)))
    option2 = (pos - 1) / (pos + (n - opt))
    eps = max(option1, option2)
    size = eps * opt + (1 - eps) * opt_stable
    induced = eps * _rounding_induced(g, theta) + (1 - eps) * opt_stable
    alpha = size / induced
    comps = [
        (eps, IndependentRounding(tuple(theta), alpha)),
        (1 - eps, exp_clocks_component(g, th_stable, alpha)),
    ]
    scheme = scheme_from_components(comps, g)
    cost = _assert_persuasive(g, scheme, "improve_unit_scheme")
    bound = opt_stable - eps * (opt_stable - opt)
    if not cost <= bound < opt_stable:
        raise VerificationError("improve_unit_scheme cost bound violated")
    params = SchemeParams(
        branch="improve-unit",
        alpha=alpha,
        epsilon=eps,
        cost=cost,
        cost_bound=bound,
    )
    return scheme, params


# -- ternary schemes for weighted graphs -------------------------------------------


def _set_moments(g: WeightedGraph, comp) -> Tuple[Fraction, Fraction, Fraction]:
    """(E|S|, E[Induced(S)], E[Cut(S, V\\S)]) of a set-generator component."""
    if isinstance(comp, ExplicitSubset):
        s = comp.members
        return Fraction(len(s)), induced_weight(g, s), cut_weight(g, s)
    if isinstance(comp, IndependentRounding):
        pi = comp.marginals
        return sum(pi, Fraction(0)), _rounding_induced(g, pi), _rounding_cut(g, pi)
    if isinstance(comp, ExponentialClocks):
        if not comp._closed_form_ok(g):
            raise InputError("clock component lacks closed-form set moments here")
        size = sum(comp.theta, Fraction(0))
        cut = sum(
            (t * g.degree_weighted(v) for v, t in enumerate(comp.theta)), Fraction(0)
        )
        return size, size, cut
    raise InputError("is_component must generate sets (not an arbitrary labeling)")


def _with_signal(comp, on: Fraction, off: Fraction = Fraction(0)):
    if isinstance(comp, ExplicitSubset):
        return ExplicitSubset(comp.members, on, off)
    if isinstance(comp, IndependentRounding):
        return IndependentRounding(comp.marginals, on, off)
    if isinstance(comp, ExponentialClocks):
        return ExponentialClocks(comp.theta, on, off)
    raise InputError("unsupported component kind")


def ternary_weighted_scheme(
    g: WeightedGraph,
    is_component,
    gamma: Number,
    theta_ir: Optional[Sequence[Fraction]] = None,
) -> Tuple[SignalingScheme, SchemeParams]:
    """Three-plan scheme: rounded IR optimum and the almost-independent set at
    1 - epsilon, the rounding's complement at alpha.

    alpha and epsilon are pinned by the exact zero-slack equations; the
    plan-C weight q is the smallest value making the exact Delta_0
    nonnegative, which strictly dominates the loose sufficient inequality
    q alpha n / 2 >= epsilon n + (1-2 epsilon) OPT_IR + p (n - E|S|).
    When the guard alpha (n - 2 OPT_IR) - OPT_IR >= alpha n / 2 fails, the
    no-information scheme is returned instead (its cost is O(OPT_IR) there).
    """
    gamma = to_fraction(gamma)
    if gamma < 0:
        raise InputError("gamma must be nonnegative")
    n = g.n
    if theta_ir is None:
        _, theta_ir = solve_opt_ir(g, RATIONAL)
    theta_ir = [to_fraction(x) for x in theta_ir]
    opt_ir = sum(theta_ir, Fraction(0))
    size_is, induced_is, cut_is = _set_moments(g, is_component)
    if size_is == 0:
        raise InputError("is_component generates empty sets (degenerate)")
    if induced_is > (1 + gamma) * size_is:
        raise InputError("is_component violates the (1 + gamma) induced-weight bound")

    comp_marg = [1 - t for t in theta_ir]
    induced_comp = _rounding_induced(g, comp_marg)
    if induced_comp == 0:
        return _noinfo_fallback(g, gamma, "noinfo-degenerate")
    alpha = (n - opt_ir) / induced_comp
    if alpha * (n - 2 * opt_ir) - opt_ir < alpha * n / 2:
        return _noinfo_fallback(g, gamma, "noinfo-guard")

    p = Fraction(float(opt_ir) / math.sqrt(float(size_is))).limit_denominator(10**9)
    induced_ds = _rounding_induced(g, theta_ir)
    cut_ds = _rounding_cut(g, theta_ir)
    for _ in range(100):
        eps = (induced_ds - opt_ir + p * (induced_is - size_is)) / (
            induced_ds + p * induced_is
        )
        if 1 - eps not in (alpha, Fraction(0)):
            break
        p *= Fraction(999, 1000)
    else:
        raise VerificationError("could not separate the ternary signal values")

    delta0_a = (1 - eps) * cut_ds - (n - opt_ir)
    delta0_b = (1 - eps) * cut_is - (n - size_is)
    delta0_c = alpha * cut_ds - opt_ir
    need = -(delta0_a + p * delta0_b)
    if need <= 0:
        q = Fraction(0)
    else:
        if delta0_c <= 0:
            return _noinfo_fallback(g, gamma, "noinfo-guard")
        q = need / delta0_c
    total = 1 + p + q
    comps = [
        (1 / total, IndependentRounding(tuple(theta_ir), 1 - eps)),
        (p / total, _with_signal(is_component, 1 - eps)),
        (q / total, IndependentRounding(tuple(comp_marg), alpha)),
    ]
    scheme = scheme_from_components(comps, g)
    cost = _assert_persuasive(g, scheme, "ternary_weighted_scheme")
    params = SchemeParams(
        branch="ternary",
        alpha=alpha,
        epsilon=eps,
        p=p,
        q=q,
        gamma=gamma,
        beta=None,
        cost=cost,
        notes={"E_IS_size": size_is},
    )
    return scheme, params


def _noinfo_fallback(g: WeightedGraph, gamma: Fraction, branch: str):
    scheme = no_info_scheme(g)
    cost = Fraction(g.n * g.n) / induced_weight(g, range(g.n))
    return scheme, SchemeParams(branch=branch, gamma=gamma, cost=cost)


def ternary_general(g: WeightedGraph) -> Tuple[SignalingScheme, SchemeParams]:
    """Cost O(n^{3/4} sqrt(OPT_IR)) on any weighted graph.

    Uses a uniform independent rounding at rate r = min(gamma n / 2m, 1) with
    gamma = OPT_IR^{2/3} m^{1/3} n^{-2/3} as the almost-independent set, and
    returns the cheaper of that ternary scheme and the no-info scheme.
    """
    if g.n < 1:
        raise InputError("empty graph")
    _, theta_ir = solve_opt_ir(g, RATIONAL)
    theta_ir = [to_fraction(x) for x in theta_ir]
    opt_ir = sum(theta_ir, Fraction(0))
    m = g.total_edge_weight
    if m == 0:
        r = Fraction(1)
        gamma = Fraction(0)
    else:
        gamma = Fraction(
            float(opt_ir) ** (2 / 3) * float(m) ** (1 / 3) * float(g.n) ** (-2 / 3)
        ).limit_denominator(10**9)
        r = min(gamma * g.n / (2 * m), Fraction(1))
    comp = IndependentRounding(tuple([r] * g.n), Fraction(1))
    ternary, params = ternary_weighted_scheme(g, comp, gamma, theta_ir=theta_ir)
    params.r = r
    noinfo = no_info_scheme(g)
    ni_cost = Fraction(g.n * g.n) / induced_weight(g, range(g.n))
    if ni_cost < params.cost:
        return noinfo, SchemeParams(branch="no-info", gamma=gamma, r=r, cost=ni_cost)
    return ternary, params


def ternary_min_weight(g: WeightedGraph, delta: Number) -> Tuple[SignalingScheme, SchemeParams]:
    """Ternary scheme for graphs whose edge weights are all >= delta.

    The almost-independent set is the greedy maximal independent set of the
    whole graph (gamma = 0); the cheaper of the ternary and no-info schemes
    is returned, realizing the O((n OPT_IR)^{2/3} delta^{-1/3}) rate.
    """
    delta = to_fraction(delta)
    if delta <= 0:
        raise InputError("delta must be positive")
    for u, v, w in g.edges:
        if w < delta:
            raise InputError(f"edge ({u},{v}) has weight {w} < delta={delta}")
    is_set = maximal_independent_set(g)
    comp = ExplicitSubset(is_set, Fraction(1))
    ternary, params = ternary_weighted_scheme(g, comp, Fraction(0))
    params.beta = len(is_set)
    noinfo_cost = Fraction(g.n * g.n) / induced_weight(g, range(g.n))
    if noinfo_cost < params.cost:
        scheme = no_info_scheme(g)
        return scheme, SchemeParams(branch="no-info", beta=len(is_set), cost=noinfo_cost)
    return ternary, params


def improve_weighted_scheme(
    g: WeightedGraph,
    stable_cap: int = STABLE_CAP_DEFAULT,
    stable_solution: Optional[Sequence[Number]] = None,
) -> Tuple[SignalingScheme, SchemeParams]:
    """Scheme with at most n+1 signals strictly below OPT^stable.

    Mixes an independent rounding of the IR optimum (labeled alpha, weight
    epsilon) with deterministically sending the optimal stable profile:

        alpha   = OPT_IR / E[Induced(rounded IR optimum)]
        epsilon = (PoS-1) / (PoS-1 + OPT_IR (n - OPT_IR + 1) / (OPT_IR + 1))

    where PoS = OPT^stable / OPT.  Requires OPT_IR < OPT^stable.
    """
    opt, _ = solve_opt(g, RATIONAL)
    _, theta_ir = solve_opt_ir(g, RATIONAL)
    theta_ir = [to_fraction(x) for x in theta_ir]
    opt_ir = sum(theta_ir, Fraction(0))
    opt_stable, th_stable = _stable_vector(g, stable_cap, stable_solution)
    if opt_stable <= opt_ir:
        raise NoImprovementPossible(
            f"OPT^IR = OPT^stable = {opt_ir}; nothing to improve"
        )
    n = g.n
    pos = opt_stable / opt
    eps = (pos - 1) / (pos - 1 + opt_ir * (n - opt_ir + 1) / (opt_ir + 1))
    alpha = opt_ir / _rounding_induced(g, theta_ir)
    comps = [
        (eps, IndependentRounding(tuple(theta_ir), alpha)),
        (1 - eps, ConstantLabeling(tuple(th_stable))),
    ]
    scheme = scheme_from_components(comps, g)
    if len(scheme.space) > n + 1:
        raise VerificationError("improve_weighted_scheme needs more than n+1 signals")
    cost = _assert_persuasive(g, scheme, "improve_weighted_scheme")
    bound = opt_stable - eps * (opt_stable - opt_ir)
    if not cost <= bound < opt_stable:
        raise VerificationError("improve_weighted_scheme cost bound violated")
    params = SchemeParams(
        branch="improve-weighted",
        alpha=alpha,
        epsilon=eps,
        cost=cost,
        cost_bound=bound,
    )
    return scheme, params


CONSTRUCTORS = {
    "noinfo": lambda g, seed: (no_info_scheme(g), None),
    "binary-unit": lambda g, seed: binary_unit_scheme(g, seed),
    "match-stable": lambda g, seed: match_stable_scheme(g),
    "improve-unit": lambda g, seed: improve_unit_scheme(g),
    "ternary": lambda g, seed: ternary_general(g),
    "ternary-minw": lambda g, seed: ternary_min_weight(g, g.min_edge_weight),
    "improve-weighted": lambda g, seed: improve_weighted_scheme(g),
}
