"""Signaling schemes as mixtures of labeled-set generators.

A scheme is a finite mixture of components, each of which describes one way
of drawing a per-vertex signal vector.  Components keep constant-size
descriptions with closed-form first moments, so slack computation is exact
even though the induced distribution over labelings has exponential support.
Monte Carlo estimation backs the one component family without a closed form
on general graphs (competing exponential clocks on weighted graphs).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InputError, UnsupportedExact
from .graphs import WeightedGraph
from .modes import (
    FLOAT,
    RATIONAL,
    Number,
    check_mode,
    format_number,
    parse_number,
    to_fraction,
)

MC_DEFAULT_SAMPLES = 100_000


def _signal(x: Number) -> Fraction:
    v = to_fraction(x)
    if not 0 <= v <= 1:
        raise InputError(f"signal value {v} outside [0, 1]")
    return v


# -- components -----------------------------------------------------------------


@dataclass(frozen=True)
class ExplicitSubset:
    """Label a fixed subset with on_value and the rest with off_value."""

    members: frozenset
    on_value: Fraction
    off_value: Fraction = Fraction(0)

    kind = "explicit_subset"

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        object.__setattr__(self, "on_value", _signal(self.on_value))
        object.__setattr__(self, "off_value", _signal(self.off_value))

    def signal_values(self, g):
        vals = {self.on_value}
        if len(self.members) < g.n:
            vals.add(self.off_value)
        return vals

    def labels(self, g) -> List[Fraction]:
        for v in self.members:
            if not 0 <= v < g.n:
                raise InputError(f"subset member {v} out of range")
        return [self.on_value if v in self.members else self.off_value for v in range(g.n)]

    def exact_moments(self, g):
        return _deterministic_moments(g, self.labels(g))

    def expected_labeling(self, g):
        return self.labels(g)

    def sample(self, g, rng):
        return np.array([float(x) for x in self.labels(g)])

    def params_json(self, mode):
        return {
            "set": sorted(self.members),
            "on_value": format_number(self.on_value, mode),
            "off_value": format_number(self.off_value, mode),
        }


@dataclass(frozen=True)
class ConstantLabeling:
    """Deterministic labeling with an arbitrary per-vertex signal vector."""

    labels_vec: Tuple[Fraction, ...]

    kind = "constant_labeling"

    def __post_init__(self):
        object.__setattr__(self, "labels_vec", tuple(_signal(x) for x in self.labels_vec))

    def signal_values(self, g):
        self._check(g)
        return set(self.labels_vec)

    def _check(self, g):
        if len(self.labels_vec) != g.n:
            raise InputError("labeling length differs from vertex count")

    def exact_moments(self, g):
        self._check(g)
        return _deterministic_moments(g, list(self.labels_vec))

    def expected_labeling(self, g):
        self._check(g)
        return list(self.labels_vec)

    def sample(self, g, rng):
        self._check(g)
        return np.array([float(x) for x in self.labels_vec])

    def params_json(self, mode):
        return {"labels": [format_number(x, mode) for x in self.labels_vec]}


@dataclass(frozen=True)
class IndependentRounding:
    """Include each vertex independently with its own marginal probability."""

    marginals: Tuple[Fraction, ...]
    on_value: Fraction
    off_value: Fraction = Fraction(0)

    kind = "independent_rounding"

    def __post_init__(self):
        ms = tuple(to_fraction(x) for x in self.marginals)
        if any(not 0 <= m <= 1 for m in ms):
            raise InputError("marginals must lie in [0, 1]")
        object.__setattr__(self, "marginals", ms)
        object.__setattr__(self, "on_value", _signal(self.on_value))
        object.__setattr__(self, "off_value", _signal(self.off_value))

    def _check(self, g):
        if len(self.marginals) != g.n:
            raise InputError("marginals length differs from vertex count")

    def signal_values(self, g):
        self._check(g)
        vals = set()
        if any(m > 0 for m in self.marginals):
            vals.add(self.on_value)
        if any(m < 1 for m in self.marginals):
            vals.add(self.off_value)
        return vals or {self.off_value}

    def exact_moments(self, g):
        # Pairwise independence makes every expected incoming contribution a
        # product of marginals, so the moments are exact.
        self._check(g)
        pi = self.marginals
        expect = [
            self.on_value * m + self.off_value * (1 - m) for m in pi
        ]
        incoming = [Fraction(0)] * g.n
        for u, v, w in g.edges:
            incoming[u] += w * expect[v]
            incoming[v] += w * expect[u]
        moments: Dict[Fraction, List[Fraction]] = {}
        _acc(moments, self.on_value, sum((p * r for p, r in zip(pi, incoming)), Fraction(0)),
             sum(pi, Fraction(0)))
        _acc(moments, self.off_value,
             sum(((1 - p) * r for p, r in zip(pi, incoming)), Fraction(0)),
             g.n - sum(pi, Fraction(0)))
        return moments

    def expected_labeling(self, g):
        self._check(g)
        return [self.on_value * m + self.off_value * (1 - m) for m in self.marginals]

    def sample(self, g, rng):
        self._check(g)
        keep = rng.random(g.n) < np.array([float(m) for m in self.marginals])
        on, off = float(self.on_value), float(self.off_value)
        return np.where(keep, on, off)

    def params_json(self, mode):
        return {
            "marginals": [format_number(x, mode) for x in self.marginals],
            "on_value": format_number(self.on_value, mode),
            "off_value": format_number(self.off_value, mode),
        }


@dataclass(frozen=True)
class ExponentialClocks:
    """Competing exponential clocks over the support of a contribution vector.

    Each supported vertex draws X_v ~ Exponential(theta_v) and joins the set
    when it beats every supported neighbor's clock, so the sampled set is
    always independent.  On unit-weight graphs with a stable theta the
    marginals equal theta exactly, which is what gives this component a
    closed form; on any other input exact moments are refused.
    """

    theta: Tuple[Fraction, ...]
    on_value: Fraction = Fraction(1)
    off_value: Fraction = Fraction(0)

    kind = "exponential_clocks"

    def __post_init__(self):
        th = tuple(to_fraction(x) for x in self.theta)
        if any(not 0 <= t <= 1 for t in th):
            raise InputError("clock rates must lie in [0, 1]")
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "on_value", _signal(self.on_value))
        object.__setattr__(self, "off_value", _signal(self.off_value))

    def _check(self, g):
        if len(self.theta) != g.n:
            raise InputError("theta length differs from vertex count")

    def signal_values(self, g):
        self._check(g)
        vals = set()
        if any(t > 0 for t in self.theta):
            vals.add(self.on_value)
        if any(t < 1 for t in self.theta) or g.edges:
            vals.add(self.off_value)
        return vals or {self.off_value}

    def _closed_form_ok(self, g) -> bool:
        from .benchmarks import is_stable  # local import to avoid a cycle

        return g.is_unit_weight() and is_stable(g, list(self.theta), RATIONAL)

    def exact_moments(self, g):
        self._check(g)
        if not self._closed_form_ok(g):
            raise UnsupportedExact(
                "exponential clocks have closed-form moments only for a "
                "stable theta on a unit-weight graph"
            )
        th = self.theta
        on, off = self.on_value, self.off_value
        deg = [g.degree_weighted(v) for v in range(g.n)]
        size = sum(th, Fraction(0))
        expected_cut = sum((t * d for t, d in zip(th, deg)), Fraction(0))
        # adjacent vertices never co-occur, so Pr[neither endpoint in S] is
        # exactly 1 - theta_u - theta_v
        both_out = sum((w * (1 - th[u] - th[v]) for u, v, w in g.edges), Fraction(0))
        moments: Dict[Fraction, List[Fraction]] = {}
        _acc(moments, on, off * expected_cut, size)
        _acc(moments, off, on * expected_cut + off * 2 * both_out, g.n - size)
        return moments

    def expected_labeling(self, g):
        self._check(g)
        if not self._closed_form_ok(g):
            raise UnsupportedExact("clock marginals are theta only on unit graphs")
        return [self.on_value * t + self.off_value * (1 - t) for t in self.theta]

    def sample(self, g, rng):
        self._check(g)
        th = np.array([float(t) for t in self.theta])
        support = th > 0
        clocks = np.full(g.n, np.inf)
        idx = np.nonzero(support)[0]
        clocks[idx] = rng.exponential(1.0 / th[idx])
        out = np.full(g.n, float(self.off_value))
        for v in idx:
            best = min(
                (clocks[u] for u in g.neighbors(v) if support[u]), default=np.inf
            )
            if clocks[v] < best:
                out[v] = float(self.on_value)
        return out

    def sample_sets(self, g, rng, draws: int) -> np.ndarray:
        """Vectorized membership matrix (draws x n) of the clock process."""
        self._check(g)
        th = np.array([float(t) for t in self.theta])
        support = th > 0
        clocks = np.full((draws, g.n), np.inf)
        idx = np.nonzero(support)[0]
        if idx.size:
            clocks[:, idx] = rng.exponential(1.0, size=(draws, idx.size)) / th[idx]
        member = np.zeros((draws, g.n), dtype=bool)
        for v in idx:
            nbrs = [u for u in g.neighbors(v) if support[u]]
            if nbrs:
                member[:, v] = clocks[:, v] < clocks[:, nbrs].min(axis=1)
            else:
                member[:, v] = True
        return member

    def params_json(self, mode):
        return {
            "theta": [format_number(x, mode) for x in self.theta],
            "on_value": format_number(self.on_value, mode),
            "off_value": format_number(self.off_value, mode),
        }


PlanComponent = (ExplicitSubset, ConstantLabeling, IndependentRounding, ExponentialClocks)
_KINDS = {cls.kind: cls for cls in PlanComponent}


def _acc(moments, theta, contrib, num):
    cur = moments.setdefault(theta, [Fraction(0), Fraction(0)])
    cur[0] += contrib
    cur[1] += num


def _deterministic_moments(g: WeightedGraph, labels: List[Fraction]):
    incoming = [Fraction(0)] * g.n
    for u, v, w in g.edges:
        incoming[u] += w * labels[v]
        incoming[v] += w * labels[u]
    moments: Dict[Fraction, List[Fraction]] = {}
    for v in range(g.n):
        _acc(moments, labels[v], incoming[v], Fraction(1))
    return moments


# -- scheme ----------------------------------------------------------------------


@dataclass(frozen=True)
class SignalSpace:
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(sorted({_signal(v) for v in self.values}))
        if not vals:
            raise InputError("signal space cannot be empty")
        object.__setattr__(self, "values", vals)

    def __contains__(self, x):
        return to_fraction(x) in self.values

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class SignalingScheme:
    components: Tuple[Tuple[Fraction, object], ...]  # (weight, component)
    space: SignalSpace

    def __post_init__(self):
        comps = tuple((to_fraction(w), c) for w, c in self.components)
        if not comps:
            raise InputError("scheme needs at least one component")
        if any(w < 0 for w, _ in comps):
            raise InputError("mixture weights must be nonnegative")
        if sum(w for w, _ in comps) != 1:
            raise InputError("mixture weights must sum to 1 exactly")
        object.__setattr__(self, "components", comps)

    def validate(self, g: WeightedGraph):
        """Check all component signal values against the declared space."""
        for _, comp in self.components:
            for val in comp.signal_values(g):
                if val not in self.space:
                    raise InputError(f"component emits {val} outside the signal space")

    def to_json_obj(self, mode: str = FLOAT) -> dict:
        return {
            "space": [format_number(v, mode) for v in self.space],
            "components": [
                {"weight": format_number(w, mode), "kind": comp.kind, **comp.params_json(mode)}
                for w, comp in self.components
            ],
        }

    def to_json(self, mode: str = FLOAT) -> str:
        return json.dumps(self.to_json_obj(mode), sort_keys=True)

    @staticmethod
    def from_json_obj(obj: dict) -> "SignalingScheme":
        try:
            space = SignalSpace(tuple(parse_number(v) for v in obj["space"]))
            comps = []
            for c in obj["components"]:
                kind = c["kind"]
                if kind not in _KINDS:
                    raise InputError(f"unknown component kind {kind!r}")
                w = parse_number(c["weight"])
                if kind == "explicit_subset":
                    comp = ExplicitSubset(
                        frozenset(int(v) for v in c["set"]),
                        parse_number(c["on_value"]),
                        parse_number(c.get("off_value", 0)),
                    )
                elif kind == "constant_labeling":
                    comp = ConstantLabeling(tuple(parse_number(x) for x in c["labels"]))
                elif kind == "independent_rounding":
                    comp = IndependentRounding(
                        tuple(parse_number(x) for x in c["marginals"]),
                        parse_number(c["on_value"]),
                        parse_number(c.get("off_value", 0)),
                    )
                else:
                    comp = ExponentialClocks(
                        tuple(parse_number(x) for x in c["theta"]),
                        parse_number(c.get("on_value", 1)),
                        parse_number(c.get("off_value", 0)),
                    )
                comps.append((w, comp))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed scheme JSON: {exc}") from exc
        return SignalingScheme(tuple(comps), space)

    @staticmethod
    def from_json(text: str) -> "SignalingScheme":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"scheme JSON does not parse: {exc}") from exc
        return SignalingScheme.from_json_obj(obj)


def scheme_from_components(
    weighted_components: Sequence[Tuple[Number, object]],
    g: WeightedGraph,
    extra_signals: Iterable[Number] = (),
) -> SignalingScheme:
    """Build a scheme whose space is exactly what its components can emit."""
    vals = set(to_fraction(x) for x in extra_signals)
    for _, comp in weighted_components:
        vals |= comp.signal_values(g)
    scheme = SignalingScheme(
        tuple((to_fraction(w), c) for w, c in weighted_components), SignalSpace(tuple(vals))
    )
    scheme.validate(g)
    return scheme


# -- slack reports ---------------------------------------------------------------


@dataclass
class SignalSlack:
    theta: Number
    contrib: Number
    num: Number
    delta: Number
    stderr: Optional[float] = None


@dataclass
class SlackReport:
    """Per-signal (Contrib, Num, Delta) table; the persuasiveness certificate.

    Delta_theta = Contrib_theta - (1 - theta) * Num_theta.  Signals that are
    never realized (num == 0) carry no constraint and are listed in
    ``unrealized``.
    """

    entries: List[SignalSlack]
    cost: Number
    method: str  # "exact" | "monte_carlo"
    mode: str = RATIONAL
    samples: Optional[int] = None
    seed: Optional[int] = None
    unrealized: List[Number] = field(default_factory=list)

    def delta(self, theta: Number) -> Number:
        t = to_fraction(theta)
        for e in self.entries:
            if to_fraction(e.theta) == t:
                return e.delta
        raise InputError(f"signal {theta} not in report")

    def to_json_obj(self) -> dict:
        def num(x):
            return format_number(to_fraction(x), self.mode)

        return {
            "method": self.method,
            "mode": self.mode,
            "cost": num(self.cost),
            "samples": self.samples,
            "seed": self.seed,
            "unrealized": [num(t) for t in self.unrealized],
            "signals": [
                {
                    "theta": num(e.theta),
                    "contrib": num(e.contrib),
                    "num": num(e.num),
                    "delta": num(e.delta),
                    **({"stderr": e.stderr} if e.stderr is not None else {}),
                }
                for e in self.entries
            ],
        }


def slack_report_exact(g: WeightedGraph, scheme: SignalingScheme, mode: str = RATIONAL) -> SlackReport:
    """Closed-form slack table; identically exact in rational mode.

    Raises UnsupportedExact when some component has no closed form on g
    (callers fall back to slack_report_mc).
    """
    check_mode(mode)
    scheme.validate(g)
    moments: Dict[Fraction, List[Fraction]] = {th: [Fraction(0), Fraction(0)] for th in scheme.space}
    for w, comp in scheme.components:
        if w == 0:
            continue
        for th, (contrib, num) in comp.exact_moments(g).items():
            if th not in moments:
                if contrib == 0 and num == 0:
                    continue  # a signal the component can emit only with prob 0
                raise InputError(f"component emits {th} outside the signal space")
            moments[th][0] += w * contrib
            moments[th][1] += w * num
    entries = []
    unrealized = []
    cost = Fraction(0)
    for th in scheme.space:
        contrib, num = moments[th]
        delta = contrib - (1 - th) * num
        cost += th * num
        if num == 0:
            unrealized.append(th)
        entries.append(SignalSlack(th, contrib, num, delta))
    report = SlackReport(entries, cost, "exact", mode=RATIONAL, unrealized=unrealized)
    if mode == FLOAT:
        report.mode = FLOAT
        for e in report.entries:
            e.theta, e.contrib, e.num, e.delta = (
                float(e.theta), float(e.contrib), float(e.num), float(e.delta),
            )
        report.cost = float(report.cost)
        report.unrealized = [float(t) for t in report.unrealized]
    return report


def _derive_seed(seed: int, shard: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(shard,)))


def slack_report_mc(
    g: WeightedGraph,
    scheme: SignalingScheme,
    samples: int = MC_DEFAULT_SAMPLES,
    seed: int = None,
    shards: int = 1,
) -> SlackReport:
    """Unbiased Monte Carlo slack estimates with per-signal standard errors.

    Deterministic given (seed, shards); shard s uses the generator spawned
    from SeedSequence(seed, spawn_key=(s,)) so a parallel fan-out would merge
    to the same numbers.
    """
    if seed is None:
        raise InputError("slack_report_mc requires an explicit seed")
    if samples < 1:
        raise InputError("samples must be >= 1")
    scheme.validate(g)
    w_full = g.matrix(FLOAT)
    thetas = [float(t) for t in scheme.space]
    k = len(thetas)
    counts = [samples // shards + (1 if s < samples % shards else 0) for s in range(shards)]
    tot_n = np.zeros(k)
    tot_c = np.zeros(k)
    tot_d2 = np.zeros(k)  # sum of squared per-draw deltas, for stderr
    tot_cost = 0.0
    weights = np.array([float(w) for w, _ in scheme.components])
    for s, cnt in enumerate(counts):
        if cnt == 0:
            continue
        rng = _derive_seed(seed, s)
        picks = rng.choice(len(weights), size=cnt, p=weights / weights.sum())
        labelings = np.empty((cnt, g.n))
        for ci, (_, comp) in enumerate(scheme.components):
            rows = np.nonzero(picks == ci)[0]
            if rows.size == 0:
                continue
            if isinstance(comp, ExponentialClocks):
                member = comp.sample_sets(g, rng, rows.size)
                on, off = float(comp.on_value), float(comp.off_value)
                labelings[rows] = np.where(member, on, off)
            elif isinstance(comp, IndependentRounding):
                marg = np.array([float(m) for m in comp.marginals])
                keep = rng.random((rows.size, g.n)) < marg
                labelings[rows] = np.where(keep, float(comp.on_value), float(comp.off_value))
            else:
                labelings[rows] = comp.sample(g, rng)
        incoming = labelings @ w_full - labelings
        for i, th in enumerate(thetas):
            mask = labelings == th
            c_draws = (mask * incoming).sum(axis=1)
            n_draws = mask.sum(axis=1)
            d_draws = c_draws - (1.0 - th) * n_draws
            tot_c[i] += c_draws.sum()
            tot_n[i] += n_draws.sum()
            tot_d2[i] += (d_draws**2).sum()
        tot_cost += labelings.sum()
    entries = []
    unrealized = []
    for i, th in enumerate(thetas):
        contrib = tot_c[i] / samples
        num = tot_n[i] / samples
        delta = contrib - (1.0 - th) * num
        var = max(tot_d2[i] / samples - delta**2, 0.0)
        stderr = float(np.sqrt(var / samples))
        if num == 0:
            unrealized.append(th)
        entries.append(SignalSlack(th, contrib, num, delta, stderr=stderr))
    return SlackReport(
        entries,
        tot_cost / samples,
        "monte_carlo",
        mode=FLOAT,
        samples=samples,
        seed=seed,
        unrealized=unrealized,
    )


def is_persuasive(report: SlackReport, tol: Number = 0) -> bool:
    """Delta_0 >= -tol and |Delta_theta| <= tol for realized positive signals.

    tol = 0 is the exact mode used on rational reports; pass 1e-9 (or a few
    Monte Carlo standard errors) for float reports.
    """
    tol = to_fraction(tol)
    if tol < 0:
        raise InputError("tolerance must be nonnegative")
    for e in report.entries:
        num = to_fraction(e.num)
        if num == 0:
            continue
        delta = to_fraction(e.delta)
        if to_fraction(e.theta) == 0:
            if delta < -tol:
                return False
        elif abs(delta) > tol:
            return False
    return True


def cost(g: WeightedGraph, scheme: SignalingScheme, mode: str = RATIONAL) -> Number:
    """Expected total contribution when everyone follows their signal."""
    check_mode(mode)
    total = Fraction(0)
    for w, comp in scheme.components:
        if w == 0:
            continue
        total += w * sum(comp.expected_labeling(g), Fraction(0))
    return total if mode == RATIONAL else float(total)


def expected_labeling(g: WeightedGraph, scheme: SignalingScheme) -> List[Fraction]:
    """Per-vertex E[s_v] of the mixture (exact)."""
    out = [Fraction(0)] * g.n
    for w, comp in scheme.components:
        if w == 0:
            continue
        for v, x in enumerate(comp.expected_labeling(g)):
            out[v] += w * x
    return out


def sample_labeling(g: WeightedGraph, scheme: SignalingScheme, rng: np.random.Generator) -> np.ndarray:
    """One draw from the mixture: pick a component by weight, then label."""
    scheme.validate(g)
    weights = np.array([float(w) for w, _ in scheme.components])
    pick = rng.choice(len(weights), p=weights / weights.sum())
    return scheme.components[pick][1].sample(g, rng)
