"""Machine-checkable lower-bound certificates.

A dual certificate is a test function f on a finite signal grid with
f(0) >= 0 plus a constant C such that every deterministic grid labeling s
satisfies  ||s||_1 >= sum_theta f(theta) Delta_theta(s) + C.  Linearity of
expectation then bounds the cost of every persuasive scheme over that grid
by C.  Verification here enumerates the grid exhaustively (vectorized in
float, with exact rational rechecks of any labeling whose margin is within
a safety band of zero), so results are certificates about the stated grid,
never continuum statements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import CapacityError, InputError
from .graphs import WeightedGraph, cut_weight, induced_weight
from .modes import Number, to_fraction
from .schemes import _deterministic_moments

ENUM_GUARD = 10**7
_SAFETY = 1e-6


# -- slacks of deterministic labelings -------------------------------------------


def slack_of_labeling(g: WeightedGraph, labeling: Sequence[Number]):
    """(slack table, ||s||_1) for the point mass at one labeling."""
    labels = [to_fraction(x) for x in labeling]
    if len(labels) != g.n:
        raise InputError("labeling length differs from vertex count")
    if any(not 0 <= x <= 1 for x in labels):
        raise InputError("labeling values must lie in [0, 1]")
    moments = _deterministic_moments(g, labels)
    slacks = {th: contrib - (1 - th) * num for th, (contrib, num) in moments.items()}
    return slacks, sum(labels, Fraction(0))


# -- dual certificates -------------------------------------------------------------


@dataclass(frozen=True)
class DualCertificate:
    grid: Tuple[Fraction, ...]
    f: Dict[Fraction, Fraction]
    c_bound: Fraction

    def __post_init__(self):
        grid = tuple(sorted({to_fraction(v) for v in self.grid}))
        if any(not 0 <= v <= 1 for v in grid):
            raise InputError("grid values must lie in [0, 1]")
        f = {to_fraction(k): to_fraction(v) for k, v in self.f.items()}
        missing = [v for v in grid if v not in f]
        if missing:
            raise InputError(f"test function undefined on grid values {missing}")
        if Fraction(0) in f and f[Fraction(0)] < 0:
            raise InputError("dual certificates require f(0) >= 0")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "c_bound", to_fraction(self.c_bound))

    def to_json_obj(self) -> dict:
        return {
            "grid": [str(v) for v in self.grid],
            "f": [[str(k), str(v)] for k, v in sorted(self.f.items())],
            "C": str(self.c_bound),
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "DualCertificate":
        from .modes import parse_number

        try:
            grid = tuple(parse_number(v) for v in obj["grid"])
            f = {parse_number(k): parse_number(v) for k, v in obj["f"]}
            c = parse_number(obj["C"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed certificate JSON: {exc}") from exc
        return DualCertificate(grid, f, c)


def _margin_exact(g: WeightedGraph, cert: DualCertificate, labels: List[Fraction]) -> Fraction:
    slacks, total = slack_of_labeling(g, labels)
    rhs = sum((cert.f[th] * d for th, d in slacks.items()), Fraction(0))
    return total - rhs - cert.c_bound


def _enumerate_digit_chunks(n: int, base: int, chunk: int):
    """Yield (start_index, digit_matrix) covering base**n labelings in
    lexicographic order (digit 0 is the most significant)."""
    total = base**n
    weights = np.array([base ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    start = 0
    while start < total:
        cnt = min(chunk, total - start)
        idx = np.arange(start, start + cnt, dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % base
        yield start, digits
        start += cnt


def verify_certificate_exhaustive(
    g: WeightedGraph, cert: DualCertificate, chunk: int = 1 << 16
) -> dict:
    """Check the dual inequality over every grid labeling.

    Returns {"certified": True, "lower_bound": C, "min_margin": m} when the
    inequality holds everywhere, else {"certified": False, "violation": s}
    for the lexicographically first violating labeling.
    """
    base = len(cert.grid)
    if base == 0:
        raise InputError("empty grid")
    if base**g.n > ENUM_GUARD:
        raise CapacityError(
            f"{base}^{g.n} labelings exceed the enumeration guard {ENUM_GUARD}"
        )
    w = g.matrix("float")
    grid_f = np.array([float(v) for v in cert.grid])
    f_f = np.array([float(cert.f[v]) for v in cert.grid])
    c_f = float(cert.c_bound)
    exact_min: Optional[Fraction] = None  # exact minimum over near-zero rows
    float_min = float("inf")
    for _, digits in _enumerate_digit_chunks(g.n, base, chunk):
        s = grid_f[digits]
        fv = f_f[digits]
        u = s @ w - s
        margins = s.sum(axis=1) - (fv * (u - 1.0 + s)).sum(axis=1) - c_f
        float_min = min(float_min, float(margins.min()))
        for row in np.nonzero(margins < _SAFETY)[0]:
            labels = [cert.grid[d] for d in digits[row]]
            exact = _margin_exact(g, cert, labels)
            if exact < 0:
                return {"certified": False, "violation": labels, "margin": exact}
            if exact_min is None or exact < exact_min:
                exact_min = exact
    # any labeling within the safety band was re-checked exactly, so the
    # global minimum is the exact one whenever that band was hit
    min_margin = exact_min if exact_min is not None else to_fraction(float_min)
    return {"certified": True, "lower_bound": cert.c_bound, "min_margin": min_margin}


def search_piecewise_certificate(
    g: WeightedGraph,
    grid: Sequence[Number],
    thresholds: Optional[Sequence[Number]] = None,
    a_values: Optional[Sequence[Fraction]] = None,
    b_values: Optional[Sequence[Fraction]] = None,
    chunk: int = 1 << 16,
) -> Tuple[DualCertificate, dict]:
    """Coarse grid search over two-piece test functions, then exhaustively
    certify the winner.

    The family is f(theta) = a for theta >= t and b for theta < t with
    b >= 0 (so f(0) >= 0); a is allowed to be very negative, which is the
    shape that bites on star-like graphs (a steep penalty on near-1 signals).
    Returns the certified certificate (C set to the best margin found,
    floored to a multiple of 1/64) plus a report.
    """
    grid = tuple(sorted({to_fraction(v) for v in grid}))
    base = len(grid)
    if base**g.n > ENUM_GUARD:
        raise CapacityError("grid too fine for exhaustive search")
    positive = [v for v in grid if v > 0]
    if thresholds is None:
        thresholds = positive
    if a_values is None:
        a_values = [Fraction(i, 6) for i in range(-24, 1)]
    if b_values is None:
        b_values = [Fraction(i, 12) for i in range(0, 13)]
    w = g.matrix("float")
    grid_f = np.array([float(v) for v in grid])
    best = None  # (C_float, a, b, t)
    for t in thresholds:
        t = to_fraction(t)
        hi_mask_per_digit = np.array([1.0 if v >= t else 0.0 for v in grid])
        # per-labeling features: X = sum over hi vertices of (u - 1 + s),
        # Y = same over lo vertices; margin = L1 - a X - b Y
        l1_parts: List[np.ndarray] = []
        x_parts: List[np.ndarray] = []
        y_parts: List[np.ndarray] = []
        for _, digits in _enumerate_digit_chunks(g.n, base, chunk):
            s = grid_f[digits]
            hi = hi_mask_per_digit[digits]
            u = s @ w - s
            core = u - 1.0 + s
            l1_parts.append(s.sum(axis=1))
            x_parts.append((hi * core).sum(axis=1))
            y_parts.append(((1.0 - hi) * core).sum(axis=1))
        l1 = np.concatenate(l1_parts)
        x = np.concatenate(x_parts)
        y = np.concatenate(y_parts)
        for a in a_values:
            af = float(a)
            base_margin = l1 - af * x
            for b in b_values:
                c_val = float((base_margin - float(b) * y).min())
                if best is None or c_val > best[0]:
                    best = (c_val, a, b, t)
    c_val, a, b, t = best
    c_floor = Fraction(int(np.floor(c_val * 64)), 64)
    f_table = {v: (a if v >= t else b) for v in grid}
    cert = DualCertificate(grid, f_table, c_floor)
    outcome = verify_certificate_exhaustive(g, cert, chunk=chunk)
    if not outcome["certified"]:
        # float search overshot by a rounding hair; back off one step
        cert = DualCertificate(grid, f_table, c_floor - Fraction(1, 64))
        outcome = verify_certificate_exhaustive(g, cert, chunk=chunk)
    report = {"a": a, "b": b, "threshold": t, "search_value": c_val, **outcome}
    return cert, report


# -- clique-leaves dimensionality reduction ---------------------------------------


@dataclass(frozen=True)
class ProjectedLabeling:
    """Signals on the two centers and one sampled k-clique of the
    clique-leaves instance."""

    x: Fraction
    y: Fraction
    alpha: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", to_fraction(self.x))
        object.__setattr__(self, "y", to_fraction(self.y))
        object.__setattr__(self, "alpha", tuple(to_fraction(a) for a in self.alpha))

    @property
    def sum(self) -> Fraction:
        return sum(self.alpha, Fraction(0))


def project_clique_leaves_slacks(k: int, pl: ProjectedLabeling) -> Dict[Fraction, Fraction]:
    """Slack increments contributed by one projected draw.

    The k^2 factors undo the 1/k^2 probability of sampling each clique, so
    averaging these increments over cliques (and then over the scheme)
    reproduces the full-graph slacks exactly.
    """
    if k < 2:
        raise InputError("clique-leaves projection needs k >= 2")
    if len(pl.alpha) != k:
        raise InputError(f"projected labeling needs exactly {k} clique signals")
    ksq = Fraction(k * k)
    total = pl.sum
    out: Dict[Fraction, Fraction] = {}

    def add(theta, inc):
        out[theta] = out.get(theta, Fraction(0)) + inc

    add(pl.x, (pl.y + ksq * total) / 2 - (1 - pl.x))
    add(pl.y, (pl.x + ksq * total) / 2 - (1 - pl.y))
    for a in pl.alpha:
        add(a, ksq * ((total + pl.x + pl.y + a) / 2 - 1))
    return out


def full_vs_projected_slacks(g: WeightedGraph, k: int, labeling: Sequence[Number]):
    """(full-graph slack table, clique-averaged projected table) for one
    deterministic labeling of gen_clique_leaves(k); they must agree exactly."""
    labels = [to_fraction(x) for x in labeling]
    if g.n != k**3 + 2 or len(labels) != g.n:
        raise InputError("labeling does not fit gen_clique_leaves(k)")
    full, _ = slack_of_labeling(g, labels)
    avg: Dict[Fraction, Fraction] = {}
    ksq = k * k
    for i in range(ksq):
        pl = ProjectedLabeling(
            labels[0], labels[1], tuple(labels[2 + i * k : 2 + (i + 1) * k])
        )
        for th, inc in project_clique_leaves_slacks(k, pl).items():
            avg[th] = avg.get(th, Fraction(0)) + inc / ksq
    avg = {th: v for th, v in avg.items()}
    full = {th: v for th, v in full.items() if v != 0 or th in avg}
    return full, avg


def verify_clique_leaves_dual(
    k: int, grid_x: Sequence[Number], grid_s: Sequence[Number]
) -> dict:
    """Grid-check the reduced dual-feasibility inequality for clique-leaves.

    Margins are the left minus right side of the simplified inequality with
    beta_1 = 1/(2k^2) on the constant test function and beta_2 = 1/(4k) on
    theta/(1-theta), evaluated at x = y (the minimizing diagonal) under both
    worst-case clique allocations: the spread bound sum a_i/(1-a_i) >= s and
    the concentrated permutation of (s, 0, ..., 0).  A positive minimum
    certifies the Omega(k^2) = Omega(n^{2/3}) conclusion at this k.
    """
    if k < 2:
        raise InputError("k >= 2 required")
    xs = np.array([float(v) for v in grid_x], dtype=float)
    ss = np.array([float(v) for v in grid_s], dtype=float)
    if xs.size == 0 or ss.size == 0:
        raise InputError("empty grid")
    if np.any(xs < 0.5) or np.any(xs >= 1.0):
        raise InputError("grid_x must lie in [1/2, 1)")
    if np.any(ss < 0) or np.any(ss > 3 * k):
        raise InputError(f"grid_s must lie in [0, {3 * k}]")
    x = xs[:, None]
    s = ss[None, :]
    ratio = x / (1.0 - x)
    lead = k / 2 + x * x / (4 * k * (1.0 - x)) + (k / 4) * s * ratio
    rhs = (3 * k / 8 - 0.25) * s + (k / 2) * x
    coeff = (k / 8) * (s + 2 * x - 1.0)
    margins_spread = lead + coeff * s - rhs
    conc = np.where(s < 1.0, s / np.maximum(1.0 - s, 1e-300), np.inf)
    margins_conc = np.where(
        np.isfinite(conc), lead + coeff * conc - rhs, np.inf
    )
    margins = np.minimum(margins_spread, margins_conc)
    pos = int(np.argmin(margins))
    i, j = divmod(pos, ss.size)
    result = {
        "k": k,
        "min_margin": float(margins[i, j]),
        "argmin": (float(xs[i]), float(ss[j])),
        "certified": bool(margins[i, j] > 0),
    }
    return result


def g_reduced(k: int, x: float, s: float) -> float:
    """The diagonal margin function g(x, s) (spread allocation)."""
    if not 0.5 <= x < 1:
        raise InputError("x must lie in [1/2, 1)")
    ratio = x / (1.0 - x)
    return (
        k / 2
        + x * x / (4 * k * (1.0 - x))
        + (k / 4) * s * ratio
        + (k / 8) * (s + 2 * x - 1.0) * s
        - (3 * k / 8 - 0.25) * s
        - (k / 2) * x
    )


# -- binary-scheme impossibility scans ---------------------------------------------


def binary_fail_scan(
    g: WeightedGraph,
    set_a: Iterable[int],
    set_b: Iterable[int],
    p_grid: Sequence[Number],
) -> dict:
    """Evaluate the binary persuasiveness condition for every mixture
    (1-p) set_a + p set_b on the grid of p values.

    The condition is E[Cut]/E|V\\S| >= E[Induced]/E|S| (degenerate-at-V
    mixtures pass vacuously); when it holds the implied signal value is
    alpha = E|S|/E[Induced] and the cost is E|S|^2 / E[Induced].
    """
    a = frozenset(set_a)
    b = frozenset(set_b)
    stats = {}
    for name, s in (("a", a), ("b", b)):
        stats[name] = (
            Fraction(len(s)),
            induced_weight(g, s),
            cut_weight(g, s),
        )
    rows = []
    all_fail = True
    for p_raw in p_grid:
        p = to_fraction(p_raw)
        if not 0 <= p <= 1:
            raise InputError("mixture probabilities must lie in [0, 1]")
        size = (1 - p) * stats["a"][0] + p * stats["b"][0]
        induced = (1 - p) * stats["a"][1] + p * stats["b"][1]
        cut = (1 - p) * stats["a"][2] + p * stats["b"][2]
        rest = g.n - size
        if size == 0:
            persuasive = False  # nobody ever works; infeasible for everyone
        elif rest == 0:
            persuasive = True  # degenerate at V: the vacuous-left-side case
        else:
            persuasive = cut * size >= induced * rest
        row = {
            "p": p,
            "size": size,
            "induced": induced,
            "cut": cut,
            "persuasive": persuasive,
        }
        if persuasive and induced > 0:
            row["alpha"] = size / induced
            row["cost"] = size * size / induced
            all_fail = False
        rows.append(row)
    return {"all_fail": all_fail, "table": rows}


def binary_pair_scan(g: WeightedGraph, p_grid: Sequence[Number], max_n: int = 12) -> dict:
    """Bounded scan of binary schemes supported on pairs of subsets.

    Covers every unordered pair of nonempty subsets crossed with p_grid; a
    coarse search tool for the open question about beating OPT^stable with
    few signals.  No completeness claim: mixtures over more than two sets
    are out of scope.
    """
    if g.n > max_n:
        raise CapacityError(f"pair scan capped at n={max_n}")
    subsets = [frozenset(v for v in range(g.n) if m >> v & 1) for m in range(1, 1 << g.n)]
    best = None
    persuasive_count = 0
    for i, a in enumerate(subsets):
        for b in subsets[i:]:
            res = binary_fail_scan(g, a, b, p_grid)
            for row in res["table"]:
                if row["persuasive"] and "cost" in row:
                    persuasive_count += 1
                    key = (row["cost"], tuple(sorted(a)), tuple(sorted(b)), row["p"])
                    if best is None or key < best:
                        best = key
    out = {"persuasive_found": persuasive_count}
    if best is not None:
        out.update(
            min_cost=best[0], best_pair=(best[1], best[2]), best_p=best[3]
        )
    return out
