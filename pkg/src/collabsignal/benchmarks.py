"""Workload benchmarks: OPT, OPT^IR, OPT^stable, and the price of stability.

OPT and OPT^IR come from linear programs over the coupling matrix W (unit
diagonal, symmetric).  OPT^stable has no known polynomial algorithm, so it is
computed exactly by support enumeration: a contribution vector is stable iff
it is feasible and every positive coordinate sits on a tight row of W theta,
which pins the solution on each candidate support to a linear system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import CapacityError, InputError
from .graphs import WeightedGraph
from .lp import LinearProgram, LPError, _Singular, exact_solve, lp_minimize
from .modes import FLOAT, RATIONAL, Number, check_mode, to_fraction, tolerance

STABLE_CAP_DEFAULT = 16

Solution = List[Number]  # per-vertex contribution vector


def _theta_fractions(g: WeightedGraph, sol: Sequence[Number]) -> List[Fraction]:
    if len(sol) != g.n:
        raise InputError(f"solution length {len(sol)} != n={g.n}")
    th = [to_fraction(t) for t in sol]
    if any(t < 0 for t in th):
        raise InputError("contribution vector must be nonnegative")
    return th


# -- predicates ---------------------------------------------------------------


def is_feasible(g: WeightedGraph, sol: Sequence[Number], mode: str = FLOAT) -> bool:
    """W theta >= 1 coordinate-wise (within mode tolerance)."""
    tol = to_fraction(tolerance(check_mode(mode)))
    u = g.multiply(_theta_fractions(g, sol))
    return all(x >= 1 - tol for x in u)


def is_ir(sol: Sequence[Number], mode: str = FLOAT) -> bool:
    """theta <= 1 coordinate-wise: nobody works more than solo completion."""
    tol = to_fraction(tolerance(check_mode(mode)))
    return all(to_fraction(t) <= 1 + tol for t in sol)


def is_stable(g: WeightedGraph, sol: Sequence[Number], mode: str = FLOAT) -> bool:
    """Feasible, and every positive contributor's feasibility row is tight."""
    tol = to_fraction(tolerance(check_mode(mode)))
    th = _theta_fractions(g, sol)
    u = g.multiply(th)
    if any(x < 1 - tol for x in u):
        return False
    return all(u[v] <= 1 + tol for v in range(g.n) if th[v] > tol)


def wastefulness_gap(g: WeightedGraph, sol: Sequence[Number], mode: str = FLOAT):
    """||W theta||_1 - n, the oversupply of a feasible solution."""
    if not is_feasible(g, sol, mode):
        raise InputError("wastefulness is defined for feasible solutions only")
    u = g.multiply(_theta_fractions(g, sol))
    gap = sum(u, Fraction(0)) - g.n
    return gap if mode == RATIONAL else float(gap)


# -- LP benchmarks -------------------------------------------------------------


def opt_program(g: WeightedGraph, ir: bool = False) -> LinearProgram:
    """The workload LP: min 1.theta s.t. W theta >= 1, theta >= 0 (<= 1 if ir)."""
    w = g.matrix(RATIONAL)
    return LinearProgram(
        c=[1] * g.n,
        a_ge=w,
        b_ge=[1] * g.n,
        ub=[1] * g.n if ir else None,
    )


def solve_opt(g: WeightedGraph, mode: str = FLOAT, with_dual: bool = False):
    """(OPT, witness theta[, dual phi]): minimum feasible total workload."""
    if g.n == 0:
        raise InputError("empty graph has no workload LP")
    res = lp_minimize(opt_program(g), mode)
    if with_dual:
        return res.value, res.x, res.dual_ge
    return res.value, res.x


def solve_opt_ir(g: WeightedGraph, mode: str = FLOAT):
    """(OPT^IR, witness): minimum workload with the theta <= 1 box."""
    if g.n == 0:
        raise InputError("empty graph has no workload LP")
    res = lp_minimize(opt_program(g, ir=True), mode)
    return res.value, res.x


# -- exact stable optimum by support enumeration --------------------------------


def _dominating_masks(g: WeightedGraph) -> List[int]:
    """Masks T whose closed neighborhoods cover V; a cheap necessary condition
    for the support of a feasible solution (outside vertices need a positive
    in-neighbor)."""
    n = g.n
    closed = [0] * n
    for v in range(n):
        closed[v] = (1 << v) | sum(1 << u for u in g.neighbors(v))
    full = (1 << n) - 1
    cover = [0] * (1 << n)
    out = []
    for mask in range(1, 1 << n):
        low = mask & -mask
        cover[mask] = cover[mask ^ low] | closed[low.bit_length() - 1]
        if cover[mask] == full:
            out.append(mask)
    return out


def _rref(rows: List[List[Fraction]]):
    """Reduced row echelon form in place; returns the pivot column list."""
    m = len(rows)
    cols = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def _support_solution_exact(g: WeightedGraph, t: List[int], outside: List[int]):
    """Exact minimum-cost stable point on one support, or None.

    On the support every row of W theta is pinned to 1.  If W[T,T] is
    invertible there is a single candidate; otherwise the affine solution set
    is parameterized through an exact RREF and a small LP runs over the free
    directions (split into +/- parts since they are sign-unrestricted).
    """
    k = len(t)
    w_tt = [[g.weight(u, v) for v in t] for u in t]
    ones = [Fraction(1)] * k
    try:
        x = exact_solve(w_tt, [ones])[0]
        candidates = [x]
        nullbasis = []
    except _Singular:
        aug = [row[:] + [Fraction(1)] for row in w_tt]
        pivots = _rref(aug)
        for row in aug:
            if all(v == 0 for v in row[:k]) and row[k] != 0:
                return None  # inconsistent equalities
        free = [c for c in range(k) if c not in pivots]
        x0 = [Fraction(0)] * k
        for r, c in enumerate(pivots):
            x0[c] = aug[r][k]
        nullbasis = []
        for fcol in free:
            vec = [Fraction(0)] * k
            vec[fcol] = Fraction(1)
            for r, c in enumerate(pivots):
                vec[c] = -aug[r][fcol]
            nullbasis.append(vec)
        candidates = [x0]
    if not nullbasis:
        x = candidates[0]
        if any(v < 0 for v in x):
            return None
        for v in outside:
            got = sum(g.weight(v, u) * x[i] for i, u in enumerate(t))
            if got < 1:
                return None
        return sum(x, Fraction(0)), x
    # free directions: minimize over z (unrestricted) with theta(z) >= 0 and
    # the outside rows covered; z splits into nonnegative halves for the LP
    d = len(nullbasis)
    x0 = candidates[0]
    if d == 1:
        # one free direction: the feasible z's form an interval, minimize the
        # linear cost at an endpoint (no LP needed)
        vec = nullbasis[0]
        lo, hi = None, None

        def tighten(coef, rhs, lo, hi):
            if coef == 0:
                return (lo, hi) if rhs <= 0 else (Fraction(1), Fraction(0))
            bound = rhs / coef
            if coef > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
            return lo, hi

        for i in range(k):
            lo, hi = tighten(vec[i], -x0[i], lo, hi)
            if lo is not None and hi is not None and lo > hi:
                return None
        for v in outside:
            wv = [g.weight(v, u) for u in t]
            coef = sum(w * vec[i] for i, w in enumerate(wv))
            base = sum(w * x0[i] for i, w in enumerate(wv))
            lo, hi = tighten(coef, 1 - base, lo, hi)
            if lo is not None and hi is not None and lo > hi:
                return None
        slope = sum(vec)
        if slope > 0:
            z = lo
        elif slope < 0:
            z = hi
        else:
            z = lo if lo is not None else hi
        if z is None:
            return None  # unbounded improving direction cannot happen with theta >= 0
        x = [x0[i] + z * vec[i] for i in range(k)]
        return sum(x, Fraction(0)), x
    rows_ge = []
    rhs_ge = []
    for i in range(k):  # theta_i >= 0
        row = [nullbasis[j][i] for j in range(d)]
        rows_ge.append([*row, *(-v for v in row)])
        rhs_ge.append(-x0[i])
    for v in outside:
        wv = [g.weight(v, u) for u in t]
        base = sum(w * x0[i] for i, w in enumerate(wv))
        row = [sum(w * nullbasis[j][i] for i, w in enumerate(wv)) for j in range(d)]
        rows_ge.append([*row, *(-v for v in row)])
        rhs_ge.append(1 - base)
    cost_dir = [sum(vec) for vec in nullbasis]
    lp = LinearProgram(
        c=[*cost_dir, *(-c for c in cost_dir)],
        a_ge=rows_ge,
        b_ge=rhs_ge,
    )
    try:
        res = lp_minimize(lp, RATIONAL)
    except LPError:
        return None
    z = [res.x[j] - res.x[d + j] for j in range(d)]
    x = [x0[i] + sum(z[j] * nullbasis[j][i] for j in range(d)) for i in range(k)]
    return sum(x, Fraction(0)), x


_SCREEN_COND = 1e7
_SCREEN_TOL = 1e-7


def _support_solution(g: WeightedGraph, support: Tuple[int, ...], w_float=None, cutoff=None):
    """Best stable solution with support confined to `support`, or None.

    A float solve screens out clearly infeasible supports (margin 1e-7) and
    supports that cannot beat the incumbent value (margin 1e-4); both screens
    are skipped for ill-conditioned systems, and survivors are confirmed
    exactly, so they never change the returned optimum.
    """
    t = list(support)
    outside = [v for v in range(g.n) if v not in set(t)]
    if w_float is not None and len(t) > 1:
        sub = w_float[np.ix_(t, t)]
        try:
            xf = np.linalg.solve(sub, np.ones(len(t)))
            safe = np.linalg.cond(sub) < _SCREEN_COND
        except np.linalg.LinAlgError:
            xf, safe = None, False
        if safe:
            if np.any(xf < -_SCREEN_TOL):
                return None
            if outside:
                got = w_float[np.ix_(outside, t)] @ xf
                if np.any(got < 1 - _SCREEN_TOL):
                    return None
            if cutoff is not None and float(xf.sum()) > cutoff + 1e-4:
                return None  # cannot beat the incumbent
    got = _support_solution_exact(g, t, outside)
    if got is None:
        return None
    value, x = got
    theta = [Fraction(0)] * g.n
    for i, v in enumerate(t):
        theta[v] = x[i]
    return value, theta


def solve_opt_stable(
    g: WeightedGraph,
    mode: str = FLOAT,
    cap: int = STABLE_CAP_DEFAULT,
):
    """(OPT^stable, witness) by exhaustive support enumeration.

    Exponential oracle: raises CapacityError when n exceeds `cap`.  Supports
    are scanned in increasing cardinality; ties in value resolve to the
    lexicographically smallest support.  Returns (None, None) when no stable
    solution exists on any support ("none found" is reported, not guessed).
    """
    check_mode(mode)
    if g.n > cap:
        raise CapacityError(f"stable oracle capped at n={cap}, got n={g.n}")
    if g.n == 0:
        return (Fraction(0) if mode == RATIONAL else 0.0), []
    best: Optional[Tuple[Fraction, Tuple[int, ...], List[Fraction]]] = None
    masks = _dominating_masks(g)
    masks.sort(key=lambda m: (bin(m).count("1"), m))
    w_float = g.matrix(FLOAT)
    for mask in masks:
        support = tuple(v for v in range(g.n) if mask >> v & 1)
        cutoff = float(best[0]) if best is not None else None
        got = _support_solution(g, support, w_float, cutoff)
        if got is None:
            continue
        value, theta = got
        key = (value, support)
        if best is None or key < (best[0], best[1]):
            best = (value, support, theta)
    if best is None:
        return None, None
    value, support, theta = best
    assert all(t <= 1 for t in theta), "stable solutions are automatically IR"
    if mode == RATIONAL:
        return value, theta
    return float(value), [float(t) for t in theta]


# -- combined report ------------------------------------------------------------


@dataclass
class BenchmarkReport:
    opt: Number
    opt_ir: Number
    opt_stable: Optional[Number]
    pos: Optional[Number]
    witnesses: dict
    stable_status: str = "ok"  # ok | none-found | capacity-skipped


def compute_benchmarks(
    g: WeightedGraph,
    mode: str = FLOAT,
    stable_cap: int = STABLE_CAP_DEFAULT,
    skip_stable: bool = False,
) -> BenchmarkReport:
    opt, th_opt = solve_opt(g, mode)
    opt_ir, th_ir = solve_opt_ir(g, mode)
    witnesses = {"opt": th_opt, "opt_ir": th_ir}
    if skip_stable or g.n > stable_cap:
        if not skip_stable:
            raise CapacityError(
                f"stable oracle capped at n={stable_cap}, got n={g.n}"
            )
        return BenchmarkReport(opt, opt_ir, None, None, witnesses, "capacity-skipped")
    opt_stable, th_stable = solve_opt_stable(g, mode, cap=stable_cap)
    if opt_stable is None:
        return BenchmarkReport(opt, opt_ir, None, None, witnesses, "none-found")
    witnesses["opt_stable"] = th_stable
    pos = opt_stable / opt
    return BenchmarkReport(opt, opt_ir, opt_stable, pos, witnesses)
