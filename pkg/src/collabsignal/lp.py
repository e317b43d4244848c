"""Dense simplex solver in float and exact-rational modes.

Both modes use Bland's rule, so termination is guaranteed even on the highly
degenerate workload LPs that come out of collaboration graphs.  Rational mode
solves in float first, then verifies and refines the final basis with exact
fraction-free (Bareiss) elimination; if the float basis does not check out it
falls back to a from-scratch exact simplex.  All variables are nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from .errors import InputError, LPError
from .modes import FLOAT, RATIONAL, Number, check_mode, to_fraction

_TOL = 1e-9


@dataclass
class LinearProgram:
    """min c.x subject to a_ge x >= b_ge, a_eq x = b_eq, 0 <= x (<= ub)."""

    c: Sequence[Number]
    a_ge: Sequence[Sequence[Number]] = ()
    b_ge: Sequence[Number] = ()
    a_eq: Sequence[Sequence[Number]] = ()
    b_eq: Sequence[Number] = ()
    ub: Optional[Sequence[Optional[Number]]] = None

    def __post_init__(self):
        n = len(self.c)
        for rows, rhs, tag in ((self.a_ge, self.b_ge, ">="), (self.a_eq, self.b_eq, "==")):
            if len(rows) != len(rhs):
                raise InputError(f"{tag} rows and rhs lengths differ")
            for row in rows:
                if len(row) != n:
                    raise InputError(f"{tag} row length {len(row)} != {n} variables")
        if self.ub is not None and len(self.ub) != n:
            raise InputError("ub length mismatch")


@dataclass
class LPResult:
    value: Number
    x: List[Number]
    dual_ge: List[Number]  # multipliers for the >= rows; >= 0 at optimality


class _Singular(Exception):
    pass


# -- exact linear algebra ------------------------------------------------------


def exact_solve(a_rows: List[List[Fraction]], rhs_cols: List[List[Fraction]]):
    """Solve A X = B exactly for several right-hand sides.

    Large sparse systems (the usual case for graph LPs) go through a
    fill-minimizing sparse elimination; dense or small ones use fraction-free
    Bareiss on an integer scaling of [A | B], which avoids gcd work in the
    inner loop.  Raises _Singular if A is not invertible.
    """
    m = len(a_rows)
    if m >= 48:
        nnz = sum(1 for row in a_rows for x in row if x)
        if nnz <= 0.2 * m * m:
            return _sparse_exact_solve(a_rows, rhs_cols)
    k = len(rhs_cols)
    denoms = set()
    for row in a_rows:
        for x in row:
            denoms.add(x.denominator)
    for col in rhs_cols:
        for x in col:
            denoms.add(x.denominator)
    scale = 1
    for d in denoms:
        scale = scale * d // _gcd(scale, d)
    t = [
        [int(x * scale) for x in a_rows[i]] + [int(col[i] * scale) for col in rhs_cols]
        for i in range(m)
    ]
    width = m + k
    prev = 1
    for piv in range(m):
        if t[piv][piv] == 0:
            swap = next((r for r in range(piv + 1, m) if t[r][piv] != 0), None)
            if swap is None:
                raise _Singular
            t[piv], t[swap] = t[swap], t[piv]
        pval = t[piv][piv]
        for r in range(piv + 1, m):
            rv = t[r][piv]
            if rv == 0:
                trow, prow = t[r], t[piv]
                for cidx in range(piv + 1, width):
                    if prow[cidx] or trow[cidx]:
                        trow[cidx] = (pval * trow[cidx]) // prev
                continue
            trow, prow = t[r], t[piv]
            for cidx in range(piv + 1, width):
                trow[cidx] = (pval * trow[cidx] - rv * prow[cidx]) // prev
            trow[piv] = 0
        prev = pval
    sols = []
    for j in range(k):
        x = [Fraction(0)] * m
        for i in range(m - 1, -1, -1):
            acc = Fraction(t[i][m + j])
            for l in range(i + 1, m):
                acc -= t[i][l] * x[l]
            if t[i][i] == 0:
                raise _Singular
            x[i] = acc / t[i][i]
        sols.append(x)
    return sols


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _sparse_exact_solve(a_rows, rhs_cols):
    """Exact Gaussian elimination with Markowitz-style pivoting.

    Rows are kept as dicts; each step pivots on the entry minimizing fill
    (fewest other entries in its row and column), which keeps graph-LP basis
    systems near-linear instead of cubic.
    """
    m = len(a_rows)
    k = len(rhs_cols)
    rows = []
    for i in range(m):
        d = {j: x for j, x in enumerate(a_rows[i]) if x}
        for t in range(k):
            if rhs_cols[t][i]:
                d[m + t] = Fraction(rhs_cols[t][i])
        rows.append(d)
    col_rows = [set() for _ in range(m)]
    for i, d in enumerate(rows):
        for j in d:
            if j < m:
                col_rows[j].add(i)
    alive_rows = set(range(m))
    alive_cols = set(range(m))
    order = []  # (pivot_row, pivot_col) in elimination order
    for _ in range(m):
        best = None
        for j in alive_cols:
            col_rows[j] &= alive_rows
            deg = len(col_rows[j])
            if deg == 0:
                raise _Singular
            if best is None or deg < best[0]:
                best = (deg, j)
                if deg == 1:
                    break
        pj = best[1]
        pi = min(col_rows[pj], key=lambda i: (len(rows[i]), i))
        piv = rows[pi][pj]
        order.append((pi, pj))
        alive_rows.discard(pi)
        alive_cols.discard(pj)
        for i in list(col_rows[pj] & alive_rows):
            factor = rows[i].get(pj)
            if not factor:
                col_rows[pj].discard(i)
                continue
            scale = factor / piv
            for j, x in rows[pi].items():
                cur = rows[i].get(j, Fraction(0)) - scale * x
                if cur:
                    rows[i][j] = cur
                    if j < m:
                        col_rows[j].add(i)
                else:
                    rows[i].pop(j, None)
                    if j < m:
                        col_rows[j].discard(i)
    sols = [[Fraction(0)] * m for _ in range(k)]
    assign = {}
    for pi, pj in reversed(order):
        d = rows[pi]
        piv = d[pj]
        for t in range(k):
            acc = d.get(m + t, Fraction(0))
            for j, x in d.items():
                if j < m and j != pj and j in assign:
                    acc -= x * sols[t][j]
            sols[t][pj] = acc / piv
        assign[pj] = True
    return sols


# -- standard form -------------------------------------------------------------


def _standardize(lp: LinearProgram):
    """Return (A, b, c, n_orig) in Fractions with Ax = b, x >= 0."""
    n = len(lp.c)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    kinds: List[str] = []  # "ge" | "eq" | "ub"
    for row, b in zip(lp.a_ge, lp.b_ge):
        rows.append([to_fraction(x) for x in row])
        rhs.append(to_fraction(b))
        kinds.append("ge")
    for row, b in zip(lp.a_eq, lp.b_eq):
        rows.append([to_fraction(x) for x in row])
        rhs.append(to_fraction(b))
        kinds.append("eq")
    ubs = []
    if lp.ub is not None:
        for j, u in enumerate(lp.ub):
            if u is None:
                continue
            row = [Fraction(0)] * n
            row[j] = Fraction(1)
            rows.append(row)
            rhs.append(to_fraction(u))
            kinds.append("ub")
            ubs.append(j)
    m = len(rows)
    extra = sum(1 for k in kinds if k != "eq")
    a = [[Fraction(0)] * (n + extra) for _ in range(m)]
    col = n
    ge_cols = {}
    for i, kind in enumerate(kinds):
        for j in range(n):
            a[i][j] = rows[i][j]
        if kind == "ge":
            a[i][col] = Fraction(-1)  # surplus
            ge_cols[i] = col
            col += 1
        elif kind == "ub":
            a[i][col] = Fraction(1)  # slack
            col += 1
    c = [to_fraction(x) for x in lp.c] + [Fraction(0)] * extra
    # simplex wants b >= 0
    for i in range(m):
        if rhs[i] < 0:
            a[i] = [-x for x in a[i]]
            rhs[i] = -rhs[i]
    ge_rows = [i for i, k in enumerate(kinds) if k == "ge"]
    return a, rhs, c, n, ge_rows


# -- float simplex -------------------------------------------------------------


def _float_simplex(a: np.ndarray, b: np.ndarray, c: np.ndarray):
    """Two-phase tableau simplex with Bland's rule.

    Returns (status, basis) where basis lists the final basic column per row.
    """
    m, n = a.shape
    tab = np.zeros((m + 1, n + m + 1))
    tab[:m, :n] = a
    tab[:m, n : n + m] = np.eye(m)
    tab[:m, -1] = b
    basis = list(range(n, n + m))
    # phase 1 objective: sum of artificials
    tab[m, n : n + m] = 1.0
    for i in range(m):
        tab[m, :] -= tab[i, :]
    status = _run_simplex(tab, basis, limit_cols=n + m)
    if status != "optimal" or tab[m, -1] < -1e-7:
        return "infeasible", basis
    # drive lingering artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            piv = next((j for j in range(n) if abs(tab[i, j]) > _TOL), None)
            if piv is not None:
                _pivot(tab, basis, i, piv)
    # phase 2
    tab[m, :] = 0.0
    tab[m, :n] = c
    for i in range(m):
        if basis[i] < n:
            tab[m, :] -= tab[m, basis[i]] * tab[i, :]
    tab[:, n : n + m] = 0.0  # forbid artificials from re-entering
    status = _run_simplex(tab, basis, limit_cols=n)
    return status, basis


def _pivot(tab: np.ndarray, basis: List[int], row: int, col: int):
    tab[row, :] /= tab[row, col]
    for r in range(tab.shape[0]):
        if r != row and abs(tab[r, col]) > 0:
            tab[r, :] -= tab[r, col] * tab[row, :]
    basis[row] = col


def _run_simplex(tab: np.ndarray, basis: List[int], limit_cols: int) -> str:
    m = tab.shape[0] - 1
    cap = 2000 + 40 * (tab.shape[1] + m)
    for _ in range(cap):
        # Bland: first column with a negative reduced cost
        enter = -1
        row = tab[m, :limit_cols]
        candidates = np.nonzero(row < -_TOL)[0]
        if candidates.size == 0:
            return "optimal"
        enter = int(candidates[0])
        leave, best, best_basis = -1, None, None
        for i in range(m):
            if tab[i, enter] > _TOL:
                ratio = tab[i, -1] / tab[i, enter]
                if best is None or ratio < best - _TOL or (
                    abs(ratio - best) <= _TOL and basis[i] < best_basis
                ):
                    leave, best, best_basis = i, ratio, basis[i]
        if leave < 0:
            return "unbounded"
        _pivot(tab, basis, leave, enter)
    return "stalled"


# -- exact simplex -------------------------------------------------------------


def _exact_simplex(a, b, c, start_basis=None):
    """Pure-Fraction two-phase simplex (Bland).  Small instances only."""
    m, n = len(a), len(c)
    zero, one = Fraction(0), Fraction(1)
    tab = [list(row) + [zero] * m + [b[i]] for i, row in enumerate(a)]
    for i in range(m):
        tab[i][n + i] = one
    cost = [zero] * (n + m + 1)
    basis = list(range(n, n + m))
    for j in range(n + m):
        cost[j] = sum(tab[i][j] for i in range(m)) * -1
        if j >= n:
            cost[j] += one
    cost[-1] = -sum(b)
    status = _run_exact(tab, cost, basis, n + m)
    if status != "optimal" or cost[-1] < 0:
        return "infeasible", None, None
    for i in range(m):
        if basis[i] >= n:
            piv = next((j for j in range(n) if tab[i][j] != 0), None)
            if piv is not None:
                _exact_pivot(tab, cost, basis, i, piv)
    cost = [to_fraction(x) for x in c] + [zero] * m + [zero]
    for i in range(m):
        if basis[i] < n and cost[basis[i]] != 0:
            f = cost[basis[i]]
            for j in range(n + m + 1):
                cost[j] -= f * tab[i][j]
    status = _run_exact(tab, cost, basis, n)
    if status != "optimal":
        return status, None, None
    x = [zero] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][-1]
    return "optimal", x, basis


def _exact_pivot(tab, cost, basis, row, col):
    p = tab[row][col]
    tab[row] = [v / p for v in tab[row]]
    for r in range(len(tab)):
        if r != row and tab[r][col] != 0:
            f = tab[r][col]
            tab[r] = [tab[r][j] - f * tab[row][j] for j in range(len(tab[row]))]
    if cost is not None and cost[col] != 0:
        f = cost[col]
        for j in range(len(cost)):
            cost[j] -= f * tab[row][j]
    basis[row] = col


def _run_exact(tab, cost, basis, limit_cols) -> str:
    m = len(tab)
    while True:
        enter = next((j for j in range(limit_cols) if cost[j] < 0), -1)
        if enter < 0:
            return "optimal"
        leave, best, best_basis = -1, None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < best_basis):
                    leave, best, best_basis = i, ratio, basis[i]
        if leave < 0:
            return "unbounded"
        _exact_pivot(tab, cost, basis, leave, enter)


# -- exact verification of a float basis ---------------------------------------


def _verify_basis(a, b, c, basis):
    """Solve the basis system exactly and check primal/dual optimality.

    Returns (x, value, y) on success, None when the float basis fails any
    exact check (caller falls back to the exact simplex).
    """
    m = len(a)
    cols = len(c)
    basic = set(basis)
    if len(basic) != m or any(j >= cols for j in basis):
        return None
    a_b = [[a[i][j] for j in basis] for i in range(m)]
    try:
        x_b = exact_solve(a_b, [list(b)])[0]
        at_b = [[a[i][basis[r]] for i in range(m)] for r in range(m)]
        y = exact_solve(at_b, [[c[j] for j in basis]])[0]
    except _Singular:
        return None
    if any(v < 0 for v in x_b):
        return None
    for j in range(cols):
        if j in basic:
            continue
        red = c[j] - sum(y[i] * a[i][j] for i in range(m) if a[i][j])
        if red < 0:
            return None
    x = [Fraction(0)] * cols
    for r, j in enumerate(basis):
        x[j] = x_b[r]
    value = sum(c[j] * x[j] for j in range(cols) if x[j])
    return x, value, y


# -- public entry ---------------------------------------------------------------

_EXACT_DIRECT_COLS = 48  # below this, skip the float presolve in rational mode


def lp_minimize(lp: LinearProgram, mode: str = FLOAT) -> LPResult:
    """Solve the LP; raises LPError on infeasible/unbounded status."""
    check_mode(mode)
    a, b, c, n_orig, ge_rows = _standardize(lp)
    m = len(a)
    if m == 0:
        if any(x < 0 for x in c):
            raise LPError("unbounded: negative cost with no constraints")
        zeros = [Fraction(0)] * n_orig
        return _result(Fraction(0), zeros, [], mode)

    def exact_from_scratch():
        status, x, basis = _exact_simplex(a, b, c)
        if status != "optimal":
            raise LPError(status)
        value = sum(c[j] * x[j] for j in range(len(c)) if x[j])
        y = _dual_from_basis(a, c, basis)
        return _result(value, x[:n_orig], [y[i] for i in ge_rows], mode)

    if mode == RATIONAL and len(c) <= _EXACT_DIRECT_COLS:
        return exact_from_scratch()

    af = np.array([[float(v) for v in row] for row in a])
    bf = np.array([float(v) for v in b])
    cf = np.array([float(v) for v in c])
    status, basis = _float_simplex(af, bf, cf)
    if status == "unbounded":
        raise LPError("unbounded")
    if status in ("infeasible", "stalled"):
        if mode == RATIONAL or status == "stalled":
            return exact_from_scratch()
        raise LPError("infeasible")

    if mode == FLOAT:
        # artificial columns may linger in the basis on redundant rows; they
        # behave as zero-cost identity columns
        af_aug = np.hstack([af, np.eye(m)])
        cf_aug = np.concatenate([cf, np.zeros(m)])
        try:
            a_b = af_aug[:, basis]
            x_b = np.linalg.solve(a_b, bf)
            y = np.linalg.solve(a_b.T, cf_aug[basis])
        except np.linalg.LinAlgError:
            return exact_from_scratch()
        if np.any(x_b < -1e-7):
            return exact_from_scratch()
        x = np.zeros(len(c))
        for r, j in enumerate(basis):
            if j < len(c):
                x[j] = max(x_b[r], 0.0)
        value = float(cf @ x)
        dual = [float(y[i]) for i in ge_rows]
        return LPResult(value, [float(v) for v in x[:n_orig]], dual)

    verified = _verify_basis(a, b, c, basis)
    if verified is None:
        return exact_from_scratch()
    x, value, y = verified
    return _result(value, x[:n_orig], [y[i] for i in ge_rows], mode)


def _dual_from_basis(a, c, basis):
    # Artificial columns (index >= len(c)) may linger in the basis on
    # redundant rows; they are identity columns with zero cost.
    m = len(a)
    n = len(c)

    def col(j):
        if j < n:
            return [a[i][j] for i in range(m)]
        e = [Fraction(0)] * m
        e[j - n] = Fraction(1)
        return e

    def cost(j):
        return c[j] if j < n else Fraction(0)

    at_b = [col(basis[r]) for r in range(m)]
    try:
        return exact_solve(at_b, [[cost(j) for j in basis]])[0]
    except _Singular:
        return [Fraction(0)] * m


def _result(value, x, dual, mode) -> LPResult:
    if mode == FLOAT:
        return LPResult(float(value), [float(v) for v in x], [float(v) for v in dual])
    return LPResult(value, list(x), list(dual))
