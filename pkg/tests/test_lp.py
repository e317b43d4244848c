"""LP solver: named examples, statuses, and float/rational agreement."""

from fractions import Fraction as F

import numpy as np
import pytest

from collabsignal.errors import LPError
from collabsignal.lp import LinearProgram, lp_minimize
from helpers import random_weighted_graph


def test_single_vertex_forced():
    lp = LinearProgram(c=[1], a_ge=[[1]], b_ge=[1])
    res = lp_minimize(lp, "rational")
    assert res.value == 1 and res.x == [1]


def test_unit_k2_one_vertex_covers_both():
    lp = LinearProgram(c=[1, 1], a_ge=[[1, 1], [1, 1]], b_ge=[1, 1])
    res = lp_minimize(lp, "rational")
    assert res.value == 1
    assert sorted(res.x) == [0, 1]


def test_half_weight_k2_plays_two_thirds():
    lp = LinearProgram(
        c=[1, 1], a_ge=[[1, F(1, 2)], [F(1, 2), 1]], b_ge=[1, 1]
    )
    res = lp_minimize(lp, "rational")
    assert res.value == F(4, 3)
    assert res.x == [F(2, 3), F(2, 3)]


def test_infeasible_reported():
    lp = LinearProgram(c=[1], a_ge=[[1]], b_ge=[2], ub=[1])
    with pytest.raises(LPError):
        lp_minimize(lp, "rational")


def test_unbounded_reported():
    lp = LinearProgram(c=[-1], a_ge=[[1]], b_ge=[0])
    with pytest.raises(LPError):
        lp_minimize(lp, "float")


def test_upper_bounds_respected():
    lp = LinearProgram(c=[1, 1], a_ge=[[1, 1]], b_ge=[F(3, 2)], ub=[1, 1])
    res = lp_minimize(lp, "rational")
    assert res.value == F(3, 2)
    assert all(0 <= v <= 1 for v in res.x)


def test_equality_constraints():
    lp = LinearProgram(c=[1, 2], a_eq=[[1, 1]], b_eq=[1])
    res = lp_minimize(lp, "rational")
    assert res.value == 1 and res.x == [1, 0]


def test_modes_agree_and_duality_holds():
    rng = np.random.default_rng(11)
    for _ in range(25):
        g = random_weighted_graph(rng, n_min=2, n_max=8)
        w = g.matrix("rational")
        lp = LinearProgram(c=[1] * g.n, a_ge=w, b_ge=[1] * g.n)
        exact = lp_minimize(lp, "rational")
        approx = lp_minimize(lp, "float")
        assert abs(approx.value - float(exact.value)) <= 1e-9
        # dual witness: phi >= 0, W phi <= 1, and strong duality at optimum
        phi = exact.dual_ge
        assert all(v >= 0 for v in phi)
        for row in w:
            assert sum(a * p for a, p in zip(row, phi)) <= 1
        assert sum(phi) == exact.value
        # float mode emits a witness too, with a duality gap within tolerance
        assert abs(sum(approx.dual_ge) - approx.value) <= 1e-9
