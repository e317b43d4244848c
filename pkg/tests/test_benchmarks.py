"""Benchmarks: OPT / OPT^IR / OPT^stable examples and the ordering, duality,
and wastefulness invariants."""

import itertools
from fractions import Fraction as F

import numpy as np
import pytest

from collabsignal.benchmarks import (
    compute_benchmarks,
    is_feasible,
    is_ir,
    is_stable,
    solve_opt,
    solve_opt_ir,
    solve_opt_stable,
    wastefulness_gap,
)
from collabsignal.errors import CapacityError, InputError
from collabsignal.graphs import (
    WeightedGraph,
    gen_component_mix,
    gen_double_star,
    gen_triangle_centers,
)
from helpers import random_feasible_theta, random_unit_graph, random_weighted_graph

K2_HALF = gen_component_mix([{"kind": "edge", "w": "1/2"}])
PATH3 = gen_component_mix([{"kind": "path", "n": 3}])


def complete_graph(n):
    return WeightedGraph(n, tuple((u, v, F(1)) for u in range(n) for v in range(u + 1, n)))


class TestSolveOpt:
    @pytest.mark.parametrize("k", range(2, 7))
    def test_double_star_opt_is_two(self, k):
        g = gen_double_star(k)
        value, theta = solve_opt(g, "rational")
        assert value == 2
        assert is_feasible(g, theta, "rational")
        fvalue, _ = solve_opt(g, "float")
        assert abs(fvalue - 2) <= 1e-9

    def test_triangle_centers_opt_two_with_dual(self):
        g = gen_triangle_centers(3)
        value, theta, phi = solve_opt(g, "rational", with_dual=True)
        assert value == 2
        assert sum(phi) == value  # strong duality certificate
        w = g.matrix("rational")
        assert all(sum(r * p for r, p in zip(row, phi)) <= 1 for row in w)

    def test_isolated_vertex(self):
        g = WeightedGraph(1, ())
        assert solve_opt(g, "rational")[0] == 1


class TestSolveOptIR:
    def test_triangle_centers(self):
        g = gen_triangle_centers(2)
        value, theta = solve_opt_ir(g, "rational")
        assert value == 2
        assert is_ir(theta, "rational")

    def test_unit_k2(self):
        assert solve_opt_ir(complete_graph(2), "rational")[0] == 1

    def test_k4_brute_force_grid_oracle(self):
        g = complete_graph(4)
        value, _ = solve_opt_ir(g, "rational")
        # oracle: scan the 1/4-step grid for any feasible IR point cheaper
        # than the claimed optimum
        grid = [F(i, 4) for i in range(5)]
        best = min(
            sum(theta)
            for theta in itertools.product(grid, repeat=4)
            if all(u >= 1 for u in g.multiply(list(theta)))
        )
        assert value == best == 1


class TestSolveOptStable:
    def test_double_star_k3(self):
        g = gen_double_star(3)
        value, theta = solve_opt_stable(g, "rational")
        assert value == 4
        assert is_stable(g, theta, "rational")
        # Fig-style one-sided leaf profile is stable with the same cost:
        # the first star's leaves plus the opposite center
        one_sided = [0, 1, 1, 1, 1, 0, 0, 0]
        assert is_stable(g, one_sided, "rational")
        assert sum(one_sided) == 4

    def test_unit_path3_middle_vertex(self):
        value, theta = solve_opt_stable(PATH3, "rational")
        assert value == 1
        assert theta == [0, 1, 0]

    def test_half_weight_k2(self):
        value, theta = solve_opt_stable(K2_HALF, "rational")
        assert value == F(4, 3)
        assert theta == [F(2, 3), F(2, 3)]

    def test_capacity_error_over_cap(self):
        g = gen_double_star(10)  # n = 22
        with pytest.raises(CapacityError):
            solve_opt_stable(g, "rational")

    def test_lexicographic_tie_break(self):
        g = complete_graph(2)
        value, theta = solve_opt_stable(g, "rational")
        assert value == 1
        assert theta == [1, 0]  # support {0} beats {1} and {0,1}

    def test_stable_solutions_are_ir(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            g = random_unit_graph(rng, n_max=8)
            value, theta = solve_opt_stable(g, "rational")
            assert value is not None
            assert is_ir(theta, "rational")

    def test_oracle_never_beaten_by_best_response_dynamics(self):
        # Independent cross-check: round-robin best responses converge to a
        # stable point (each agent plays max(0, 1 - incoming)); the oracle's
        # optimum must be at most every such point's total workload.
        rng = np.random.default_rng(77)
        for _ in range(25):
            g = random_weighted_graph(rng, n_max=8)
            value, _ = solve_opt_stable(g, "rational")
            w = g.matrix("float")
            off = w - np.eye(g.n)
            found = []
            for _ in range(8):
                theta = rng.random(g.n)
                for _ in range(600):
                    new = theta.copy()
                    for v in range(g.n):
                        new[v] = max(0.0, 1.0 - float(off[v] @ new))
                    drift = float(np.max(np.abs(new - theta)))
                    theta = new
                    if drift < 1e-13:
                        break
                supply = w @ theta
                if np.all(supply >= 1 - 1e-8) and np.all(
                    (theta <= 1e-8) | (supply <= 1 + 1e-8)
                ):
                    found.append(theta.sum())
            assert found, "best-response dynamics never converged"
            assert float(value) <= min(found) + 1e-6


class TestPredicates:
    def test_both_centers_not_stable(self):
        g = gen_double_star(3)
        theta = [1, 1, 0, 0, 0, 0, 0, 0]
        assert is_feasible(g, theta, "rational")
        assert is_ir(theta, "rational")
        assert not is_stable(g, theta, "rational")

    def test_all_ones_stable_iff_edgeless(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            g = random_unit_graph(rng, n_max=7)
            ones = [F(1)] * g.n
            assert is_feasible(g, ones, "rational")
            assert is_ir(ones, "rational")
            assert is_stable(g, ones, "rational") == (len(g.edges) == 0)
        edgeless = WeightedGraph(4, ())
        assert is_stable(edgeless, [1, 1, 1, 1], "rational")

    def test_zero_vector_infeasible(self):
        g = gen_double_star(2)
        assert not is_feasible(g, [0] * g.n, "rational")


class TestWastefulness:
    def test_non_wasteful_is_optimal(self):
        g = complete_graph(2)
        theta = [F(1), F(0)]
        assert wastefulness_gap(g, theta, "rational") == 0
        assert sum(theta) == solve_opt(g, "rational")[0]

    def test_double_star_both_centers(self):
        # centers receive 2 each, leaves 1 each: ||W theta||_1 = 10, gap = 2
        g = gen_double_star(3)
        theta = [1, 1, 0, 0, 0, 0, 0, 0]
        assert wastefulness_gap(g, theta, "rational") == 2

    def test_requires_feasibility(self):
        g = gen_double_star(2)
        with pytest.raises(InputError):
            wastefulness_gap(g, [0] * g.n, "rational")

    def test_unit_gap_lower_bound(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            g = random_unit_graph(rng, n_max=8)
            opt, _ = solve_opt(g, "rational")
            theta = random_feasible_theta(rng, g, box=True)
            assert wastefulness_gap(g, theta, "rational") >= sum(theta) - opt


class TestOrderingAndReport:
    def test_benchmark_ordering(self):
        rng = np.random.default_rng(21)
        for _ in range(25):
            g = random_weighted_graph(rng, n_max=8)
            rep = compute_benchmarks(g, "rational")
            assert rep.opt <= rep.opt_ir
            if rep.opt_stable is not None:
                assert rep.opt_ir <= rep.opt_stable
                assert rep.pos == rep.opt_stable / rep.opt

    def test_report_capacity_flag(self):
        g = gen_double_star(10)
        rep = compute_benchmarks(g, "rational", skip_stable=True)
        assert rep.opt_stable is None and rep.stable_status == "capacity-skipped"
        with pytest.raises(CapacityError):
            compute_benchmarks(g, "rational")
