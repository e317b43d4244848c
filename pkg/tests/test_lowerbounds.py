"""Lower-bound certificates: point-mass slacks, exhaustive verification,
the clique-leaves projection, the reduced dual inequality, and binary scans."""

from fractions import Fraction as F

import numpy as np
import pytest

from collabsignal.constructions import (
    match_stable_scheme,
    maximal_independent_set,
)
from collabsignal.errors import CapacityError, InputError
from collabsignal.graphs import (
    WeightedGraph,
    gen_clique_leaves,
    gen_component_mix,
    gen_double_star,
    gen_triangle_centers,
)
from collabsignal.lowerbounds import (
    DualCertificate,
    ProjectedLabeling,
    binary_fail_scan,
    binary_pair_scan,
    full_vs_projected_slacks,
    g_reduced,
    project_clique_leaves_slacks,
    search_piecewise_certificate,
    slack_of_labeling,
    verify_certificate_exhaustive,
    verify_clique_leaves_dual,
)
from collabsignal.schemes import is_persuasive, scheme_from_components, slack_report_exact
from collabsignal.schemes import ExplicitSubset

UNIT_K2 = gen_component_mix([{"kind": "edge", "w": 1}])


class TestSlackOfLabeling:
    def test_all_zero(self):
        g = gen_double_star(3)
        slacks, total = slack_of_labeling(g, [0] * g.n)
        assert slacks[F(0)] == -g.n and total == 0

    def test_plan_a_point_mass_matches_scheme_report(self):
        g = gen_double_star(2)
        labeling = [F(3, 4), F(3, 4), 0, 0, 0, 0]
        slacks, _ = slack_of_labeling(g, labeling)
        assert slacks[F(3, 4)] == 1 and slacks[F(0)] == -1
        from collabsignal.schemes import ConstantLabeling

        scheme = scheme_from_components([(1, ConstantLabeling(tuple(labeling)))], g)
        rep = slack_report_exact(g, scheme)
        for th, d in slacks.items():
            assert rep.delta(th) == d

    def test_unit_k2_one_zero(self):
        slacks, total = slack_of_labeling(UNIT_K2, [1, 0])
        assert slacks[F(1)] == 0 and slacks[F(0)] == 0 and total == 1


class TestExhaustiveVerifier:
    def test_zero_function_zero_bound(self):
        cert = DualCertificate((0, F(1, 2), 1), {0: 0, F(1, 2): 0, 1: 0}, 0)
        out = verify_certificate_exhaustive(UNIT_K2, cert)
        assert out["certified"] and out["lower_bound"] == 0

    def test_zero_function_positive_bound_fails_on_all_zero(self):
        cert = DualCertificate((0, F(1, 2), 1), {0: 0, F(1, 2): 0, 1: 0}, F(1, 10))
        out = verify_certificate_exhaustive(UNIT_K2, cert)
        assert not out["certified"]
        assert out["violation"] == [F(0), F(0)]  # lexicographically first

    def test_f0_must_be_nonnegative(self):
        with pytest.raises(InputError):
            DualCertificate((0, 1), {0: F(-1), 1: 0}, 0)

    def test_capacity_guard(self):
        g = gen_double_star(12)  # 4^26 >> 10^7
        cert = DualCertificate((0, F(1, 2), F(3, 4), 1), {0: 0, F(1, 2): 0, F(3, 4): 0, 1: 0}, 0)
        with pytest.raises(CapacityError):
            verify_certificate_exhaustive(g, cert)

    def test_searched_certificate_double_star_k3(self):
        g = gen_double_star(3)
        grid = (0, F(1, 2), F(3, 4), 1)
        cert, report = search_piecewise_certificate(g, grid)
        assert report["certified"]
        assert cert.c_bound > 1
        # consistency: no grid-restricted persuasive scheme can be cheaper
        _, params = match_stable_scheme(g)
        assert cert.c_bound <= params.cost

    def test_copy_composition(self):
        one = gen_component_mix([{"kind": "path", "n": 3}])
        grid = (0, F(1, 2), 1)
        cert, report = search_piecewise_certificate(one, grid)
        assert report["certified"] and cert.c_bound > 0
        two = gen_component_mix([{"kind": "path", "n": 3}, {"kind": "path", "n": 3}])
        doubled = DualCertificate(grid, cert.f, 2 * cert.c_bound)
        assert verify_certificate_exhaustive(two, doubled)["certified"]

    def test_weighted_graph_certificate_below_stable_labeling(self):
        # On triangle-centers(3) the optimal stable profile labels each leaf
        # 1/2, which is itself a persuasive grid scheme of cost OPT^stable;
        # any certified bound on the {0, 1/2, 1} grid must stay below it.
        from collabsignal.benchmarks import solve_opt_stable
        from collabsignal.schemes import ConstantLabeling

        g = gen_triangle_centers(3)
        grid = (F(0), F(1, 2), F(1))
        cert, report = search_piecewise_certificate(g, grid)
        assert report["certified"]
        opt_stable, theta = solve_opt_stable(g, "rational")
        scheme = scheme_from_components([(1, ConstantLabeling(tuple(theta)))], g)
        rep = slack_report_exact(g, scheme)
        assert is_persuasive(rep, 0)
        assert set(float(t) for t in scheme.space) <= {0.0, 0.5, 1.0}
        assert cert.c_bound <= rep.cost == opt_stable


class TestCliqueLeavesProjection:
    def test_centers_at_one(self):
        out = project_clique_leaves_slacks(2, ProjectedLabeling(1, 1, (0, 0)))
        assert out[F(1)] == 1 and out[F(0)] == 0

    def test_all_zero(self):
        k = 3
        out = project_clique_leaves_slacks(k, ProjectedLabeling(0, 0, (0,) * k))
        assert out[F(0)] == -2 - k**3

    def test_matches_full_graph_slacks_exactly(self):
        k = 2
        g = gen_clique_leaves(k)
        rng = np.random.default_rng(9)
        values = [F(0), F(1, 2), F(3, 4), F(1)]
        for _ in range(25):
            labels = [values[i] for i in rng.integers(0, 4, size=g.n)]
            full, proj = full_vs_projected_slacks(g, k, labels)
            keys = set(full) | set(proj)
            assert all(full.get(t, F(0)) == proj.get(t, F(0)) for t in keys)

    def test_wrong_arity_rejected(self):
        with pytest.raises(InputError):
            project_clique_leaves_slacks(3, ProjectedLabeling(0, 0, (0, 0)))


class TestCliqueLeavesDual:
    def test_g_value_spot_check(self):
        # k/2 (1 - x) + x^2 / (4 k (1 - x)) at k=10, x=1/2
        assert abs(g_reduced(10, 0.5, 0.0) - 2.5125) < 1e-12

    def test_interior_optimum_branch(self):
        # where s*(x) >= 0 the dip below g(x, 0) is at most half of it
        k = 10
        for x in (0.5, 0.53, 0.56):
            s_star = 2 - x - x / (1 - x) - 1 / k
            assert s_star >= 0
            assert g_reduced(k, x, s_star) >= g_reduced(k, x, 0.0) / 2 - 1e-9

    @pytest.mark.parametrize("k", [8, 16, 32])
    def test_positive_margin_on_200_grid(self, k):
        gx = np.linspace(0.5, 1.0, 201)[:-1]
        gs = np.linspace(0.0, 3 * k, 200)
        out = verify_clique_leaves_dual(k, gx, gs)
        assert out["certified"] and out["min_margin"] > 0

    def test_grid_validation(self):
        with pytest.raises(InputError):
            verify_clique_leaves_dual(8, [1.0], [0.0])
        with pytest.raises(InputError):
            verify_clique_leaves_dual(8, [0.5], [100.0])


class TestBinaryFailScan:
    def test_triangle_centers_all_fail(self):
        g = gen_triangle_centers(8)
        mis = maximal_independent_set(g, {0, 1})
        grid = [F(i, 200) for i in range(201)]
        out = binary_fail_scan(g, {0, 1}, mis, grid)
        assert out["all_fail"]

    def test_double_star_some_p_works(self):
        g = gen_double_star(25)
        out = binary_fail_scan(
            g, {0, 1}, frozenset(range(2, g.n)), [F(i, 200) for i in range(201)]
        )
        assert not out["all_fail"]

    def test_independent_dominating_set_at_p1(self):
        star = WeightedGraph(6, tuple((0, i, F(1)) for i in range(1, 6)))
        out = binary_fail_scan(star, {0}, {0}, [1])
        row = out["table"][0]
        assert row["persuasive"] and row["cost"] == 1

    def test_scan_agrees_with_direct_persuasiveness(self):
        g = gen_triangle_centers(3)
        a = frozenset({0, 1})
        b = maximal_independent_set(g, a)
        grid = [F(i, 10) for i in range(11)]
        out = binary_fail_scan(g, a, b, grid)
        for row in out["table"]:
            p = row["p"]
            size = row["size"]
            induced = row["induced"]
            if size == 0 or induced == 0:
                continue
            alpha = size / induced
            scheme = scheme_from_components(
                [(1 - p, ExplicitSubset(a, alpha)), (p, ExplicitSubset(b, alpha))], g
            )
            rep = slack_report_exact(g, scheme)
            assert is_persuasive(rep, 0) == row["persuasive"]

    def test_pair_scan_app_c1_never_beats_opt_stable(self):
        g = gen_component_mix([
            {"kind": "path", "n": 3},
            {"kind": "edge", "w": "1/2"},
        ])
        out = binary_pair_scan(g, [F(i, 50) for i in range(51)])
        # OPT^stable = 1 + 4/3 on this instance; no two-subset binary scheme
        # in the scan reaches it
        assert out["min_cost"] > F(7, 3)
