"""Shared randomized-instance helpers for the test suite.

Everything is seeded; weights and contributions are small-denominator
Fractions so rational-mode assertions stay exact.
"""

from fractions import Fraction

import numpy as np

from collabsignal.graphs import WeightedGraph


def random_unit_graph(rng: np.random.Generator, n_min=2, n_max=10) -> WeightedGraph:
    n = int(rng.integers(n_min, n_max + 1))
    p = rng.uniform(0.2, 0.8)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, Fraction(1)))
    return WeightedGraph(n, tuple(edges))


def random_weighted_graph(rng: np.random.Generator, n_min=2, n_max=10) -> WeightedGraph:
    n = int(rng.integers(n_min, n_max + 1))
    p = rng.uniform(0.2, 0.8)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, Fraction(int(rng.integers(1, 9)), 8)))
    return WeightedGraph(n, tuple(edges))


def random_feasible_theta(rng: np.random.Generator, g: WeightedGraph, box=True):
    """Random exact feasible contribution vector (theta <= 1 when box)."""
    theta = [Fraction(int(rng.integers(0, 9)), 8) for _ in range(g.n)]
    if box:
        theta = [min(t, Fraction(1)) for t in theta]
    for _ in range(10 * g.n + 10):
        supply = g.multiply(theta)
        deficits = [v for v in range(g.n) if supply[v] < 1]
        if not deficits:
            return theta
        v = deficits[int(rng.integers(0, len(deficits)))]
        # bump the strongest helper that still has headroom
        candidates = [(Fraction(1), v)] + [(w, u) for u, w in g.neighbors(v).items()]
        candidates.sort(key=lambda t: (-t[0], t[1]))
        for w, u in candidates:
            if not box or theta[u] < 1:
                need = (1 - supply[v]) / w
                theta[u] = min(Fraction(1), theta[u] + need) if box else theta[u] + need
                break
    supply = g.multiply(theta)
    assert all(s >= 1 for s in supply), "repair failed to reach feasibility"
    return theta
