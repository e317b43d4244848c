"""Weighted collaboration graphs and the instance families used in experiments.

A graph is a vertex set 0..n-1 with symmetric edge weights in (0, 1]; the
coupling matrix W additionally carries an implicit unit diagonal, so
``Induced(S)`` counts |S| once plus every internal edge twice.  Weights are
stored exactly as Fractions regardless of arithmetic mode.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import InputError
from .modes import FLOAT, Number, check_mode, format_number, parse_number, to_fraction

VertexSet = frozenset  # subsets of range(n); any iterable of ids is accepted

_DENSE_LIMIT = 512


def _as_vertex_set(g: "WeightedGraph", s: Iterable[int]) -> frozenset:
    vs = frozenset(s)
    for v in vs:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < g.n:
            raise InputError(f"vertex id {v!r} out of range for n={g.n}")
    return vs


@dataclass(frozen=True)
class WeightedGraph:
    """Immutable weighted graph; safe for concurrent reads."""

    n: int
    edges: Tuple[Tuple[int, int, Fraction], ...]
    _adj: Dict[int, Dict[int, Fraction]] = field(
        init=False, repr=False, compare=False, default=None
    )

    def __post_init__(self):
        if self.n < 0:
            raise InputError("vertex count must be nonnegative")
        seen = set()
        adj: Dict[int, Dict[int, Fraction]] = {v: {} for v in range(self.n)}
        norm = []
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                raise InputError(f"self-loop on vertex {u} not allowed")
            w = to_fraction(w)
            if not 0 < w <= 1:
                raise InputError(f"edge weight {w} outside (0, 1]")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"duplicate edge {key}")
            seen.add(key)
            norm.append((key[0], key[1], w))
            adj[u][v] = w
            adj[v][u] = w
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        object.__setattr__(self, "_adj", adj)

    # -- basic accessors ---------------------------------------------------

    def neighbors(self, v: int) -> Dict[int, Fraction]:
        """Open neighborhood of v with edge weights."""
        return self._adj[v]

    def weight(self, u: int, v: int) -> Fraction:
        """W_{u,v}: unit on the diagonal, 0 for non-edges."""
        if u == v:
            return Fraction(1)
        return self._adj[u].get(v, Fraction(0))

    @property
    def total_edge_weight(self) -> Fraction:
        """m, the sum of all edge weights."""
        return sum((w for _, _, w in self.edges), Fraction(0))

    @property
    def min_edge_weight(self) -> Fraction:
        if not self.edges:
            raise InputError("graph has no edges")
        return min(w for _, _, w in self.edges)

    def degree_weighted(self, v: int) -> Fraction:
        return sum(self._adj[v].values(), Fraction(0))

    def is_unit_weight(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def matrix(self, mode: str = FLOAT):
        """Dense W (unit diagonal).  Float mode returns an ndarray, rational
        mode a list of Fraction rows.  Dense is intended for n <= 512."""
        check_mode(mode)
        if self.n > _DENSE_LIMIT:
            raise InputError(f"dense matrix capped at n={_DENSE_LIMIT}")
        if mode == FLOAT:
            w = np.eye(self.n)
            for u, v, x in self.edges:
                w[u, v] = w[v, u] = float(x)
            return w
        rows = [[Fraction(0)] * self.n for _ in range(self.n)]
        for v in range(self.n):
            rows[v][v] = Fraction(1)
        for u, v, x in self.edges:
            rows[u][v] = rows[v][u] = x
        return rows

    def multiply(self, theta: Sequence[Number]) -> List[Fraction]:
        """Exact W @ theta."""
        if len(theta) != self.n:
            raise InputError(f"vector length {len(theta)} != n={self.n}")
        th = [to_fraction(t) for t in theta]
        out = list(th)
        for u, v, w in self.edges:
            out[u] += w * th[v]
            out[v] += w * th[u]
        return out

    # -- serialization -----------------------------------------------------

    def to_json_obj(self, mode: str = FLOAT) -> dict:
        return {
            "n": self.n,
            "edges": [[u, v, format_number(w, mode)] for u, v, w in self.edges],
        }

    def to_json(self, mode: str = FLOAT) -> str:
        return json.dumps(self.to_json_obj(mode), sort_keys=True)

    @staticmethod
    def from_json_obj(obj: dict) -> "WeightedGraph":
        try:
            n = int(obj["n"])
            edges = [(int(u), int(v), parse_number(w)) for u, v, w in obj["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed graph JSON: {exc}") from exc
        return WeightedGraph(n, tuple(edges))

    @staticmethod
    def from_json(text: str) -> "WeightedGraph":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"graph JSON does not parse: {exc}") from exc
        return WeightedGraph.from_json_obj(obj)


# -- cut / induced weights ---------------------------------------------------


def induced_weight(g: WeightedGraph, s: Iterable[int]) -> Fraction:
    """Induced(S) = |S| + 2 * (total weight of edges inside S).

    The |S| term is the unit self-loop convention; internal edges count twice
    because both endpoints receive them.
    """
    vs = _as_vertex_set(g, s)
    total = Fraction(len(vs))
    for u, v, w in g.edges:
        if u in vs and v in vs:
            total += 2 * w
    return total


def cut_weight(g: WeightedGraph, s: Iterable[int]) -> Fraction:
    """Cut(S, V \\ S): total weight of edges with exactly one endpoint in S."""
    vs = _as_vertex_set(g, s)
    total = Fraction(0)
    for u, v, w in g.edges:
        if (u in vs) != (v in vs):
            total += w
    return total


# -- generators ---------------------------------------------------------------
#
# Vertex id layout is uniform across families: centers come first, then
# leaves grouped by their star/triangle/clique in index-major order.


def gen_double_star(k: int) -> WeightedGraph:
    """Two adjacent centers (ids 0, 1), each with k unit-weight leaves."""
    if k < 1:
        raise InputError("double star needs k >= 1")
    edges = [(0, 1, Fraction(1))]
    for i in range(k):
        edges.append((0, 2 + i, Fraction(1)))
        edges.append((1, 2 + k + i, Fraction(1)))
    return WeightedGraph(2 * k + 2, tuple(edges))


def gen_k_star_clique(k: int, n: int) -> WeightedGraph:
    """k unit-weight stars whose centers (ids 0..k-1) form a clique.

    Each star carries l = floor(n/k) - 1 leaves, so the realized vertex count
    is k * floor(n/k) and can fall short of n when k does not divide n.
    """
    if k < 2:
        raise InputError("star clique needs k >= 2")
    if n < 2 * k:
        raise InputError("star clique needs n >= 2k so every star has a leaf")
    leaves = n // k - 1
    total = k * (leaves + 1)
    edges = []
    for i in range(k):
        for j in range(i + 1, k):
            edges.append((i, j, Fraction(1)))
    for i in range(k):
        base = k + i * leaves
        for j in range(leaves):
            edges.append((i, base + j, Fraction(1)))
    return WeightedGraph(total, tuple(edges))


def gen_triangle_centers(k: int) -> WeightedGraph:
    """Two centers plus k triangles, every edge of weight 1/2.

    Centers (ids 0, 1) are adjacent to each other and to all 3k leaves;
    triangle j occupies ids 2+3j .. 4+3j.
    """
    if k < 1:
        raise InputError("triangle centers needs k >= 1")
    half = Fraction(1, 2)
    edges = [(0, 1, half)]
    for j in range(k):
        a, b, c = 2 + 3 * j, 3 + 3 * j, 4 + 3 * j
        edges += [(a, b, half), (b, c, half), (a, c, half)]
        for leaf in (a, b, c):
            edges += [(0, leaf, half), (1, leaf, half)]
    return WeightedGraph(3 * k + 2, tuple(edges))


def gen_clique_leaves(k: int) -> WeightedGraph:
    """Two centers plus k^2 disjoint k-cliques of leaves, all weights 1/2.

    Centers (ids 0, 1) are adjacent to everything; clique i occupies ids
    2 + i*k .. 1 + (i+1)*k.  n = k^3 + 2.
    """
    if k < 2:
        raise InputError("clique leaves needs k >= 2")
    half = Fraction(1, 2)
    edges = [(0, 1, half)]
    for i in range(k * k):
        base = 2 + i * k
        members = range(base, base + k)
        for a in members:
            edges += [(0, a, half), (1, a, half)]
        for a in members:
            for b in members:
                if a < b:
                    edges.append((a, b, half))
    return WeightedGraph(k**3 + 2, tuple(edges))


def gen_component_mix(components: Sequence[dict]) -> WeightedGraph:
    """Disjoint union of small named components.

    Each component is a dict with a "kind":
      - {"kind": "path", "n": 3}                       unit-weight path
      - {"kind": "edge", "w": w}                       single weighted edge
      - {"kind": "triangle", "weights": [w01, w12, w02]}
      - {"kind": "graph", "graph": <graph JSON obj>}   arbitrary embedded graph
    """
    if not components:
        raise InputError("component mix needs at least one component")
    edges: List[Tuple[int, int, Fraction]] = []
    offset = 0
    for comp in components:
        kind = comp.get("kind")
        if kind == "path":
            size = int(comp.get("n", 0))
            if size < 1:
                raise InputError("path component needs n >= 1")
            for i in range(size - 1):
                edges.append((offset + i, offset + i + 1, Fraction(1)))
            offset += size
        elif kind == "edge":
            w = parse_number(comp["w"])
            edges.append((offset, offset + 1, w))
            offset += 2
        elif kind == "triangle":
            ws = [parse_number(w) for w in comp["weights"]]
            if len(ws) != 3:
                raise InputError("triangle component needs exactly 3 weights")
            edges += [
                (offset, offset + 1, ws[0]),
                (offset + 1, offset + 2, ws[1]),
                (offset, offset + 2, ws[2]),
            ]
            offset += 3
        elif kind == "graph":
            sub = WeightedGraph.from_json_obj(comp["graph"])
            for u, v, w in sub.edges:
                edges.append((offset + u, offset + v, w))
            offset += sub.n
        else:
            raise InputError(f"unknown component kind {kind!r}")
    return WeightedGraph(offset, tuple(edges))


FAMILIES = {
    "double-star": gen_double_star,
    "triangle-centers": gen_triangle_centers,
    "clique-leaves": gen_clique_leaves,
}
