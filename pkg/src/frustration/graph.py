"""Signed graph data model, structural queries and frustration counting."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Colouring = tuple[int, ...]


@dataclass(frozen=True)
class SignedGraph:
    """Simple undirected graph on nodes ``0..n-1`` with signed edges.

    Edges are stored as ``(i, j, sign)`` with ``i < j`` and sign in {-1, +1}.
    A weighted graph additionally carries one real weight in [-1, 1] per
    edge; the sign of a weighted edge is +1 for ``w >= 0`` and -1 otherwise.
    Use :meth:`from_edges` to build one from unsorted or reversed pairs.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...] = ()
    weights: tuple[float, ...] | None = None
    _index: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"node count must be nonnegative, got {self.n}")
        if self.weights is not None and len(self.weights) != len(self.edges):
            raise ValueError("one weight per edge required")
        index = self._index
        for e, (i, j, s) in enumerate(self.edges):
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            if not (0 <= i < j < self.n):
                raise ValueError(f"edge ({i}, {j}) must satisfy 0 <= i < j < n={self.n}")
            if s not in (-1, 1):
                raise ValueError(f"edge ({i}, {j}) has sign {s}, expected -1 or +1")
            if (i, j) in index:
                raise ValueError(f"duplicate edge ({i}, {j})")
            index[(i, j)] = e
        if self.weights is not None:
            for (i, j, s), w in zip(self.edges, self.weights):
                if not (-1.0 <= w <= 1.0):
                    raise ValueError(f"edge ({i}, {j}) weight {w} outside [-1, 1]")
                if s != (1 if w >= 0 else -1):
                    raise ValueError(f"edge ({i}, {j}) sign disagrees with weight {w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence], weighted: bool | None = None) -> "SignedGraph":
        """Build a graph from ``(u, v, sign)`` triples in any orientation.

        With ``weighted=None`` the graph is weighted when some third entry is
        a float other than +-1. Edges are sorted by endpoint pair.
        """
        triples = []
        detect = weighted is None
        weighted = bool(weighted)
        for u, v, s in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if u > v:
                u, v = v, u
            if detect and isinstance(s, float) and s not in (-1.0, 1.0):
                weighted = True
            triples.append((u, v, s))
        triples.sort(key=lambda t: (t[0], t[1]))
        if weighted:
            ws = tuple(float(s) for _, _, s in triples)
            es = tuple((u, v, 1 if w >= 0 else -1) for (u, v, _), w in zip(triples, ws))
            return cls(n, es, ws)
        return cls(n, tuple((u, v, int(s)) for u, v, s in triples))

    # -- basic counts ------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def m_pos(self) -> int:
        return sum(1 for e in self.edges if e[2] > 0)

    @property
    def m_neg(self) -> int:
        return self.m - self.m_pos

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None

    def weight(self, e: int) -> float:
        """Weight of edge number ``e``; the sign for unweighted graphs."""
        if self.weights is None:
            return float(self.edges[e][2])
        return self.weights[e]

    @cached_property
    def edge_weights(self) -> np.ndarray:
        if self.weights is None:
            return np.array([s for _, _, s in self.edges], dtype=float)
        return np.array(self.weights, dtype=float)

    def sign(self, i: int, j: int) -> int:
        """Entry of the signed adjacency matrix: the edge sign or 0."""
        if i > j:
            i, j = j, i
        e = self._index.get((i, j))
        return 0 if e is None else self.edges[e][2]

    def edge_id(self, i: int, j: int) -> int | None:
        if i > j:
            i, j = j, i
        return self._index.get((i, j))

    def has_edge(self, i: int, j: int) -> bool:
        return self.edge_id(i, j) is not None

    @cached_property
    def neighbours(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour lists."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def incidence(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per node, ``(neighbour, edge id)`` pairs sorted by neighbour."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e, (i, j, _) in enumerate(self.edges):
            inc[i].append((j, e))
            inc[j].append((i, e))
        return tuple(tuple(sorted(a)) for a in inc)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.neighbours)

    def degree(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise ValueError(f"node {i} not in graph with n={self.n}")
        return self.degrees[i]

    def max_degree_node(self) -> int:
        """Node of largest degree; ties go to the smallest id."""
        if self.n == 0:
            raise ValueError("empty graph has no nodes")
        degs = self.degrees
        return max(range(self.n), key=lambda i: (degs[i], -i))

    def density(self) -> float:
        if self.n < 2:
            raise ValueError("density needs at least 2 nodes")
        return 2.0 * self.m / (self.n * (self.n - 1))

    # -- derived graphs ----------------------------------------------------

    def subgraph(self, nodes: Sequence[int]) -> "SignedGraph":
        """Induced subgraph; node ``nodes[t]`` becomes node ``t``."""
        pos = {v: t for t, v in enumerate(nodes)}
        es = []
        for e, (i, j, s) in enumerate(self.edges):
            if i in pos and j in pos:
                a, b = pos[i], pos[j]
                if a > b:
                    a, b = b, a
                es.append((a, b, s, e))
        es.sort()
        if self.weights is not None:
            ws = tuple(self.weights[e] for *_, e in es)
            return SignedGraph(len(nodes), tuple((a, b, s) for a, b, s, _ in es), ws)
        return SignedGraph(len(nodes), tuple((a, b, s) for a, b, s, _ in es))

    def with_signs(self, signs: Sequence[int]) -> "SignedGraph":
        """Same topology with new per-edge signs (unweighted result)."""
        if len(signs) != self.m:
            raise ValueError("one sign per edge required")
        return SignedGraph(self.n, tuple((i, j, int(s)) for (i, j, _), s in zip(self.edges, signs)))

    def unsigned_edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j, _ in self.edges]

    def __eq__(self, other):
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return (self.n, self.edges, self.weights) == (other.n, other.edges, other.weights)

    def __hash__(self):
        return hash((self.n, self.edges, self.weights))


@dataclass(frozen=True)
class FrustrationSummary:
    count: float
    frustrated: tuple[bool, ...]
    values: tuple[float, ...] = ()

    @property
    def frustrated_edges(self) -> list[int]:
        return [e for e, f in enumerate(self.frustrated) if f]


def check_colouring(g: SignedGraph, x: Sequence[int], k: int = 2) -> Colouring:
    if len(x) != g.n:
        raise ValueError(f"colouring has length {len(x)}, graph has {g.n} nodes")
    out = tuple(int(c) for c in x)
    for i, c in enumerate(out):
        if not 0 <= c < k:
            raise ValueError(f"node {i} has colour {c}, expected 0..{k - 1}")
    return out


def edge_cost(w: float, same: bool) -> float:
    """Frustration of an edge of weight ``w`` given whether its endpoints share a colour.

    For w = +1 this is 0/1 (frustrated iff colours differ); for w = -1 it is
    1/0; in general (1 - w)/2 for equal colours and (1 + w)/2 otherwise.
    """
    return (1.0 - w) / 2.0 if same else (1.0 + w) / 2.0


def frustration_count(g: SignedGraph, x: Sequence[int], k: int = 2) -> FrustrationSummary:
    """Frustration of graph ``g`` under colouring ``x``.

    A positive edge is frustrated when its endpoints get different colours,
    a negative edge when they get the same colour. Weighted graphs yield
    real per-edge values in [0, 1]; an edge counts as frustrated when its
    value is positive.
    """
    x = check_colouring(g, x, k)
    if not g.is_weighted:
        flags = tuple((x[i] == x[j]) != (s > 0) for i, j, s in g.edges)
        return FrustrationSummary(sum(flags), flags, tuple(float(f) for f in flags))
    vals = tuple(edge_cost(w, x[i] == x[j]) for (i, j, _), w in zip(g.edges, g.weights))
    return FrustrationSummary(float(sum(vals)), tuple(v > 0 for v in vals), vals)


def frustration_value(g: SignedGraph, x: Sequence[int]) -> float:
    """Scalar frustration (int-valued for unweighted graphs)."""
    return frustration_count(g, x, k=max(2, max(x, default=0) + 1)).count


def unbalanced_triangles(g: SignedGraph) -> list[tuple[int, int, int]]:
    """All triples ``i < j < k`` forming a triangle with sign product -1."""
    if g.is_weighted:
        raise ValueError("unbalanced triangles are defined for +-1 signs only")
    adj = [set(a) for a in g.neighbours]
    out = []
    for i, j, s_ij in g.edges:
        for k in sorted(adj[i] & adj[j]):
            if k > j and s_ij * g.sign(i, k) * g.sign(j, k) < 0:
                out.append((i, j, k))
    out.sort()
    return out


@dataclass(frozen=True)
class BalanceResult:
    balanced: bool
    colouring: Colouring | None = None
    cycle: tuple[int, ...] | None = None

    def __bool__(self):
        return self.balanced


def is_balanced(g: SignedGraph) -> BalanceResult:
    """Decide structural balance by parity-labelled BFS.

    Returns a zero-frustration colouring when balanced, otherwise a cycle
    (node sequence, closing edge implied) with an odd number of negative
    edges. Components are visited in node-id order with sorted neighbours.
    """
    colour = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if colour[root] >= 0:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.neighbours[u]:
                want = colour[u] if g.sign(u, v) > 0 else 1 - colour[u]
                if colour[v] < 0:
                    colour[v] = want
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif colour[v] != want:
                    return BalanceResult(False, cycle=_tree_cycle(u, v, parent, depth))
    return BalanceResult(True, colouring=tuple(colour))


def _tree_cycle(u, v, parent, depth):
    a, b = [u], [v]
    while depth[a[-1]] > depth[b[-1]]:
        a.append(parent[a[-1]])
    while depth[b[-1]] > depth[a[-1]]:
        b.append(parent[b[-1]])
    while a[-1] != b[-1]:
        a.append(parent[a[-1]])
        b.append(parent[b[-1]])
    b.pop()
    return tuple(a + b[::-1])


def cycle_sign(g: SignedGraph, cycle: Sequence[int]) -> int:
    s = 1
    for t in range(len(cycle)):
        sg = g.sign(cycle[t], cycle[(t + 1) % len(cycle)])
        if sg == 0:
            raise ValueError(f"({cycle[t]}, {cycle[(t + 1) % len(cycle)]}) is not an edge")
        s *= sg
    return s


def switch(g: SignedGraph, nodes: Iterable[int]) -> SignedGraph:
    """Negate the sign of every edge with exactly one endpoint in ``nodes``."""
    side = set(nodes)
    es = tuple((i, j, -s if (i in side) != (j in side) else s) for i, j, s in g.edges)
    if g.weights is None:
        return SignedGraph(g.n, es)
    ws = tuple(-w if (i in side) != (j in side) else w for (i, j, _), w in zip(g.edges, g.weights))
    es = tuple((i, j, 1 if w >= 0 else -1) for (i, j, _), w in zip(es, ws))
    return SignedGraph(g.n, es, ws)
