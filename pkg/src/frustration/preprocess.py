"""Reductions that preserve the frustration index.

Pendant and isolated vertices can always be coloured to satisfy their edge,
and articulation points split the graph into blocks whose optima add up:
each block is solved on its own and the block colourings are glued at the
shared vertices by permuting colours (a global flip for two colours).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence

import networkx as nx

from .graph import Colouring, SignedGraph


@dataclass(frozen=True)
class Reduction:
    """Result of stripping vertices of degree <= 1.

    ``kept[t]`` is the original id of reduced node ``t``. ``removed`` lists
    ``(node, neighbour, weight)`` in removal order, with ``neighbour=None``
    for isolated vertices. ``offset`` is the frustration that removed edges
    contribute at best: zero for +-1 signs, ``(1 - |w|)/2`` per weighted edge.
    """

    original: SignedGraph
    graph: SignedGraph
    kept: tuple[int, ...]
    removed: tuple[tuple[int, int | None, float], ...]
    offset: float = 0.0

    def extend(self, colouring: Sequence[int]) -> Colouring:
        """Lift a colouring of the reduced graph to the original graph."""
        if len(colouring) != self.graph.n:
            raise ValueError("colouring does not match the reduced graph")
        x = [-1] * self.original.n
        for t, v in enumerate(self.kept):
            x[v] = int(colouring[t])
        k = max(2, max(colouring, default=0) + 1)
        for v, u, w in reversed(self.removed):
            if u is None:
                x[v] = 0
            elif w >= 0:
                x[v] = x[u]
            else:
                x[v] = (x[u] + 1) % k
        return tuple(x)


def strip_degree_le_one(g: SignedGraph) -> Reduction:
    """Iteratively delete isolated and pendant vertices (smallest id first)."""
    deg = list(g.degrees)
    alive = [True] * g.n
    queue = deque(v for v in range(g.n) if deg[v] <= 1)
    queued = [deg[v] <= 1 for v in range(g.n)]
    removed = []
    offset = 0.0
    while queue:
        v = queue.popleft()
        if deg[v] == 0:
            removed.append((v, None, 0.0))
            alive[v] = False
            continue
        u, e = next((u, e) for u, e in g.incidence[v] if alive[u])
        w = g.weight(e)
        removed.append((v, u, w))
        offset += (1 - abs(w)) / 2
        alive[v] = False
        deg[v] = 0
        deg[u] -= 1
        if deg[u] <= 1 and not queued[u]:
            queued[u] = True
            queue.append(u)
    kept = tuple(v for v in range(g.n) if alive[v])
    return Reduction(g, g.subgraph(kept), kept, tuple(removed), offset)


@dataclass(frozen=True)
class Block:
    """A biconnected component; ``nodes[t]`` is the parent id of block node ``t``."""

    graph: SignedGraph
    nodes: tuple[int, ...]


def split_blocks(g: SignedGraph) -> list[Block]:
    """Biconnected components (bridges included as two-node blocks).

    Blocks are ordered by their sorted node tuples; isolated vertices
    belong to no block.
    """
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.unsigned_edges())
    comps = sorted(tuple(sorted(c)) for c in nx.biconnected_components(h))
    return [Block(g.subgraph(c), c) for c in comps]


def articulation_points(g: SignedGraph) -> list[int]:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.unsigned_edges())
    return sorted(nx.articulation_points(h))


def merge_block_colourings(n: int, blocks: Sequence[Block], colourings: Sequence[Sequence[int]]) -> Colouring:
    """Glue per-block colourings into one colouring of the parent graph.

    Blocks are visited breadth-first through shared vertices; each newly
    reached block has its colours permuted (swapping two colour labels) so
    that it agrees with the one already-coloured vertex it shares.
    """
    x = [-1] * n
    by_node: dict[int, list[int]] = {}
    for b, blk in enumerate(blocks):
        for v in blk.nodes:
            by_node.setdefault(v, []).append(b)
    done = [False] * len(blocks)

    def place(b, anchor=None):
        col = list(colourings[b])
        if anchor is not None:
            t = blocks[b].nodes.index(anchor)
            have, want = col[t], x[anchor]
            if have != want:
                col = [want if c == have else have if c == want else c for c in col]
        for t, v in enumerate(blocks[b].nodes):
            x[v] = col[t]
        done[b] = True

    for start in range(len(blocks)):
        if done[start]:
            continue
        place(start)
        queue = deque([start])
        while queue:
            b = queue.popleft()
            for v in blocks[b].nodes:
                for nb in by_node[v]:
                    if not done[nb]:
                        place(nb, anchor=v)
                        queue.append(nb)
    return tuple(0 if c < 0 else c for c in x)


def solve_by_blocks(g: SignedGraph, solve_block: Callable[[SignedGraph], tuple[float, Sequence[int]]],
                    strip: bool = True):
    """Solve ``g`` block by block after stripping; returns ``(value, colouring)``.

    ``solve_block`` maps a block graph to its optimum and an optimal colouring.
    """
    red = strip_degree_le_one(g) if strip else Reduction(g, g, tuple(range(g.n)), ())
    blocks = split_blocks(red.graph)
    results = [solve_block(b.graph) for b in blocks]
    col = merge_block_colourings(red.graph.n, blocks, [c for _, c in results])
    return sum(v for v, _ in results) + red.offset, red.extend(col)
