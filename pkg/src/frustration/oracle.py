"""Exhaustive ground truth for small graphs."""

from __future__ import annotations

import numpy as np

from .graph import Colouring, SignedGraph, frustration_count

DEFAULT_CAP = 20
DEFAULT_MULTI_CAP = 3 ** 12


class OracleRefused(ValueError):
    """Instance too large for exhaustive enumeration."""


def gray_flips(bits: int):
    """Bit flipped at each step of the reflected Gray code over ``bits`` bits."""
    for step in range(1, 1 << bits):
        yield (step & -step).bit_length() - 1


def brute_force_L(g: SignedGraph, cap: int = DEFAULT_CAP) -> tuple[int, Colouring]:
    """Frustration index and the lexicographically smallest optimal colouring.

    Node 0 keeps colour 0 (flipping every colour preserves frustration), and
    the remaining ``2^(n-1)`` colourings are visited in Gray-code order with
    an O(degree) update per flip.
    """
    if g.is_weighted:
        raise ValueError("use brute_force_weighted for weighted graphs")
    if g.n > cap:
        raise OracleRefused(f"n={g.n} exceeds the oracle cap of {cap}")
    if g.n <= 1:
        return 0, (0,) * g.n
    inc = [[(j, g.edges[e][2]) for j, e in g.incidence[i]] for i in range(g.n)]
    x = [0] * g.n
    count = g.m_neg
    best = count
    optima = [0]
    code = 0
    for bit in gray_flips(g.n - 1):
        v = bit + 1
        xv = x[v]
        delta = 0
        for u, s in inc[v]:
            # an edge is frustrated iff (same colour) != (positive)
            frustrated = (xv == x[u]) != (s > 0)
            delta += -1 if frustrated else 1
        x[v] = 1 - xv
        code ^= 1 << v
        count += delta
        if count < best:
            best = count
            optima = [code]
        elif count == best:
            optima.append(code)
    # lexicographic order on (x_0, x_1, ...) is bit-reversed integer order
    best_code = min(optima, key=lambda c: format(c, f"0{g.n}b")[::-1])
    return best, tuple((best_code >> i) & 1 for i in range(g.n))


def _all_colourings(n: int, k: int, fix_first: bool) -> np.ndarray:
    free = n - 1 if fix_first else n
    total = k ** free
    idx = np.arange(total, dtype=np.int64)
    cols = np.zeros((total, n), dtype=np.int8)
    start = 1 if fix_first else 0
    for t in range(free):
        # node ``start + t`` is the most significant digit first, so rows are lexicographic
        cols[:, start + t] = (idx // k ** (free - 1 - t)) % k
    return cols


def brute_force_multicolour(g: SignedGraph, k: int, cap: int = DEFAULT_MULTI_CAP) -> tuple[int, Colouring]:
    """Minimum frustration over all ``k^n`` colourings with ``k`` colours."""
    if g.is_weighted:
        raise ValueError("multi-colour oracle needs +-1 signs")
    if k < 1:
        raise ValueError(f"need at least one colour, got k={k}")
    if k ** g.n > cap:
        raise OracleRefused(f"{k}^{g.n} colourings exceed the cap of {cap}")
    if g.n == 0:
        return 0, ()
    # colour permutations preserve frustration, so node 0 can take colour 0
    cols = _all_colourings(g.n, k, fix_first=True)
    count = np.zeros(cols.shape[0], dtype=np.int64)
    for i, j, s in g.edges:
        same = cols[:, i] == cols[:, j]
        count += (same != (s > 0))
    best = int(np.argmin(count))
    return int(count[best]), tuple(int(c) for c in cols[best])


def brute_force_weighted(g: SignedGraph, cap: int = DEFAULT_CAP) -> tuple[float, Colouring]:
    """Minimum over two-colourings of ``sum (1-w)/2 + w (x_i + x_j - 2 x_i x_j)``."""
    if g.n > cap:
        raise OracleRefused(f"n={g.n} exceeds the oracle cap of {cap}")
    if g.n == 0:
        return 0.0, ()
    cols = _all_colourings(g.n, 2, fix_first=True).astype(float)
    total = np.zeros(cols.shape[0])
    w = g.edge_weights
    for e, (i, j, _) in enumerate(g.edges):
        xi, xj = cols[:, i], cols[:, j]
        total += (1 - w[e]) / 2 + w[e] * (xi + xj - 2 * xi * xj)
    best = int(np.argmin(total))
    return float(total[best]), tuple(int(c) for c in cols[best])


def check_optimum(g: SignedGraph, value, colouring, k: int = 2) -> bool:
    """True when ``colouring`` attains ``value`` on ``g``."""
    return abs(frustration_count(g, colouring, k).count - value) < 1e-9
