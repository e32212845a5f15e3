"""Seeded random signed graphs (Erdos-Renyi and Barabasi-Albert)."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .graph import SignedGraph


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one random instance.

    ``model`` is ``"er"`` or ``"ba"``. ER graphs take either a density
    ``rho`` (independent Bernoulli trial per node pair) or an exact edge
    count ``m``. BA graphs take either an exact edge count ``m`` or the
    classic ``attach`` parameter (edges added per new node).
    """

    model: str
    n: int
    rho: float | None = None
    m: int | None = None
    attach: int | None = None
    neg_frac: float = 0.5
    seed: int = 0
    weighted: bool = False

    def __post_init__(self):
        if self.model not in ("er", "ba"):
            raise ValueError(f"unknown generator model {self.model!r}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if not 0.0 <= self.neg_frac <= 1.0:
            raise ValueError(f"negative fraction {self.neg_frac} outside [0, 1]")
        if self.rho is not None and not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"density {self.rho} outside [0, 1]")
        max_m = self.n * (self.n - 1) // 2
        if self.m is not None and not 0 <= self.m <= max_m:
            raise ValueError(f"m={self.m} impossible for n={self.n} (max {max_m})")
        given = [p is not None for p in (self.rho, self.m, self.attach)]
        if self.model == "er" and (self.attach is not None or sum(given) != 1):
            raise ValueError("ER needs exactly one of rho or m")
        if self.model == "ba":
            if self.rho is not None or sum(given) != 1:
                raise ValueError("BA needs exactly one of m or attach")
            if self.attach is not None and not 1 <= self.attach < self.n:
                raise ValueError(f"BA attachment {self.attach} must be in [1, n)")

    def as_dict(self) -> dict:
        return asdict(self)


def _streams(seed: int):
    topo, signs, weights = np.random.SeedSequence(seed).spawn(3)
    return np.random.default_rng(topo), np.random.default_rng(signs), np.random.default_rng(weights)


def _er_pairs(n, rng, rho=None, m=None):
    iu, ju = np.triu_indices(n, k=1)
    if m is None:
        keep = rng.random(iu.size) < rho
        return list(zip(iu[keep].tolist(), ju[keep].tolist()))
    pick = np.sort(rng.choice(iu.size, size=m, replace=False))
    return list(zip(iu[pick].tolist(), ju[pick].tolist()))


def ba_schedule(n: int, m: int) -> tuple[int, list[int]]:
    """Seed-clique size and per-step attachment counts giving exactly ``m`` edges.

    New node ``t`` (for ``t = c0 .. n-1``) attaches to ``steps[t - c0]``
    existing nodes. The smallest clique size for which the counts fit is
    used; the first steps take one extra edge when ``m`` does not divide
    evenly.
    """
    if n <= 1:
        if m:
            raise ValueError(f"m={m} impossible for n={n}")
        return n, []
    for c0 in range(2, n + 1):
        rest = m - c0 * (c0 - 1) // 2
        if rest < 0:
            break
        steps = n - c0
        if steps == 0:
            if rest == 0:
                return c0, []
            continue
        base, extra = divmod(rest, steps)
        if base + (extra > 0) <= c0:
            return c0, [base + 1] * extra + [base] * (steps - extra)
    raise ValueError(f"no attachment schedule reaches m={m} with n={n}")


def _ba_pairs(n, rng, m=None, attach=None):
    if attach is not None:
        c0, steps = attach + 1, [attach] * (n - attach - 1)
    else:
        c0, steps = ba_schedule(n, m)
    pairs = [(i, j) for i in range(c0) for j in range(i + 1, c0)]
    deg = np.zeros(n)
    deg[:c0] = c0 - 1
    for t, a in zip(range(c0, n), steps):
        if a == 0:
            continue
        w = deg[:t]
        p = w / w.sum() if w.sum() > 0 else None
        targets = rng.choice(t, size=a, replace=False, p=p)
        for u in sorted(targets.tolist()):
            pairs.append((u, t))
            deg[u] += 1
        deg[t] += a
    return sorted(pairs)


def topology(spec: GenSpec) -> list[tuple[int, int]]:
    """Unsigned edge list drawn from the topology stream of ``spec.seed``."""
    rng, _, _ = _streams(spec.seed)
    if spec.model == "er":
        return _er_pairs(spec.n, rng, rho=spec.rho, m=spec.m)
    return _ba_pairs(spec.n, rng, m=spec.m, attach=spec.attach)


def negative_count(m: int, neg_frac: float) -> int:
    # round half up; Python's round() is banker's rounding
    return int(math.floor(m * neg_frac + 0.5))


def generate(spec: GenSpec) -> SignedGraph:
    """Draw the random signed graph described by ``spec``.

    Exactly ``round(m * neg_frac)`` edges are negative, chosen by shuffling
    the edge list and negating a prefix. Topology, signs and weights come
    from independent child streams of the seed, so changing ``neg_frac``
    leaves the unsigned graph untouched. Weighted instances get magnitudes
    uniform on (0, 1] with the drawn signs.
    """
    pairs = topology(spec)
    _, sign_rng, weight_rng = _streams(spec.seed)
    m = len(pairs)
    order = sign_rng.permutation(m)
    signs = np.ones(m, dtype=int)
    signs[order[: negative_count(m, spec.neg_frac)]] = -1
    if not spec.weighted:
        return SignedGraph(spec.n, tuple((i, j, int(s)) for (i, j), s in zip(pairs, signs)))
    mags = 1.0 - weight_rng.random(m)
    ws = tuple(float(s * a) for s, a in zip(signs, mags))
    return SignedGraph(spec.n, tuple((i, j, int(s)) for (i, j), s in zip(pairs, signs)), ws)


def random_graph(n: int, rho: float, neg_frac: float, seed: int) -> SignedGraph:
    """Shorthand for an ER graph with Bernoulli density ``rho``."""
    return generate(GenSpec("er", n, rho=rho, neg_frac=neg_frac, seed=seed))
