"""Block graphs, Johnson graphs and exact eigenvector checks.

Nothing here touches floating point: vectors hold ints or Fractions and every
eigenvector claim is verified by computing ``A v`` exactly.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple, Sequence

import numpy as np

from . import exact
from .designs import SteinerTripleSystem


@dataclass(frozen=True)
class BlockGraph:
    """Block intersection graph of an STS; vertex ``t`` is block ``sts.blocks[t]``."""

    order: int
    rows: tuple[int, ...]
    neighbors: tuple[tuple[int, ...], ...]

    @property
    def b(self) -> int:
        return len(self.rows)

    @property
    def valency(self) -> int:
        return len(self.neighbors[0]) if self.neighbors else 0

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.b, self.b), dtype=np.int64)
        for t, nbrs in enumerate(self.neighbors):
            a[t, list(nbrs)] = 1
        return a

    def apply(self, v: Sequence) -> list:
        """``A v`` computed exactly."""
        if len(v) != self.b:
            raise ValueError(f"vector of length {len(v)} for a graph on {self.b} vertices")
        return [sum((v[s] for s in nbrs), 0) for nbrs in self.neighbors]


def block_graph(sts: SteinerTripleSystem) -> BlockGraph:
    masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in sts.blocks]
    rows = []
    neighbors = []
    for t, m in enumerate(masks):
        nbrs = tuple(s for s, m2 in enumerate(masks) if s != t and m & m2)
        neighbors.append(nbrs)
        rows.append(sum(1 << s for s in nbrs))
    graph = BlockGraph(sts.n, tuple(rows), tuple(neighbors))
    assert all(len(nb) == 3 * (sts.n - 3) // 2 for nb in neighbors)
    return graph


def srg_parameters(graph: BlockGraph) -> tuple[int, int, int, int] | None:
    """``(v, k, lambda, mu)`` if the graph is strongly regular, else ``None``."""
    k = graph.valency
    if any(len(nb) != k for nb in graph.neighbors):
        return None
    lam = mu = None
    for x, y in itertools.combinations(range(graph.b), 2):
        common = bin(graph.rows[x] & graph.rows[y]).count("1")
        if graph.rows[x] >> y & 1:
            if lam is None:
                lam = common
            elif lam != common:
                return None
        else:
            if mu is None:
                mu = common
            elif mu != common:
                return None
    return graph.b, k, lam, mu


def incidence_matrix(sts: SteinerTripleSystem) -> np.ndarray:
    """Point-by-block 0/1 matrix; row ``i`` is point ``i + 1``."""
    w = np.zeros((sts.n, sts.b), dtype=np.int64)
    for t, blk in enumerate(sts.blocks):
        for p in blk:
            w[p - 1, t] = 1
    return w


def johnson_incidence_matrix(n: int, k: int) -> np.ndarray:
    subsets = k_subsets(n, k)
    w = np.zeros((n, len(subsets)), dtype=np.int64)
    for t, sub in enumerate(subsets):
        for p in sub:
            w[p - 1, t] = 1
    return w


# --- eigenvalues ---------------------------------------------------------------

def johnson_eigenvalue(n: int, k: int, i: int) -> int:
    """``theta_i(J(n, k)) = (k - i)(n - k - i) - i``."""
    if not 0 <= i <= k <= n:
        raise ValueError(f"need 0 <= i <= k <= n, got n={n}, k={k}, i={i}")
    return (k - i) * (n - k - i) - i


class BlockGraphSpectrum(NamedTuple):
    theta0: int
    theta1: int
    theta2: int
    degenerate: bool


def block_graph_eigenvalues(n: int) -> BlockGraphSpectrum:
    """Distinct eigenvalues of the block graph of any STS(n).

    For n = 7 the block graph is K7 and only ``theta0 = 6`` and ``-1`` occur;
    the result is flagged degenerate and eigenvalue-indexed queries refuse it.
    """
    if n < 7 or n % 6 not in (1, 3):
        raise ValueError(f"no block graph eigenvalues for order {n}")
    return BlockGraphSpectrum(3 * (n - 3) // 2, (n - 1) // 2 - 4, -3, n == 7)


def eigenvalue_by_index(n: int, i: int) -> int:
    spec = block_graph_eigenvalues(n)
    if spec.degenerate and i > 0:
        raise ValueError("the block graph of STS(7) is K7; theta_1/theta_2 are not defined")
    return spec[i]


def is_eigenvector(graph: BlockGraph, v: Sequence, theta) -> bool:
    """Exact check of ``A v = theta v`` for a nonzero ``v``."""
    if len(v) != graph.b:
        raise ValueError(f"vector of length {len(v)} for a graph on {graph.b} vertices")
    if not any(v):
        return False
    return all(av == theta * x for av, x in zip(graph.apply(v), v))


# --- first eigenspace: lift and restriction --------------------------------------

@lru_cache(maxsize=16)
def k_subsets(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All k-subsets of 1..n in lexicographic order (vertex order of J(n, k))."""
    return tuple(itertools.combinations(range(1, n + 1), k))


@lru_cache(maxsize=16)
def _subset_index(n: int, k: int) -> dict:
    return {s: t for t, s in enumerate(k_subsets(n, k))}


def subset_index(n: int, k: int, subset) -> int:
    return _subset_index(n, k)[tuple(sorted(subset))]


def _check_zero_sum(u: Sequence) -> None:
    if sum(Fraction(x) for x in u) != 0:
        raise ValueError("point vector must sum to zero")


def lift(u: Sequence, target) -> list[Fraction]:
    """``W^T u``: entry at a block (or k-subset) is the sum of ``u`` over its points.

    ``target`` is a :class:`SteinerTripleSystem` or a pair ``(n, k)`` for J(n, k).
    ``u[i - 1]`` is the value at point ``i``.
    """
    u = [Fraction(x) for x in u]
    _check_zero_sum(u)
    if isinstance(target, SteinerTripleSystem):
        if len(u) != target.n:
            raise ValueError(f"point vector of length {len(u)} for an STS({target.n})")
        return [u[a - 1] + u[b - 1] + u[c - 1] for a, b, c in target.blocks]
    n, k = target
    if len(u) != n:
        raise ValueError(f"point vector of length {len(u)} for J({n},{k})")
    return [sum((u[p - 1] for p in sub), Fraction(0)) for sub in k_subsets(n, k)]


def restrict(v: Sequence, sts: SteinerTripleSystem) -> list:
    """Keep the entries of a J(n, 3) vector that sit on blocks of ``sts``."""
    if len(v) != comb(sts.n, 3):
        raise ValueError(f"expected a vector on the {comb(sts.n, 3)} triples of 1..{sts.n}")
    idx = _subset_index(sts.n, 3)
    return [v[idx[blk]] for blk in sts.blocks]


def johnson_neighbor_sum(n: int, k: int, v: Sequence, t: int):
    sub = k_subsets(n, k)[t]
    idx = _subset_index(n, k)
    inside = set(sub)
    total = 0
    for out in sub:
        rest = [p for p in sub if p != out]
        for new in range(1, n + 1):
            if new not in inside:
                total += v[idx[tuple(sorted(rest + [new]))]]
    return total


def is_johnson_eigenvector(n: int, k: int, v: Sequence, theta, *, full_limit: int = 14,
                           sample: int = 1000, seed: int = 0) -> bool:
    """Check ``A v = theta v`` on J(n, k).

    For ``n <= full_limit`` every vertex is checked; above it a deterministic
    sample of ``sample`` vertices is checked.
    """
    total = comb(n, k)
    if len(v) != total:
        raise ValueError(f"expected {total} entries")
    if not any(v):
        return False
    if n <= full_limit or total <= sample:
        vertices = range(total)
    else:
        vertices = random.Random(seed).sample(range(total), sample)
    return all(johnson_neighbor_sum(n, k, v, t) == theta * v[t] for t in vertices)


def is_first_eigenvector_johnson(n: int, k: int, v: Sequence, **kw) -> bool:
    """Algebraic test ``v = W^T u`` with ``u`` zero-sum, plus neighbour-sum checks.

    If ``v = W^T u`` and ``sum(u) = 0`` then ``(W v)_p = C(n-2, k-1) u_p``, so ``u``
    is recovered from ``v`` and the identity is checked entrywise.
    """
    if not 1 <= k < n - 1:
        raise ValueError("need 1 <= k < n - 1")
    v = [Fraction(x) for x in v]
    point_sums = [Fraction(0)] * n
    for val, sub in zip(v, k_subsets(n, k)):
        for p in sub:
            point_sums[p - 1] += val
    scale = comb(n - 2, k - 1)
    u = [x / scale for x in point_sums]
    if sum(u) != 0 or lift(u, (n, k)) != v:
        return False
    return is_johnson_eigenvector(n, k, v, johnson_eigenvalue(n, k, 1), **kw)


# --- kernels and distance partitions --------------------------------------------------

def null_space_basis(w) -> list[list[Fraction]]:
    """Exact rational basis of ``{v : W v = 0}``."""
    w = np.asarray(w)
    return exact.nullspace(w.tolist(), w.shape[1])


def distance_partition(graph: BlockGraph, code) -> tuple[list[list[int]], int]:
    """BFS layers ``C_0 = C, C_1, ..., C_rho`` and the covering radius ``rho``."""
    code = sorted(set(code))
    if not code:
        raise ValueError("code must be nonempty")
    if len(code) >= graph.b:
        raise ValueError("code must be a proper subset of the vertices")
    dist = [-1] * graph.b
    queue = deque()
    for x in code:
        dist[x] = 0
        queue.append(x)
    while queue:
        x = queue.popleft()
        for y in graph.neighbors[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    if min(dist) < 0:
        raise ValueError("graph is disconnected from the code")
    rho = max(dist)
    layers = [[] for _ in range(rho + 1)]
    for x, d in enumerate(dist):
        layers[d].append(x)
    return layers, rho


# --- serialization ---------------------------------------------------------------------

def vector_to_json(v: Sequence) -> list[str]:
    return [exact.format_rational(x) for x in v]


def vector_from_json(items: Sequence) -> list[Fraction]:
    return [exact.parse_rational(x) for x in items]


def dumps_vector(v: Sequence) -> str:
    return json.dumps(vector_to_json(v))


def loads_vector(text: str) -> list[Fraction]:
    return vector_from_json(json.loads(text))


def matrix_to_json(m) -> list[list[int]]:
    return [[int(x) for x in row] for row in np.asarray(m)]
