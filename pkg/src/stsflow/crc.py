"""Completely regular codes in block graphs of Steiner triple systems."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .designs import SteinerTripleSystem, blocks_inside, find_resolution, find_subsystems
from .spectra import BlockGraph, block_graph_eigenvalues, distance_partition, is_eigenvector


class NotCompletelyRegular(ValueError):
    def __init__(self, vertex: int, layer: int, what: str):
        self.vertex = vertex
        self.layer = layer
        super().__init__(f"not completely regular at vertex {vertex}, layer {layer} ({what})")


@dataclass
class CrcReport:
    rho: int
    alphas: list[int]
    betas: list[int]
    gammas: list[int]
    eigenvalues: list[int]
    irrational_factor: list[int] = field(default_factory=list)

    @property
    def intersection_array(self) -> tuple[list[int], list[int]]:
        return self.betas[:-1], self.gammas[1:]

    def to_json(self) -> dict:
        return {"rho": self.rho, "alphas": self.alphas, "betas": self.betas,
                "gammas": self.gammas, "eigenvalues": self.eigenvalues}


def _poly_mul_linear(p: list[int], root: int) -> list[int]:
    # p * (x - root), coefficients highest degree first
    out = p + [0]
    for i in range(len(p)):
        out[i + 1] -= root * p[i]
    return out


def tridiagonal_charpoly(alphas, betas, gammas) -> list[int]:
    """Characteristic polynomial of the intersection matrix (highest degree first).

    Continuant recurrence ``p_i = (x - a_i) p_{i-1} - b_{i-1} c_i p_{i-2}``.
    """
    prev, cur = [1], _poly_mul_linear([1], alphas[0])
    for i in range(1, len(alphas)):
        nxt = _poly_mul_linear(cur, alphas[i])
        c = betas[i - 1] * gammas[i]
        tail = [0, 0] + prev
        nxt = [a - c * b for a, b in zip(nxt, tail)]
        prev, cur = cur, nxt
    return cur


def poly_eval(p: Sequence[int], x: int) -> int:
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def _deflate(p: list[int], root: int) -> list[int]:
    out = [p[0]]
    for c in p[1:-1]:
        out.append(c + root * out[-1])
    return out


def integer_roots(p: list[int], bound: int) -> tuple[list[int], list[int]]:
    """Integer roots in ``[-bound, bound]`` with multiplicity, and the leftover factor."""
    roots = []
    for x in range(bound, -bound - 1, -1):
        while len(p) > 1 and poly_eval(p, x) == 0:
            roots.append(x)
            p = _deflate(p, x)
    return roots, (p if len(p) > 1 else [])


def check_crc(graph: BlockGraph, code: Iterable[int]) -> CrcReport:
    """Verify complete regularity of ``code`` exactly; raise :class:`NotCompletelyRegular`."""
    layers, rho = distance_partition(graph, code)
    where = {}
    for i, layer in enumerate(layers):
        for x in layer:
            where[x] = i
    alphas, betas, gammas = [], [], []
    for i, layer in enumerate(layers):
        profile = None
        for x in layer:
            cnt = Counter(where[y] for y in graph.neighbors[x])
            prof = (cnt.get(i - 1, 0), cnt.get(i, 0), cnt.get(i + 1, 0))
            if profile is None:
                profile = prof
            elif prof != profile:
                raise NotCompletelyRegular(x, i, f"profile {prof} != {profile}")
        gammas.append(profile[0])
        alphas.append(profile[1])
        betas.append(profile[2])
    k = graph.valency
    assert all(a + b + c == k for a, b, c in zip(alphas, betas, gammas))
    assert gammas[0] == 0 and betas[-1] == 0
    poly = tridiagonal_charpoly(alphas, betas, gammas)
    roots, rest = integer_roots(poly, k)
    report = CrcReport(rho, alphas, betas, gammas, sorted(roots, reverse=True), rest)
    if rho == 1:
        assert alphas[0] - gammas[1] in roots
    return report


def lloyd_check(graph: BlockGraph, report: CrcReport) -> bool:
    """All intersection-matrix eigenvalues are eigenvalues of the block graph."""
    spec = block_graph_eigenvalues(graph.order)
    allowed = {spec.theta0, spec.theta1, spec.theta2}
    return not report.irrational_factor and set(report.eigenvalues) <= allowed


def is_one_design(sts: SteinerTripleSystem, code: Iterable[int]) -> int | None:
    """``lambda`` if every point lies in exactly lambda blocks of ``code``."""
    counts = Counter(p for t in code for p in sts.blocks[t])
    lam = counts.get(1, 0)
    if all(counts.get(p, 0) == lam for p in range(1, sts.n + 1)):
        return lam
    return None


def two_valued_vector(graph: BlockGraph, code: Iterable[int], report: CrcReport) -> list[int]:
    """``beta0`` on the code, ``-gamma1`` off it; an eigenvector for ``alpha0 - gamma1``."""
    if report.rho != 1:
        raise ValueError("two-valued vectors need covering radius 1")
    code = set(code)
    v = [report.betas[0] if t in code else -report.gammas[1] for t in range(graph.b)]
    assert is_eigenvector(graph, v, report.alphas[0] - report.gammas[1])
    return v


# --- constructions ------------------------------------------------------------------

def construction_1(sts: SteinerTripleSystem, point: int) -> list[int]:
    """Point pencil."""
    return sts.pencil(point)


def construction_2(sts: SteinerTripleSystem, subsystem: Sequence[int] | None = None) -> list[int]:
    """Blocks of a subsystem of order (n-1)/2."""
    m = (sts.n - 1) // 2
    if subsystem is None:
        subs = find_subsystems(sts, m)
        if not subs:
            raise ValueError(f"no subsystem of order {m}")
        subsystem = subs[0]
    if len(subsystem) != m:
        raise ValueError(f"subsystem must have {m} points")
    code = blocks_inside(sts, subsystem)
    if len(code) != m * (m - 1) // 6:
        raise ValueError("point set does not carry a subsystem")
    return code


def construction_3(sts: SteinerTripleSystem, point: int, subsystem: Sequence[int] | None = None) -> list[int]:
    """Pencil of ``point`` together with an order-(n-1)/2 subsystem avoiding it."""
    m = (sts.n - 1) // 2
    if subsystem is None:
        subs = [s for s in find_subsystems(sts, m) if point not in s]
        if not subs:
            raise ValueError(f"no subsystem of order {m} avoiding point {point}")
        subsystem = subs[0]
    if point in subsystem:
        raise ValueError("the point must not lie in the subsystem")
    return sorted(set(construction_1(sts, point)) | set(construction_2(sts, subsystem)))


def find_one_subdesign(sts: SteinerTripleSystem, lam: int) -> list[int] | None:
    """Block subset with every point in exactly ``lam`` blocks (backtracking)."""
    if lam < 1 or lam >= sts.replication or (sts.n * lam) % 3:
        return None
    if lam == 1:
        res = find_resolution(sts)
        if res is not None:
            return sorted(res.classes[0])
    by_point = sts.point_block_lists()
    need = [0] + [lam] * sts.n
    avail = [0] + [len(by_point[p]) for p in range(1, sts.n + 1)]
    chosen: list[int] = []

    def rec(t):
        if t == sts.b:
            return all(x == 0 for x in need[1:])
        blk = sts.blocks[t]
        if all(need[p] > 0 for p in blk):
            for p in blk:
                need[p] -= 1
                avail[p] -= 1
            chosen.append(t)
            if all(need[p] <= avail[p] for p in blk) and rec(t + 1):
                return True
            chosen.pop()
            for p in blk:
                need[p] += 1
                avail[p] += 1
        for p in blk:
            avail[p] -= 1
        ok = all(need[p] <= avail[p] for p in blk) and rec(t + 1)
        for p in blk:
            avail[p] += 1
        return ok

    return list(chosen) if rec(0) else None


def construction_4(sts: SteinerTripleSystem, subdesign: Sequence[int] | None = None) -> list[int]:
    """A 1-subdesign, supplied or found with the smallest feasible lambda."""
    if subdesign is None:
        for lam in range(1, sts.replication):
            subdesign = find_one_subdesign(sts, lam)
            if subdesign is not None:
                break
        else:
            raise ValueError("no proper 1-subdesign found")
    if is_one_design(sts, subdesign) is None:
        raise ValueError("block set is not a 1-design")
    return sorted(subdesign)


def construction_5(sts: SteinerTripleSystem, subsystem: Sequence[int]) -> list[int]:
    """Blocks of a subsystem of order less than (n-1)/2."""
    m = len(subsystem)
    if m >= (sts.n - 1) // 2:
        raise ValueError("subsystem order must be below (n-1)/2")
    code = blocks_inside(sts, subsystem)
    if m < 3 or len(code) != m * (m - 1) // 6:
        raise ValueError("point set does not carry a subsystem")
    return code


def construction(sts: SteinerTripleSystem, kind: int, **params) -> list[int]:
    builders = {1: construction_1, 2: construction_2, 3: construction_3, 4: construction_4, 5: construction_5}
    if kind not in builders:
        raise ValueError(f"unknown construction {kind}")
    return builders[kind](sts, **params)


def classify_code(sts: SteinerTripleSystem, code: Iterable[int]) -> list[str]:
    """Which of constructions 1-3 produce exactly this block set (``C1``, ``C2``, ``C3``)."""
    code = set(code)
    tags = []
    blocks = [sts.blocks[t] for t in code]
    m = (sts.n - 1) // 2
    pts = Counter(p for blk in blocks for p in blk)
    for p in range(1, sts.n + 1):
        if code == set(sts.pencil(p)):
            tags.append("C1")
            break
    cover = set(pts)
    if len(cover) == m and len(code) == m * (m - 1) // 6 and set(blocks_inside(sts, cover)) == code:
        tags.append("C2")
    for p in range(1, sts.n + 1):
        pencil = set(sts.pencil(p))
        if not pencil <= code:
            continue
        rest = code - pencil
        rp = {q for t in rest for q in sts.blocks[t]}
        if (len(rp) == m and p not in rp and len(rest) == m * (m - 1) // 6
                and set(blocks_inside(sts, rp)) == rest):
            tags.append("C3")
            break
    return tags


def expected_count(n: int, r: int) -> int:
    """Number of codes from constructions 1-3 for an STS(n) of binary rank ``r``."""
    if n % 6 not in (1, 3):
        raise ValueError(f"no STS of order {n}")
    return n + (2 ** (n - r) - 1) * (n + 3) // 2


# --- enumeration -----------------------------------------------------------------------

@dataclass
class Bipartition:
    side: tuple[int, ...]
    beta0: int
    gamma1: int
    tags: list[str] = field(default_factory=list)
    complement_tags: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"code": list(self.side), "beta0": self.beta0, "gamma1": self.gamma1,
                "tags": self.tags, "complement_tags": self.complement_tags}


@dataclass
class EnumerationResult:
    theta: int
    partitions: list[Bipartition]
    complete: bool
    nodes: int

    def tag_tally(self) -> dict:
        """Partitions with a Construction 1-3 side, and the number of such sides."""
        parts = sum(1 for p in self.partitions if p.tags or p.complement_tags)
        sides = sum(bool(p.tags) + bool(p.complement_tags) for p in self.partitions)
        return {"partitions": parts, "sides": sides}


def enumerate_equitable_bipartitions(graph: BlockGraph, theta: int, *, budget: float | None = None,
                                     budget_nodes: int | None = None,
                                     sts: SteinerTripleSystem | None = None) -> EnumerationResult:
    """All 2-cell equitable partitions with non-principal quotient eigenvalue ``theta``.

    A cell ``C`` with ``alpha0`` neighbours inside for its members and ``gamma1``
    neighbours in ``C`` for outsiders has quotient eigenvalue ``alpha0 - gamma1``,
    so ``beta0 + gamma1 = valency - theta``. Vertex 0 is forced into ``C`` so each
    unordered partition appears once; the reported side is the lexicographically
    smaller of ``C`` and its complement. Vertices are coloured one at a time with
    unit propagation on each vertex's remaining-degree window.

    ``budget`` (seconds) and ``budget_nodes`` cap the search; when either runs
    out the partial result comes back with ``complete=False``.
    """
    if graph.b > 40:
        raise ValueError("enumeration is limited to graphs on at most 40 vertices")
    deadline = None if budget is None else time.monotonic() + budget
    b, k = graph.b, graph.valency
    total = k - theta
    found: list[Bipartition] = []
    nodes = [0]
    complete = True
    for beta0 in range(1, total):
        gamma1 = total - beta0
        if (b * gamma1) % total:
            continue
        size = b * gamma1 // total
        if not 0 < size < b:
            continue
        inner = k - beta0  # neighbours in C of a member of C
        try:
            for side in _two_colourings(graph, size, inner, gamma1, nodes, budget_nodes, deadline):
                members = set(side)
                comp = tuple(x for x in range(b) if x not in members)
                rep = min(side, comp)
                bp = Bipartition(rep, beta0, gamma1)
                if rep != side:
                    bp.beta0, bp.gamma1 = gamma1, beta0
                if sts is not None:
                    bp.tags = classify_code(sts, rep)
                    bp.complement_tags = classify_code(sts, comp if rep == side else side)
                found.append(bp)
        except _Budget:
            complete = False
            break
    found.sort(key=lambda p: p.side)
    return EnumerationResult(theta, found, complete, nodes[0])


class _Budget(Exception):
    pass


def _two_colourings(graph: BlockGraph, size: int, inner: int, outer: int, nodes, budget, deadline):
    """Yield every set C of ``size`` vertices containing vertex 0 such that members
    have ``inner`` neighbours in C and non-members have ``outer``."""
    b = graph.b
    nbrs = graph.neighbors
    colour = [-1] * b
    in_c = [0] * b       # neighbours coloured 1
    free = [len(nb) for nb in nbrs]
    count = [0, 0]
    trail: list[int] = []

    def need(x):
        return inner if colour[x] == 1 else outer

    def set_colour(x, c):
        colour[x] = c
        count[c] += 1
        trail.append(x)
        for y in nbrs[x]:
            free[y] -= 1
            if c:
                in_c[y] += 1

    def undo(mark):
        while len(trail) > mark:
            x = trail.pop()
            c = colour[x]
            colour[x] = -1
            count[c] -= 1
            for y in nbrs[x]:
                free[y] += 1
                if c:
                    in_c[y] -= 1

    def consistent(x):
        if colour[x] >= 0:
            r = need(x)
            return in_c[x] <= r <= in_c[x] + free[x]
        lo, hi = min(inner, outer), max(inner, outer)
        return in_c[x] <= hi and in_c[x] + free[x] >= lo

    def propagate(start):
        """Force colours implied by saturated windows; False on contradiction."""
        queue = list(start)
        while queue:
            x = queue.pop()
            if count[1] > size or count[0] > b - size:
                return False
            for y in (x, *nbrs[x]):
                if not consistent(y):
                    return False
                if colour[y] < 0:
                    # y's own colour is forced when only one requirement fits
                    fits = [c for c, r in ((1, inner), (0, outer)) if in_c[y] <= r <= in_c[y] + free[y]]
                    if len(fits) == 1:
                        set_colour(y, fits[0])
                        queue.append(y)
                    continue
                r = need(y)
                if free[y] and in_c[y] == r:
                    for z in nbrs[y]:
                        if colour[z] < 0:
                            set_colour(z, 0)
                            queue.append(z)
                elif free[y] and in_c[y] + free[y] == r:
                    for z in nbrs[y]:
                        if colour[z] < 0:
                            set_colour(z, 1)
                            queue.append(z)
        return count[1] <= size and count[0] <= b - size

    def pick():
        best, key = None, None
        for x in range(b):
            if colour[x] < 0:
                # prefer vertices adjacent to many coloured ones
                kx = (free[x], x)
                if key is None or kx < key:
                    best, key = x, kx
        return best

    def rec():
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise _Budget
        if deadline is not None and nodes[0] % 256 == 0 and time.monotonic() > deadline:
            raise _Budget
        x = pick()
        if x is None:
            if count[1] == size and all(in_c[y] == need(y) for y in range(b)):
                yield tuple(y for y in range(b) if colour[y] == 1)
            return
        for c in (1, 0):
            mark = len(trail)
            set_colour(x, c)
            if propagate([x]):
                yield from rec()
            undo(mark)

    set_colour(0, 1)
    if propagate([0]):
        yield from rec()
    undo(0)
