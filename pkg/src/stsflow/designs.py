"""Steiner triple systems: construction, validation, resolutions, subsystems and I/O.

Points are always labelled ``1..n``. Blocks are stored as sorted 3-tuples and
the block list of every constructed system is sorted lexicographically, so
block indices are reproducible across runs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

Block = tuple[int, int, int]


class StsValidationError(ValueError):
    """Raised when a triple list is not a Steiner triple system.

    ``report`` lists every problem found: duplicate triples, pairs that are
    covered zero or several times, and block-count mismatches.
    """

    def __init__(self, report: list[str]):
        self.report = report
        super().__init__("; ".join(report[:8]) + (" ..." if len(report) > 8 else ""))


@dataclass(frozen=True)
class SteinerTripleSystem:
    n: int
    blocks: tuple[Block, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {b: t for t, b in enumerate(self.blocks)})

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def replication(self) -> int:
        return (self.n - 1) // 2

    def index(self, triple: Iterable[int]) -> int:
        """Position of ``triple`` in the block list (KeyError if absent)."""
        return self._index[tuple(sorted(triple))]

    def __contains__(self, triple) -> bool:
        return tuple(sorted(triple)) in self._index

    def third_point(self, x: int, y: int) -> int:
        return self._third[(x, y) if x < y else (y, x)]

    @property
    def _third(self) -> dict:
        cached = self.__dict__.get("_third_map")
        if cached is None:
            cached = {}
            for a, b, c in self.blocks:
                cached[(a, b)] = c
                cached[(a, c)] = b
                cached[(b, c)] = a
            object.__setattr__(self, "_third_map", cached)
        return cached

    def pencil(self, point: int) -> list[int]:
        """Indices of the blocks through ``point``."""
        return [t for t, blk in enumerate(self.blocks) if point in blk]

    def point_block_lists(self) -> list[list[int]]:
        """``lists[p]`` holds the indices of blocks through point ``p`` (index 0 unused)."""
        lists: list[list[int]] = [[] for _ in range(self.n + 1)]
        for t, blk in enumerate(self.blocks):
            for p in blk:
                lists[p].append(t)
        return lists


def _normalize(triples: Iterable[Iterable[int]]) -> list[Block]:
    out = []
    for tr in triples:
        tr = tuple(sorted(int(x) for x in tr))
        if len(tr) != 3:
            raise StsValidationError([f"block {tr} does not have 3 points"])
        out.append(tr)
    return out


def sts_problems(n: int, triples: Iterable[Iterable[int]]) -> list[str]:
    """Every reason why ``triples`` fails to be an STS(n); empty when valid."""
    blocks = _normalize(triples)
    problems = []
    if n % 6 not in (1, 3):
        problems.append(f"order {n} is not 1 or 3 mod 6")
    for blk in blocks:
        if len(set(blk)) != 3:
            problems.append(f"block {blk} has a repeated point")
        if blk[0] < 1 or blk[2] > n:
            problems.append(f"block {blk} has a point outside 1..{n}")
    seen = set()
    for blk in blocks:
        if blk in seen:
            problems.append(f"duplicate triple {blk}")
        seen.add(blk)
    expected = n * (n - 1) // 6
    if len(blocks) != expected:
        problems.append(f"wrong block count {len(blocks)}, expected {expected}")
    cover: dict[tuple[int, int], int] = {}
    for blk in blocks:
        for pair in itertools.combinations(blk, 2):
            cover[pair] = cover.get(pair, 0) + 1
    for pair in itertools.combinations(range(1, n + 1), 2):
        c = cover.get(pair, 0)
        if c == 0:
            problems.append(f"pair {pair} uncovered")
        elif c == 2:
            problems.append(f"pair {pair} covered twice")
        elif c > 2:
            problems.append(f"pair {pair} covered {c} times")
    return problems


def validate_sts(n: int, triples: Iterable[Iterable[int]], *, sort: bool = True) -> SteinerTripleSystem:
    """Return the system built from ``triples`` or raise :class:`StsValidationError`."""
    blocks = _normalize(triples)
    problems = sts_problems(n, blocks)
    if problems:
        raise StsValidationError(problems)
    if sort:
        blocks.sort()
    sts = SteinerTripleSystem(n, tuple(blocks))
    _assert_invariants(sts)
    return sts


def _assert_invariants(sts: SteinerTripleSystem) -> None:
    r = sts.replication
    counts = [0] * (sts.n + 1)
    for blk in sts.blocks:
        for p in blk:
            counts[p] += 1
    assert all(c == r for c in counts[1:]), "replication number violated"
    assert sts.b == sts.n * (sts.n - 1) // 6


# --- constructions ---------------------------------------------------------

def bose(m: int) -> SteinerTripleSystem:
    """Bose construction of an STS(3m) on Z_m x {0,1,2}, m odd.

    Point ``(x, i)`` gets label ``x + i*m + 1``.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError(f"Bose construction needs odd m >= 3, got {m}")
    half = pow(2, -1, m)

    def label(x, i):
        return x + i * m + 1

    triples = [(label(x, 0), label(x, 1), label(x, 2)) for x in range(m)]
    for i in range(3):
        for x, y in itertools.combinations(range(m), 2):
            z = (x + y) * half % m
            triples.append((label(x, i), label(y, i), label(z, (i + 1) % 3)))
    return validate_sts(3 * m, triples)


def hamming_sts(r: int) -> SteinerTripleSystem:
    """Projective STS(2^r - 1): supports of the weight-3 Hamming codewords.

    Point ``a`` is the nonzero binary r-vector whose integer value is ``a``;
    blocks are ``{a, b, a xor b}``.
    """
    if r < 3:
        raise ValueError(f"r must be at least 3, got {r}")
    n = 2 ** r - 1
    triples = {tuple(sorted((a, b, a ^ b))) for a in range(1, n + 1) for b in range(a + 1, n + 1)}
    return validate_sts(n, triples)


def cyclic_sts(n: int, base_blocks: Sequence[Sequence[int]], short_orbit: Sequence[int] | None = None) -> SteinerTripleSystem:
    """Develop base blocks over Z_n (labels shifted to 1..n)."""
    triples = set()
    for base in base_blocks:
        for s in range(n):
            triples.add(tuple(sorted((x + s) % n + 1 for x in base)))
    if short_orbit is not None:
        for s in range(n // 3):
            triples.add(tuple(sorted((x + s) % n + 1 for x in short_orbit)))
    return validate_sts(n, triples)


def fano() -> SteinerTripleSystem:
    return hamming_sts(3)


def affine_plane_9() -> SteinerTripleSystem:
    """AG(2,3): points (x, y) in Z_3^2 labelled 3x + y + 1, lines as blocks."""
    pts = [(x, y) for x in range(3) for y in range(3)]
    lines = set()
    for p, q in itertools.combinations(pts, 2):
        r = ((-p[0] - q[0]) % 3, (-p[1] - q[1]) % 3)
        lines.add(tuple(sorted(3 * a + b + 1 for a, b in (p, q, r))))
    return validate_sts(9, lines)


TauAssignment = Mapping[Block, int]


def tau_constant(sts: SteinerTripleSystem, bit: int) -> dict[Block, int]:
    return {blk: bit for blk in sts.blocks}


def tau_random(sts: SteinerTripleSystem, seed: int) -> dict[Block, int]:
    rng = random.Random(seed)
    return {blk: rng.randint(0, 1) for blk in sts.blocks}


def parse_tau(sts: SteinerTripleSystem, spec: str) -> dict[Block, int]:
    """``zero``, ``one`` or ``seed:N``."""
    if spec == "zero":
        return tau_constant(sts, 0)
    if spec == "one":
        return tau_constant(sts, 1)
    if spec.startswith("seed:"):
        return tau_random(sts, int(spec[5:]))
    raise ValueError(f"unknown tau specification {spec!r}")


def am_quadruple(triple: Sequence[int], tau: int, n: int) -> list[Block]:
    """The four blocks replacing ``triple`` in the doubled system.

    ``tau = 0`` keeps the triples of the set {i, j, k, i+n, j+n, k+n} with an even
    number of barred points (``i+n``), ``tau = 1`` the ones with an odd number.
    Both readings are symmetric in the three base points.
    """
    out = []
    for bars in itertools.product((0, 1), repeat=3):
        if sum(bars) % 2 == tau:
            out.append(tuple(sorted(p + n * bar for p, bar in zip(triple, bars))))
    return out


def assmuss_mattson(base: SteinerTripleSystem, tau: TauAssignment) -> SteinerTripleSystem:
    """Doubling STS(n) -> STS(2n+1); the barred copy of point i is i+n, infinity is 2n+1."""
    if set(tau) != set(base.blocks):
        raise ValueError("tau must be defined on exactly the blocks of the base system")
    n = base.n
    triples = []
    for blk in base.blocks:
        bit = tau[blk]
        if bit not in (0, 1):
            raise ValueError(f"tau value {bit!r} is not 0 or 1")
        triples.extend(am_quadruple(blk, bit, n))
    triples.extend((i, i + n, 2 * n + 1) for i in range(1, n + 1))
    return validate_sts(2 * n + 1, triples)


def random_sts(n: int, seed: int = 0, max_steps: int = 10**7) -> SteinerTripleSystem:
    """Stinson's hill-climbing for a random STS(n)."""
    if n % 6 not in (1, 3):
        raise ValueError(f"no STS of order {n}")
    rng = random.Random(seed)
    target = n * (n - 1) // 6
    # partner[x][y] = z if {x, y, z} is a block
    partner = [dict() for _ in range(n + 1)]
    blocks: set[Block] = set()
    live = [x for x in range(1, n + 1)]
    for _ in range(max_steps):
        if len(blocks) == target:
            break
        x = rng.choice([p for p in live if len(partner[p]) < n - 1])
        free = [y for y in range(1, n + 1) if y != x and y not in partner[x]]
        y, z = rng.sample(free, 2)
        if z in partner[y]:
            w = partner[y][z]
            old = tuple(sorted((w, y, z)))
            blocks.discard(old)
            del partner[w][y], partner[y][w], partner[w][z], partner[z][w], partner[y][z], partner[z][y]
        for a, bb in ((x, y), (x, z), (y, z)):
            c = ({x, y, z} - {a, bb}).pop()
            partner[a][bb] = c
            partner[bb][a] = c
        blocks.add(tuple(sorted((x, y, z))))
    else:
        raise RuntimeError("hill climbing did not converge")
    return validate_sts(n, blocks)


# --- resolutions -------------------------------------------------------------

@dataclass(frozen=True)
class Resolution:
    classes: tuple[tuple[int, ...], ...]

    def check(self, sts: SteinerTripleSystem) -> None:
        size = sts.n // 3
        seen = []
        for cls in self.classes:
            if len(cls) != size:
                raise ValueError(f"parallel class of size {len(cls)}, expected {size}")
            pts = [p for t in cls for p in sts.blocks[t]]
            if len(set(pts)) != sts.n:
                raise ValueError(f"class {cls} is not a partition of the points")
            seen.extend(cls)
        if sorted(seen) != list(range(sts.b)):
            raise ValueError("classes do not partition the blocks")


def find_resolution(sts: SteinerTripleSystem) -> Resolution | None:
    """Complete exact-cover search for a resolution; ``None`` proves there is none.

    The blocks through point 1 seed the classes (one per class), which removes the
    class-permutation symmetry. Open slots are filled most-constrained first.
    """
    n = sts.n
    if n % 6 != 3:
        return None
    nclasses = (n - 1) // 2
    masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in sts.blocks]
    full = sum(1 << p for p in range(1, n + 1))
    by_point = sts.point_block_lists()
    covered = [0] * nclasses
    members: list[list[int]] = [[] for _ in range(nclasses)]
    used = [False] * sts.b
    for c, t in enumerate(by_point[1]):
        covered[c] = masks[t]
        members[c].append(t)
        used[t] = True

    def candidates(c, p):
        return [t for t in by_point[p] if not used[t] and not masks[t] & covered[c]]

    def solve(remaining):
        if remaining == 0:
            return True
        best = None
        for c in range(nclasses):
            open_pts = full & ~covered[c]
            while open_pts:
                low = open_pts & -open_pts
                p = low.bit_length() - 1
                cand = candidates(c, p)
                if best is None or len(cand) < len(best[2]):
                    best = (c, p, cand)
                    if len(cand) <= 1:
                        break
                open_pts ^= low
            if best is not None and len(best[2]) == 0:
                return False
        c, _, cand = best
        for t in cand:
            used[t] = True
            covered[c] |= masks[t]
            members[c].append(t)
            if solve(remaining - 1):
                return True
            members[c].pop()
            covered[c] ^= masks[t]
            used[t] = False
        return False

    if not solve(sts.b - nclasses):
        return None
    res = Resolution(tuple(tuple(sorted(m)) for m in members))
    res.check(sts)
    return res


# --- ranks and subsystems ------------------------------------------------------

def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of integer-bitset rows."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                rank += 1
                break
            row ^= pivots[top]
    return rank


def binary_rank(sts: SteinerTripleSystem) -> int:
    """2-rank of the block-by-point characteristic matrix."""
    return gf2_rank((1 << a) | (1 << b) | (1 << c) for a, b, c in sts.blocks)


def closure(sts: SteinerTripleSystem, points: Iterable[int]) -> frozenset[int]:
    """Smallest point set containing ``points`` and closed under the third-point map."""
    closed = set(points)
    queue = list(closed)
    while queue:
        x = queue.pop()
        for y in list(closed):
            if y == x:
                continue
            z = sts.third_point(x, y)
            if z not in closed:
                closed.add(z)
                queue.append(z)
    return frozenset(closed)


def find_subsystems(sts: SteinerTripleSystem, m: int) -> list[tuple[int, ...]]:
    """All point sets of size ``m`` carrying a subsystem STS(m), sorted."""
    if m >= sts.n or m < 1 or m % 6 not in (1, 3):
        return []
    found: set[frozenset[int]] = set()
    visited: set[frozenset[int]] = set()

    def grow(closed: frozenset[int]):
        for x in range(1, sts.n + 1):
            if x in closed:
                continue
            nxt = closure(sts, closed | {x})
            if len(nxt) > m or nxt in visited:
                continue
            visited.add(nxt)
            if len(nxt) == m:
                found.add(nxt)
            else:
                grow(nxt)

    grow(frozenset())
    return sorted(tuple(sorted(s)) for s in found)


def blocks_inside(sts: SteinerTripleSystem, points: Iterable[int]) -> list[int]:
    pts = set(points)
    return [t for t, blk in enumerate(sts.blocks) if set(blk) <= pts]


# --- text format -----------------------------------------------------------------

class StsFormatError(ValueError):
    pass


def format_sts(sts: SteinerTripleSystem) -> str:
    lines = [f"{sts.n} {sts.b}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in sorted(sts.blocks))
    return "\n".join(lines) + "\n"


def parse_sts(text: str) -> SteinerTripleSystem:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise StsFormatError("empty file")
    header = rows[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise StsFormatError(f"malformed header {rows[0]!r}, expected 'n b'")
    n, b = int(header[0]), int(header[1])
    body = rows[1:]
    if len(body) != b:
        raise StsFormatError(f"header announces {b} triples, found {len(body)}")
    triples = []
    for line in body:
        parts = line.split()
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise StsFormatError(f"malformed triple line {line!r}")
        tr = tuple(int(p) for p in parts)
        if not all(1 <= x <= n for x in tr):
            raise StsFormatError(f"triple {tr} out of range 1..{n}")
        triples.append(tr)
    return validate_sts(n, triples)


def read_sts(path) -> SteinerTripleSystem:
    return parse_sts(Path(path).read_text())


def write_sts(sts: SteinerTripleSystem, path) -> None:
    Path(path).write_text(format_sts(sts))


def load_catalog(name: str) -> SteinerTripleSystem:
    """Bundled systems: ``sts13a``, ``sts13b``, ``sts15_*``."""
    from importlib import resources

    text = resources.files("stsflow.data").joinpath(f"{name}.txt").read_text()
    return parse_sts(text)


def catalog_names() -> list[str]:
    from importlib import resources

    return sorted(p.name[:-4] for p in resources.files("stsflow.data").iterdir() if p.name.endswith(".txt"))


def pasch_count(sts: SteinerTripleSystem) -> int:
    """Number of Pasch configurations (four blocks on six points); an isomorphism invariant."""
    count = 0
    for x in range(1, sts.n + 1):
        through = [blk for blk in sts.blocks if x in blk]
        for b1, b2 in itertools.combinations(through, 2):
            a, b = (p for p in b1 if p != x)
            c, d = (p for p in b2 if p != x)
            count += sts.third_point(a, c) == sts.third_point(b, d)
            count += sts.third_point(a, d) == sts.third_point(b, c)
    # the six block pairs of a Pasch all intersect, each is seen once
    return count // 6
