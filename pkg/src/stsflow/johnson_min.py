"""Minimum-norm nowhere-zero integer first eigenvectors of Johnson graphs J(n, k).

A first eigenvector of J(n, k) is ``W^T u`` for a zero-sum point vector ``u``,
so everything here works with ``u``. Its lift norm only depends on the multiset
of values of ``u``: :func:`lift_norm` enumerates k-sub-multisets of the distinct
values instead of all C(n, k) subsets.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence


def gamma(k: int) -> int:
    """Smallest positive integer not dividing ``k``."""
    if k < 1:
        raise ValueError("k must be positive")
    g = 2
    while k % g == 0:
        g += 1
    return g


def j_of(k: int) -> int:
    if k % 2:
        return 2 * k
    g = gamma(k)
    return (g // 2 + 1) * (2 * k + g)


def T_of(k: int) -> Fraction:
    """Threshold ``j^2 + 2kj + 3k - j - j^2/k`` past which the lower bound holds, exact."""
    if k < 2:
        raise ValueError("k must be at least 2")
    j = j_of(k)
    return Fraction(j * j + 2 * k * j + 3 * k - j) - Fraction(j * j, k)


def exceeds_T(n: int, k: int) -> bool:
    return n > T_of(k)


# --- parameter tuples ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ParamTuple:
    """``(a, b, r, s)``: values ``a + r/s`` and ``-b + r/s`` of a point vector."""

    a: int
    b: int
    r: int
    s: int

    def check(self, n: int, k: int) -> None:
        if self.a < 0 or self.b < 1:
            raise ValueError(f"{self}: need a >= 0 and b >= 1")
        if not 0 <= self.r < self.s:
            raise ValueError(f"{self}: need 0 <= r < s")
        if gcd(self.r, self.s) != 1:
            raise ValueError(f"{self}: r and s must be coprime")
        if gcd(n, k) % self.s:
            raise ValueError(f"{self}: s must divide gcd({n}, {k})")

    def objective(self, k: int) -> Fraction:
        f = Fraction(self.r, self.s)
        return max(k * (self.a + f), k * (self.b - f))

    def as_list(self) -> list[int]:
        return [self.a, self.b, self.r, self.s]


def in_B(n: int, k: int, t: ParamTuple) -> bool:
    """True iff ``k(bs - r) / (s(a + b))`` is not an integer."""
    t.check(n, k)
    return (k * (t.b * t.s - t.r)) % (t.s * (t.a + t.b)) != 0


def _fractions(n: int, k: int):
    d = gcd(n, k)
    for s in range(1, d + 1):
        if d % s:
            continue
        for r in range(s):
            if gcd(r, s) == 1:
                yield r, s


def N_of(n: int, k: int) -> tuple[Fraction, list[ParamTuple]]:
    """Minimum of ``max{k(a + r/s), k(b - r/s)}`` over B(n, k) and all minimizers.

    The objective is at least ``k*a`` and ``k*(b - 1)``, so once a value ``best``
    is known only ``a <= best/k`` and ``b <= best/k + 1`` can tie or improve;
    the loops grow until that bound is met, which makes the enumeration complete.
    """
    if n < 2 * k:
        raise ValueError("need n >= 2k")
    best = None
    witnesses: list[ParamTuple] = []
    limit = 1
    while True:
        for r, s in _fractions(n, k):
            for a in range(limit + 1):
                for b in range(1, limit + 2):
                    t = ParamTuple(a, b, r, s)
                    if not in_B(n, k, t):
                        continue
                    val = t.objective(k)
                    if best is None or val < best:
                        best, witnesses = val, [t]
                    elif val == best and t not in witnesses:
                        witnesses.append(t)
        if best is not None and best / k + 1 <= limit:
            break
        limit *= 2
    witnesses = sorted(w for w in witnesses if w.a <= best / k and w.b <= best / k + 1)
    return best, witnesses


# --- norms of lifts ----------------------------------------------------------------

def k_sums(u: Sequence, k: int) -> set[Fraction]:
    """All values of ``W^T u`` (sums over k-subsets of positions)."""
    counts = Counter(Fraction(x) for x in u)
    values = sorted(counts)
    sums = set()
    for combo in itertools.combinations_with_replacement(values, k):
        c = Counter(combo)
        if all(c[x] <= counts[x] for x in c):
            sums.add(sum(combo, Fraction(0)))
    return sums


def lift_norm(u: Sequence, k: int) -> tuple[Fraction, bool]:
    """``(||W^T u||_inf, is_nowhere_zero_integer)`` by multiset enumeration."""
    sums = k_sums(u, k)
    nzi = all(s != 0 and s.denominator == 1 for s in sums)
    return max(abs(s) for s in sums), nzi


def _multiset(*pairs) -> list[Fraction]:
    out = []
    for value, count in pairs:
        if count < 0:
            raise ValueError("negative multiplicity")
        out.extend([Fraction(value)] * count)
    return out


@dataclass
class UpperVector:
    u: list[Fraction]
    norm: int
    tag: str
    claimed: Fraction
    candidates: dict = field(default_factory=dict)


def samecoef_vector(n: int, k: int) -> tuple[list[Fraction], Fraction]:
    d = gcd(n, k)
    u = _multiset((Fraction(1, d), n - 1), (Fraction(-(n - 1), d), 1))
    return u, Fraction(n - k, d)


def oddk_vector(n: int, k: int) -> tuple[list[Fraction], Fraction]:
    if k % 2 == 0:
        raise ValueError("k must be odd")
    if n % 2 == 0:
        return _multiset((1, n // 2), (-1, n // 2)), Fraction(k)
    u = _multiset((k + 1, 1), (-1, (n + k) // 2), (1, (n - k - 2) // 2))
    return u, Fraction(2 * k)


def upbound_vector(n: int, k: int) -> tuple[list[Fraction], Fraction]:
    """Block construction for even k using gamma = smallest non-divisor of k.

    Blocks of gamma positions sum to zero; when gamma does not divide n the last
    ``k + beta + 1`` positions hold one large negative value and ``k + beta``
    copies of ``floor(gamma/2) + 1``.
    """
    if k % 2:
        raise ValueError("k must be even")
    g = gamma(k)
    l = g // 2
    if g % 2:
        block = [(l + 1, l), (-l, l + 1)]
    else:
        block = [(l + 1, l - 1), (1 - l, l + 1)]
    if n % g == 0:
        pairs = [(v, c * (n // g)) for v, c in block]
        return _multiset(*pairs), Fraction((l + 1) * k)
    beta = (n - (k + 1)) % g
    q, rem = divmod(n - (beta + k + 1), g)
    assert rem == 0 and q >= 0
    pairs = [(v, c * q) for v, c in block]
    pairs += [(-(k + beta) * (l + 1), 1), (l + 1, k + beta)]
    return _multiset(*pairs), Fraction((l + 1) * (2 * k + beta - 1))


def upper_vector(n: int, k: int) -> UpperVector:
    """Best of the applicable constructions, with its verified lift norm.

    Each construction is checked to be zero-sum and NZI with true norm at most
    its claimed bound; the one with the smallest true norm is returned.
    """
    if n < 2 * k:
        raise ValueError("need n >= 2k")
    builders = {"samecoef": samecoef_vector}
    if k % 2:
        builders["oddk"] = oddk_vector
    else:
        builders["upbound"] = upbound_vector
    results = {}
    for tag, build in builders.items():
        u, claimed = build(n, k)
        assert len(u) == n and sum(u) == 0, (tag, n, k)
        norm, nzi = lift_norm(u, k)
        if not nzi:
            raise AssertionError(f"{tag} vector for J({n},{k}) is not NZI")
        if norm > claimed:
            raise AssertionError(f"{tag} vector for J({n},{k}) has norm {norm} > {claimed}")
        results[tag] = (u, norm, claimed)
    tag = min(results, key=lambda t: (results[t][1], t))
    u, norm, claimed = results[tag]
    return UpperVector(u, int(norm), tag, claimed,
                       {t: (int(r[1]), r[2]) for t, r in results.items()})


# --- k = 3 closed form -------------------------------------------------------------

def m1_jn3(n: int) -> int:
    """``m(1, J(n, 3))`` for n > 63."""
    if n <= 63:
        raise ValueError("closed form holds only for n > 63")
    if n % 2 == 0:
        return 4
    if n % 9 in (0, 6):
        return 6
    return 7


def jn3_witness(n: int) -> list[Fraction]:
    """Zero-sum point vector whose lift to J(n, 3) attains ``m1_jn3(n) - 1``."""
    if n <= 63:
        raise ValueError("closed form holds only for n > 63")
    if n % 2 == 0:
        u = _multiset((1, n // 2), (-1, n // 2))
    elif n % 9 == 0:
        u = _multiset((Fraction(5, 3), 4 * n // 9), (Fraction(-4, 3), 5 * n // 9))
    elif n % 9 == 6:
        u = _multiset((Fraction(2, 3), 1), (Fraction(5, 3), (4 * n - 6) // 9),
                      (Fraction(-4, 3), (5 * n - 3) // 9))
    else:
        u, _ = oddk_vector(n, 3)
    assert len(u) == n and sum(u) == 0
    norm, nzi = lift_norm(u, 3)
    assert nzi and norm == m1_jn3(n) - 1, (n, norm)
    return u


# --- lower bounds --------------------------------------------------------------------

@dataclass
class BoundReport:
    n: int
    k: int
    gamma: int
    T_k: Fraction
    N_nk: Fraction | None
    witnesses: list[ParamTuple]
    upper: int
    upper_tag: str
    lower: int | None
    exact: int | None
    exact_reasons: list[str]
    closed_form: int | None = None
    notes: list[str] = field(default_factory=list)

    def check(self) -> None:
        if self.lower is not None and self.exact is not None:
            assert self.lower <= self.exact
        if self.exact is not None:
            assert self.exact <= self.upper
        if self.lower is not None:
            assert self.lower <= self.upper

    def to_json(self) -> dict:
        def num(x):
            if x is None:
                return None
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {
            "n": self.n, "k": self.k, "gamma": self.gamma, "T_k": num(self.T_k),
            "N_nk": num(self.N_nk), "witnesses": [w.as_list() for w in self.witnesses],
            "upper": self.upper, "upper_tag": self.upper_tag, "lower": self.lower,
            "exact": self.exact, "exact_reasons": self.exact_reasons,
            "closed_form": self.closed_form, "notes": self.notes,
        }


def shbound_applies(n: int, t: ParamTuple) -> bool:
    """True when ``(bs - r) n / (s(a + b))`` is an integer."""
    return (t.b * t.s - t.r) * n % (t.s * (t.a + t.b)) == 0


def lower_bound(n: int, k: int) -> BoundReport:
    """Lower bound ``N(n, k) + 1`` for n > T(k), with exactness certificates."""
    up = upper_vector(n, k)
    T = T_of(k)
    g = gamma(k)
    report = BoundReport(n, k, g, T, None, [], up.norm + 1, up.tag, None, None, [])
    if k == 3 and n > 63:
        report.closed_form = m1_jn3(n)
        norm, _ = lift_norm(jn3_witness(n), 3)
        if norm + 1 < report.upper:
            report.upper, report.upper_tag = int(norm) + 1, "jn3"
    if n <= T:
        report.notes.append(f"n <= T(k) = {T}; no lower bound claimed")
        return report
    N, wit = N_of(n, k)
    report.N_nk, report.witnesses = N, wit
    report.lower = int(N) + 1 if N.denominator == 1 else None
    if report.lower is None:
        report.notes.append(f"N(n,k) = {N} is not an integer")
        return report
    exact_vals = []
    if any(shbound_applies(n, t) for t in wit):
        report.exact_reasons.append("shbound")
        exact_vals.append(int(N) + 1)
    if n % 2 == 0 and k % 2 == 1:
        report.exact_reasons.append("nkodd")
        exact_vals.append(k + 1)
    if gcd(n, k) == 1 and n % g == 0:
        report.exact_reasons.append("coprime")
        exact_vals.append(k + 1 if g == 2 else (g // 2 + 1) * k + 1)
    if exact_vals:
        assert len(set(exact_vals)) == 1, exact_vals
        report.exact = exact_vals[0]
    if report.closed_form is not None and report.exact is None and report.lower < report.closed_form:
        report.notes.append("lower bound is not tight here")
    report.check()
    return report


# --- bounded brute force -----------------------------------------------------------------

@dataclass
class BruteResult:
    n: int
    k: int
    cap: int
    minimum: int | None
    witness: list[Fraction] | None
    tag: str
    nodes: int = 0


def _feasible(n, k, values, t, counter):
    """Search for a multiset of ``n`` values (ascending order) with zero sum and all
    k-sums in ``[-t, t] \\ {0}``. ``values`` is sorted ascending."""
    m = len(values)
    best = None

    # sums_by_size[j]: set of sums of j-sub-multisets of the chosen multiset
    def rec(i, used, total, sums_by_size, chosen):
        nonlocal best
        counter[0] += 1
        if used == n:
            if total == 0:
                best = list(chosen)
                return True
            return False
        if i == m:
            return False
        left = n - used
        # remaining entries are drawn from values[i:]
        if total + left * values[i] > 0 or total + left * values[-1] < 0:
            return False
        x = values[i]
        for c in range(left, -1, -1):
            if c and k * x != 0 and c >= k and abs(k * x) > t:
                continue
            new = [set(s) for s in sums_by_size]
            ok = True
            if c:
                for size in range(k, 0, -1):
                    acc = set(sums_by_size[size])
                    for j in range(1, min(c, size) + 1):
                        for s in sums_by_size[size - j]:
                            acc.add(s + j * x)
                    new[size] = acc
                for s in new[k]:
                    if s == 0 or abs(s) > t or s.denominator != 1:
                        ok = False
                        break
            if not ok:
                continue
            chosen.extend([x] * c)
            if rec(i + 1, used + c, total + c * x, new, chosen):
                return True
            del chosen[len(chosen) - c:]
        return False

    start = [set() for _ in range(k + 1)]
    start[0] = {Fraction(0)}
    rec(0, 0, Fraction(0), start, [])
    return best


def brute_min(n: int, k: int, cap: int) -> BruteResult:
    """Exact ``m(1, J(n, k))`` among point vectors with entries bounded by ``cap``.

    Entries share one fractional part ``r/s`` with ``s | gcd(n, k)``, so the search
    runs over multisets of values ``c + r/s`` with ``|value| <= cap``, for lift norms
    ``t = 1, 2, ..., k * cap`` (no larger norm is possible under the cap). The first
    feasible ``t`` gives ``t + 1``; the answer is exact within the entry cap only.
    """
    if n < 2 * k:
        raise ValueError("need n >= 2k")
    counter = [0]
    for t in range(1, k * cap + 1):
        for r, s in _fractions(n, k):
            f = Fraction(r, s)
            values = sorted(c + f for c in range(-cap - 1, cap + 1) if abs(c + f) <= cap)
            found = _feasible(n, k, values, t, counter)
            if found is not None:
                found.sort()
                norm, nzi = lift_norm(found, k)
                assert nzi and norm <= t and sum(found) == 0
                return BruteResult(n, k, cap, int(norm) + 1, found, "exact within cap", counter[0])
    return BruteResult(n, k, cap, None, None, "no NZI vector within cap", counter[0])
