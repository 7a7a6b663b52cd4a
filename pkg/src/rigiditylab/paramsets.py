"""Eventually periodic subsets of the naturals.

A :class:`PeriodicSet` is a union of residue classes modulo a period, with a
finite set of added points and a finite set of removed points. Every instance
is kept in canonical form (minimal period, minimal exception lists), so two
instances represent the same set exactly when they compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "PeriodicSet",
    "AlmostSubsetResult",
    "FiniteSetError",
    "residues",
    "finite",
    "EMPTY",
    "FULL",
    "EVENS",
    "ODDS",
    "membership",
    "odifreddi_family",
    "almost_subset",
    "union",
    "intersection",
    "complement",
    "difference",
    "set_algebra",
    "count_below",
    "nth_element",
    "next_above",
    "is_subset",
    "odd_image",
]

DEFAULT_FAMILY_LIMIT = 64
WITNESS_COUNT = 10


class FiniteSetError(ValueError):
    """An operation that needs an infinite set was handed a finite one."""


def _minimal_period(period: int, res: frozenset[int]) -> int:
    """Least d dividing period such that res is invariant under shift by d."""
    if not res or len(res) == period:
        return 1
    if len(res) > 4096:
        return _minimal_period_kmp(period, res)
    r0 = min(res)
    # any invariant shift maps r0 into res, so differences are the only candidates
    for d in sorted({(r - r0) % period for r in res} - {0}):
        if period % d == 0 and all((r + d) % period in res for r in res):
            return d
    return period


def _minimal_period_kmp(period: int, res: frozenset[int]) -> int:
    w = np.zeros(period, dtype=np.uint8)
    w[list(res)] = 1
    pi = [0] * period
    k = 0
    for i in range(1, period):
        while k and w[i] != w[k]:
            k = pi[k - 1]
        if w[i] == w[k]:
            k += 1
        pi[i] = k
    d = period - pi[-1]
    return d if period % d == 0 else period


def _crt(r1: int, m1: int, r2: int, m2: int) -> int | None:
    """Least r mod lcm(m1, m2) with r = r1 (m1) and r = r2 (m2), or None."""
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    m2g = m2 // g
    k = ((r2 - r1) // g) * pow(m1 // g, -1, m2g) % m2g if m2g > 1 else 0
    return r1 + m1 * k


@dataclass(frozen=True, init=False)
class PeriodicSet:
    period: int
    residues: tuple[int, ...]
    added: tuple[int, ...]
    removed: tuple[int, ...]

    def __init__(
        self,
        period: int,
        residues: Iterable[int] = (),
        added: Iterable[int] = (),
        removed: Iterable[int] = (),
    ) -> None:
        period = int(period)
        if period < 1:
            raise ValueError(f"period must be >= 1, got {period}")
        res = frozenset(int(r) for r in residues)
        bad = [r for r in res if not 0 <= r < period]
        if bad:
            raise ValueError(f"residues {sorted(bad)} outside [0, {period})")
        add = frozenset(int(a) for a in added)
        rem = frozenset(int(r) for r in removed)
        if any(x < 0 for x in add | rem):
            raise ValueError("exception points must be naturals")

        def member(x: int) -> bool:
            return x in add or (x % period in res and x not in rem)

        points = add | rem
        exact = {x for x in points if member(x)}

        d = _minimal_period(period, res) if res else 1
        res_d = frozenset(r % d for r in res)
        object.__setattr__(self, "period", d)
        object.__setattr__(self, "residues", tuple(sorted(res_d)))
        object.__setattr__(
            self, "added", tuple(sorted(x for x in exact if x % d not in res_d))
        )
        object.__setattr__(
            self,
            "removed",
            tuple(sorted(x for x in points - exact if x % d in res_d)),
        )
        object.__setattr__(self, "_residue_set", res_d)
        object.__setattr__(self, "_added_set", frozenset(self.added))
        object.__setattr__(self, "_removed_set", frozenset(self.removed))

    # membership -------------------------------------------------------

    def __contains__(self, x: int) -> bool:
        x = int(x)
        if x < 0:
            return False
        if x in self._added_set:
            return True
        return x % self.period in self._residue_set and x not in self._removed_set

    def contains_array(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized membership for a non-negative int64 array."""
        xs = np.asarray(xs, dtype=np.int64)
        if xs.size == 0:
            return np.zeros(0, dtype=bool)
        top = int(xs.max())
        if self.period <= top:
            mods = xs % self.period
        else:
            mods = xs
        res = np.array([r for r in self.residues if r <= top], dtype=np.int64)
        out = np.isin(mods, res)
        if self.removed:
            out &= ~np.isin(xs, np.array([r for r in self.removed if r <= top] or [-1], dtype=np.int64))
        if self.added:
            out |= np.isin(xs, np.array([a for a in self.added if a <= top] or [-1], dtype=np.int64))
        return out

    # structure --------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return not self.residues

    @property
    def is_cofinite(self) -> bool:
        return len(self.residues) == self.period

    @property
    def threshold(self) -> int:
        """One past the largest exception point (0 if there are none)."""
        pts = self.added + self.removed
        return max(pts) + 1 if pts else 0

    def elements(self, start: int = 0) -> Iterator[int]:
        """Yield the elements >= start in increasing order."""
        x = start - 1
        while True:
            try:
                x = next_above(self, x)
            except FiniteSetError:
                return
            yield x

    def below(self, bound: int) -> list[int]:
        return [x for x in range(bound) if x in self]

    def __str__(self) -> str:
        s = f"residues({self.period};{{{','.join(map(str, self.residues))}}})"
        if self.added:
            s += "+{" + ",".join(map(str, self.added)) + "}"
        if self.removed:
            s += "-{" + ",".join(map(str, self.removed)) + "}"
        return s

    def __repr__(self) -> str:
        return f"PeriodicSet({self})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PeriodicSet):
            return NotImplemented
        return (
            self.period == other.period
            and self.residues == other.residues
            and self.added == other.added
            and self.removed == other.removed
        )

    def __hash__(self) -> int:
        return hash((self.period, self.residues, self.added, self.removed))

    def __or__(self, other: PeriodicSet) -> PeriodicSet:
        return union(self, other)

    def __and__(self, other: PeriodicSet) -> PeriodicSet:
        return intersection(self, other)

    def __invert__(self) -> PeriodicSet:
        return complement(self)

    def __sub__(self, other: PeriodicSet) -> PeriodicSet:
        return difference(self, other)


def residues(period: int, rs: Iterable[int] = (), *, added=(), removed=()) -> PeriodicSet:
    return PeriodicSet(period, rs, added, removed)


def finite(points: Iterable[int]) -> PeriodicSet:
    return PeriodicSet(1, (), points)


EMPTY = PeriodicSet(1)
FULL = PeriodicSet(1, (0,))
EVENS = PeriodicSet(2, (0,))
ODDS = PeriodicSet(2, (1,))


def membership(s: PeriodicSet, x: int) -> int:
    return int(x in s)


def odifreddi_family(i: int, limit: int = DEFAULT_FAMILY_LIMIT) -> PeriodicSet:
    """The set {2^i (2n+1) : n >= 0}, i.e. x = 2^i mod 2^(i+1)."""
    if i < 0 or i > limit:
        raise ValueError(f"family index {i} outside [0, {limit}]")
    return PeriodicSet(2 ** (i + 1), (2**i,))


# algebra -------------------------------------------------------------------


def _combine(s: PeriodicSet, t: PeriodicSet, op) -> PeriodicSet:
    L = math.lcm(s.period, t.period)
    ts = np.zeros(s.period, dtype=bool)
    ts[list(s.residues)] = True
    tt = np.zeros(t.period, dtype=bool)
    tt[list(t.residues)] = True
    r = np.arange(L, dtype=np.int64)
    res = np.flatnonzero(op(ts[r % s.period], tt[r % t.period])).tolist()
    add, rem = _exceptions(s, t, op)
    return PeriodicSet(L, res, add, rem)


def _exceptions(s: PeriodicSet, t: PeriodicSet, op) -> tuple[list[int], list[int]]:
    pts = set(s.added + s.removed + t.added + t.removed)
    keep = [x for x in pts if op(x in s, x in t)]
    return keep, sorted(pts.difference(keep))


def union(s: PeriodicSet, t: PeriodicSet) -> PeriodicSet:
    return _combine(s, t, np.logical_or)


def intersection(s: PeriodicSet, t: PeriodicSet) -> PeriodicSet:
    # compatible class pairs meet in exactly one class mod lcm
    L = math.lcm(s.period, t.period)
    res = []
    for rs in s.residues:
        for rt in t.residues:
            r = _crt(rs, s.period, rt, t.period)
            if r is not None:
                res.append(r)
    add, rem = _exceptions(s, t, np.logical_and)
    return PeriodicSet(L, res, add, rem)


def difference(s: PeriodicSet, t: PeriodicSet) -> PeriodicSet:
    return _combine(s, t, lambda a, b: np.logical_and(a, np.logical_not(b)))


def complement(s: PeriodicSet) -> PeriodicSet:
    return PeriodicSet(
        s.period,
        (r for r in range(s.period) if r not in s._residue_set),
        s.removed,
        s.added,
    )


def set_algebra(s: PeriodicSet, t: PeriodicSet | None, op: str) -> PeriodicSet:
    if op == "union":
        return union(s, t)
    if op == "intersection":
        return intersection(s, t)
    if op == "complement":
        return complement(s)
    if op == "difference":
        return difference(s, t)
    raise ValueError(f"unknown set operation {op!r}")


def is_subset(s: PeriodicSet, t: PeriodicSet) -> bool:
    """Exact inclusion s ⊆ t."""
    return difference(s, t) == EMPTY


def odd_image(s: PeriodicSet) -> PeriodicSet:
    """The set {2x+1 : x in s}."""
    return PeriodicSet(
        2 * s.period,
        (2 * r + 1 for r in s.residues),
        (2 * a + 1 for a in s.added),
        (2 * d + 1 for d in s.removed),
    )


# almost inclusion ----------------------------------------------------------


@dataclass(frozen=True)
class AlmostSubsetResult:
    holds: bool
    modulus: int
    witness_class: int | None = None
    witnesses: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "modulus": self.modulus,
            "witness_class": self.witness_class,
            "witnesses": list(self.witnesses),
        }


def almost_subset(s: PeriodicSet, t: PeriodicSet) -> AlmostSubsetResult:
    """Decide whether s \\ t is finite.

    On failure the result carries a residue class mod lcm(periods) in which
    every element beyond the exception threshold lies in s \\ t, together
    with its first few members above that threshold.
    """
    L = math.lcm(s.period, t.period)
    g = math.gcd(s.period, t.period)
    tr = t._residue_set
    for rs in s.residues:
        # classes of t's period that meet rs mod s.period
        for rt in range(rs % g, t.period, g):
            if rt not in tr:
                r = _crt(rs, s.period, rt, t.period)
                thr = max(s.threshold, t.threshold)
                first = r if thr <= r else r + -(-(thr - r) // L) * L
                wit = tuple(first + j * L for j in range(WITNESS_COUNT))
                return AlmostSubsetResult(False, L, r, wit)
    return AlmostSubsetResult(True, L)


# enumeration ---------------------------------------------------------------


def _periodic_count_below(s: PeriodicSet, x: int) -> int:
    q, r = divmod(x, s.period)
    return q * len(s.residues) + sum(1 for res in s.residues if res < r)


def count_below(s: PeriodicSet, x: int) -> int:
    """|{y in s : y < x}|."""
    if x <= 0:
        return 0
    n = _periodic_count_below(s, x)
    n += sum(1 for a in s.added if a < x)
    n -= sum(1 for d in s.removed if d < x)
    return n


def next_above(s: PeriodicSet, x: int) -> int:
    """Least element of s strictly greater than x."""
    best = min((a for a in s.added if a > x), default=None)
    if s.residues:
        y = max(x + 1, 0)
        q, r = divmod(y, s.period)
        idx = _bisect_left(s.residues, r)
        # removed points are finite, so this terminates
        while True:
            if idx == len(s.residues):
                q, idx = q + 1, 0
            cand = q * s.period + s.residues[idx]
            if best is not None and cand > best:
                break
            if cand not in s._removed_set:
                best = cand
                break
            idx += 1
    if best is None:
        raise FiniteSetError(f"{s} has no element above {x}")
    return best


def _bisect_left(seq: Sequence[int], v: int) -> int:
    lo, hi = 0, len(seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if seq[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


def nth_element(s: PeriodicSet, n: int) -> int:
    """The n-th element (0-indexed) of the infinite set s."""
    if s.is_finite:
        raise FiniteSetError(f"nth_element needs an infinite set, got {s}")
    if n < 0:
        raise ValueError("n must be non-negative")
    # smallest x with count_below(s, x + 1) > n
    hi = 1
    while count_below(s, hi) <= n:
        hi *= 2
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if count_below(s, mid + 1) > n:
            hi = mid
        else:
            lo = mid + 1
    return lo
