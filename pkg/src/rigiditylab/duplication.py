"""The duplication construction B_S = f_S^{-1}(A) and reductions between copies.

``f_S`` is the term ``Dup(S, c)``: it sends 2x to x, and 2x+1 to x when x is
in S and to the fixed non-member c otherwise. Everything here is checked on
finite windows; no statement about the infinite objects is made.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .funcdsl import (
    ID,
    Add,
    Compose,
    Const,
    DivFloor,
    Dup,
    FuncTerm,
    Mul,
    Piecewise,
    Sub,
    compose,
    evaluate,
)
from .oracle import DuplicationError, Duplicated, Oracle
from .paramsets import (
    EVENS,
    PeriodicSet,
    _periodic_count_below,
    complement,
    count_below,
    finite,
    is_subset,
    odd_image,
    residues,
    union,
)

__all__ = [
    "ReductionVerdict",
    "InclusionReport",
    "Fiber",
    "ReductionPreconditionError",
    "dup_set",
    "verify_m_equivalence",
    "fiber",
    "induced_autoreductions",
    "verify_one_reduction",
    "construct_subset_reduction",
    "almost_inclusion_from_reduction",
    "rank_term",
    "nth_term",
]

OK = "Ok"
INJECTIVITY = "InjectivityViolation"
EQUIVALENCE = "EquivalenceViolation"

SUBSET_ON_WINDOW = "SSubsetStarT_OnWindow"
VIOLATION_FOUND = "ViolationFound"
NOT_IDENTITY = "AutoreductionNotIdentity"
PRECONDITION_FAILED = "PreconditionFailed"


class ReductionPreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionVerdict:
    status: str
    checked_bound: int
    x: int | None = None
    y: int | None = None
    z: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == OK

    def __bool__(self) -> bool:
        return self.ok

    def witness(self):
        if self.status == INJECTIVITY:
            return [self.x, self.y]
        if self.status == EQUIVALENCE:
            return self.z
        return None

    def to_json(self) -> dict:
        return {"status": self.status, "checked_bound": self.checked_bound, "witness": self.witness()}


@dataclass(frozen=True)
class InclusionReport:
    n0: int
    verified_range: tuple[int, int]
    s_members_checked: int
    violations: tuple[int, ...]
    conclusion: str
    detail: str | None = None
    nonidentity_at: int | None = None

    @property
    def ok(self) -> bool:
        return self.conclusion == SUBSET_ON_WINDOW

    def to_json(self) -> dict:
        return {
            "n0": self.n0,
            "verified_range": list(self.verified_range),
            "s_members_checked": self.s_members_checked,
            "violations": list(self.violations),
            "conclusion": self.conclusion,
            "detail": self.detail,
            "nonidentity_at": self.nonidentity_at,
        }


# construction ------------------------------------------------------------------


def dup_set(s: PeriodicSet, c: int, a: Oracle) -> Duplicated:
    return Duplicated(s, c, a)


def _bits(o: Oracle, idx: list[int] | np.ndarray) -> np.ndarray:
    arr = np.asarray(idx, dtype=object)
    if arr.size and max(arr) >= 2**62:
        return np.array([o.query(int(i)) for i in arr], dtype=np.uint8)
    return o.bits_at(np.asarray(idx, dtype=np.int64))


def verify_m_equivalence(
    a: Oracle, s: PeriodicSet, c: int, bound: int, b: Oracle | None = None
) -> ReductionVerdict:
    """Check A <=_m B via x -> 2x and B <=_m A via f_S on [0, bound).

    ``b`` defaults to B_S itself; pass another oracle to test a candidate.
    A violation reports the least index of B at which either map fails.
    """
    if b is None:
        b = dup_set(s, c, a)
    if bound <= 0:
        return ReductionVerdict(OK, 0)
    z = np.arange(bound, dtype=np.int64)
    bad = []
    # B -> A through f_S
    m2 = np.flatnonzero(b.bits_at(z) != a.bits_at(_dup_image(s, c, z)))
    if m2.size:
        bad.append(int(m2[0]))
    # A -> B through x -> 2x
    m1 = np.flatnonzero(a.bits_at(z) != b.bits_at(2 * z))
    if m1.size:
        bad.append(2 * int(m1[0]))
    if bad:
        return ReductionVerdict(EQUIVALENCE, bound, z=min(bad))
    return ReductionVerdict(OK, bound)


def _dup_image(s: PeriodicSet, c: int, z: np.ndarray) -> np.ndarray:
    q = z >> 1
    keep = ((z & 1) == 0) | s.contains_array(q)
    return np.where(keep, q, np.int64(c))


@dataclass(frozen=True)
class Fiber:
    """Preimage of x under Dup(s, c)."""

    s: PeriodicSet
    c: int
    x: int
    points: tuple[int, ...] | None = field(default=None)

    @property
    def lazy(self) -> bool:
        return self.points is None

    @property
    def infinite(self) -> bool:
        return self.lazy and not complement(self.s).is_finite

    def __iter__(self) -> Iterator[int]:
        if self.points is not None:
            return iter(self.points)
        return self._enumerate()

    def _enumerate(self) -> Iterator[int]:
        c = self.c
        extra = [2 * c, 2 * c + 1] if c in self.s else [2 * c]
        odd = (2 * y + 1 for y in complement(self.s).elements())
        # both streams are increasing; 2c+1 may also be produced by odd
        last = -1
        for z in heapq.merge(extra, odd):
            if z != last:
                yield z
                last = z

    def take(self, n: int) -> list[int]:
        return list(itertools.islice(iter(self), n))

    def __contains__(self, z: int) -> bool:
        q, r = divmod(z, 2)
        if r == 0 or q in self.s:
            return q == self.x
        return self.c == self.x

    def __len__(self) -> int:
        if self.points is not None:
            return len(self.points)
        if self.infinite:
            raise OverflowError("fiber is infinite")
        return sum(1 for _ in self)

    def to_json(self) -> dict:
        if self.points is not None:
            return {"x": self.x, "points": list(self.points)}
        return {"x": self.x, "lazy": True, "infinite": self.infinite, "first": self.take(10)}


def fiber(s: PeriodicSet, c: int, x: int) -> Fiber:
    if x == c:
        return Fiber(s, c, x, None)
    pts = (2 * x, 2 * x + 1) if x in s else (2 * x,)
    return Fiber(s, c, x, pts)


def induced_autoreductions(
    h: FuncTerm, s: PeriodicSet, t: PeriodicSet, c_t: int
) -> tuple[FuncTerm, FuncTerm]:
    """k0 = f_T(h(2x)); k1 = f_T(h(2x+1)) on s, identity off s."""
    f_t = Dup(t, c_t)
    k0 = Compose(f_t, Compose(h, Mul(2)))
    k1 = Piecewise(s, Compose(f_t, Compose(h, Compose(Add(1), Mul(2)))), ID)
    return k0, k1


def verify_one_reduction(h: FuncTerm, src: Oracle, tgt: Oracle, bound: int) -> ReductionVerdict:
    """Injectivity of h and src(z) = tgt(h(z)) for every z < bound.

    The earliest failing index wins; at equal index injectivity is reported.
    """
    images = [evaluate(h, z) for z in range(bound)]
    first_seen: dict[int, int] = {}
    collision = None
    for z, y in enumerate(images):
        if y in first_seen:
            collision = (first_seen[y], z)
            break
        first_seen[y] = z
    stop = collision[1] + 1 if collision else bound
    mism = np.flatnonzero(src.bits(stop) != _bits(tgt, images[:stop]))
    if mism.size and (collision is None or mism[0] < collision[1]):
        return ReductionVerdict(EQUIVALENCE, bound, z=int(mism[0]))
    if collision:
        return ReductionVerdict(INJECTIVITY, bound, x=collision[0], y=collision[1])
    return ReductionVerdict(OK, bound)


# explicit 1-reductions ---------------------------------------------------------


def _affine(offset: int, mul: int, div: int) -> FuncTerm:
    """x -> (x // div) * mul + offset, with truncation only where the result is >= 0."""
    parts: list[FuncTerm] = []
    if offset > 0:
        parts.append(Add(offset))
    elif offset < 0:
        parts.append(Sub(-offset))
    if mul != 1:
        parts.append(Mul(mul))
    if div != 1:
        parts.append(DivFloor(div))
    return compose(*parts) if parts else ID


def _dispatch(
    small: dict[int, int], modulus: int, by_class: dict[int, FuncTerm]
) -> FuncTerm:
    """Table for the keys of ``small``, then a piece per residue class mod modulus."""
    groups: dict[FuncTerm, list[int]] = {}
    for j in range(modulus):
        groups.setdefault(by_class[j], []).append(j)
    pieces = list(groups.items())
    out = pieces[-1][0]
    for term, cls in reversed(pieces[:-1]):
        out = Piecewise(residues(modulus, cls), term, out)
    vals: dict[int, list[int]] = {}
    for x, v in small.items():
        vals.setdefault(v, []).append(x)
    for v in sorted(vals, reverse=True):
        out = Piecewise(finite(vals[v]), Const(v), out)
    return out


def rank_term(s: PeriodicSet) -> FuncTerm:
    """Term computing x -> |{y in s : y < x}|."""
    L, R = s.period, s.residues
    T = s.threshold
    small = {x: count_below(s, x) for x in range(T)}
    base = len(s.added) - len(s.removed)
    by_class = {}
    for j in range(L):
        off = base + sum(1 for res in R if res < j)
        by_class[j] = _affine(off, len(R), L) if R else Const(off)
    return _dispatch(small, L, by_class)


def nth_term(s: PeriodicSet) -> FuncTerm:
    """Term computing n -> the n-th element of the infinite set s."""
    if s.is_finite:
        from .paramsets import FiniteSetError

        raise FiniteSetError(f"nth_term needs an infinite set, got {s}")
    L, R = s.period, s.residues
    r = len(R)
    T = s.threshold
    head = [x for x in range(T) if x in s]
    N = len(head)
    d = _periodic_count_below(s, T) - N
    by_class = {}
    for j in range(r):
        q, m = divmod(j + d, r)
        by_class[j] = _affine(q * L + R[m], L, r)
    return _dispatch(dict(enumerate(head)), r, by_class)


def construct_subset_reduction(s: PeriodicSet, t: PeriodicSet) -> FuncTerm:
    """An injective h with B_s <=_1 B_t via h, for s ⊆ t with co-infinite t.

    Even positions and positions 2x+1 with x in s are fixed. The n-th
    element x of the complement of s has 2x+1 sent to 2y+1, y the n-th
    element of the complement of s ∪ t; both sides read the constant c.
    """
    if not is_subset(s, t):
        raise ReductionPreconditionError(f"{s} is not a subset of {t}")
    rest = complement(union(s, t))
    if rest.is_finite:
        raise ReductionPreconditionError(f"complement of {union(s, t)} is finite")
    if s == t:
        return ID
    moved = compose(Add(1), Mul(2), nth_term(rest), rank_term(complement(s)), DivFloor(2))
    return Piecewise(EVENS, ID, Piecewise(odd_image(s), ID, moved))


# almost inclusion from a reduction, on a window ----------------------------------


def almost_inclusion_from_reduction(
    h: FuncTerm,
    s: PeriodicSet,
    t: PeriodicSet,
    a: Oracle,
    c_s: int,
    c_t: int,
    n0: int,
    bound: int,
) -> InclusionReport:
    """Run the fiber argument for s ⊆* t on [n0, bound).

    Requires h verified as a 1-reduction B_s -> B_t on [0, 2*bound + 2) and
    both induced autoreductions equal to the identity on [n0, bound).
    """
    rng = (n0, bound)

    def stop(conclusion: str, detail: str, at: int | None = None) -> InclusionReport:
        return InclusionReport(n0, rng, 0, (), conclusion, detail, at)

    try:
        bs = dup_set(s, c_s, a)
        bt = dup_set(t, c_t, a)
    except DuplicationError as e:
        return stop(PRECONDITION_FAILED, str(e))
    v = verify_one_reduction(h, bs, bt, 2 * bound + 2)
    if not v.ok:
        return stop(PRECONDITION_FAILED, f"h is not a 1-reduction on the window: {v.status} {v.witness()}")

    k0, k1 = induced_autoreductions(h, s, t, c_t)
    for x in range(n0, bound):
        if evaluate(k0, x) != x or evaluate(k1, x) != x:
            return stop(NOT_IDENTITY, f"induced autoreduction moves {x}", x)

    checked = 0
    violations = []
    for x in range(n0, bound):
        if x not in s or x == c_t:
            continue
        checked += 1
        images = {evaluate(h, 2 * x), evaluate(h, 2 * x + 1)}
        fib = fiber(t, c_t, x)
        # two distinct h-images inside the fiber force |fiber| = 2, i.e. x in t
        forced = len(images) == 2 and all(z in fib for z in images)
        if not (forced and len(fib) == 2 and x in t):
            violations.append(x)
    if violations:
        return InclusionReport(n0, rng, checked, tuple(violations), VIOLATION_FOUND)
    return InclusionReport(n0, rng, checked, (), SUBSET_ON_WINDOW)
