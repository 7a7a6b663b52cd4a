"""Martin-Löf tests for Fix(k) with exact measures.

For a term k that moves infinitely many points, the levels

    U_n = {A : A(x_i) = A(k(x_i)) for i < n}

along a fresh sequence x_0 < x_1 < ... have measure exactly 2**-n. Levels are
:class:`ConstraintSet` values; their measure is 2**-(V - C) where V counts
coordinates and C counts connected components of the pair graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import _kernels
from .funcdsl import FuncTerm, evaluate
from .oracle import Oracle, SeededRandom

__all__ = [
    "ConstraintSet",
    "DyadicRational",
    "NotEnoughNonFixedPoints",
    "EmptyExperiment",
    "CoverageResult",
    "Meets",
    "AvoidsLocally",
    "Undetermined",
    "DEFAULT_SEARCH_CAP",
    "fresh_sequence",
    "test_level",
    "exact_measure",
    "level_contains",
    "fix_violation_witness",
    "coverage_experiment",
    "meets_or_avoids",
]

DEFAULT_SEARCH_CAP = 10**6


class NotEnoughNonFixedPoints(ValueError):
    def __init__(self, found: int, needed: int, cap: int):
        self.found = found
        self.needed = needed
        super().__init__(
            f"only {found} of {needed} fresh non-fixed points below {cap}; "
            "k looks eventually the identity at this scale"
        )


class EmptyExperiment(ValueError):
    pass


@dataclass(frozen=True, init=False)
class DyadicRational:
    """numerator / 2**exponent in lowest terms."""

    numerator: int
    exponent: int

    def __init__(self, numerator: int, exponent: int = 0):
        if numerator < 0 or exponent < 0:
            raise ValueError("dyadic rationals here are non-negative")
        if numerator == 0:
            exponent = 0
        else:
            tz = (numerator & -numerator).bit_length() - 1
            k = min(tz, exponent)
            numerator >>= k
            exponent -= k
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exponent", exponent)

    @classmethod
    def from_fraction(cls, f: Fraction) -> DyadicRational:
        d = f.denominator
        if d & (d - 1):
            raise ValueError(f"{f} is not dyadic")
        return cls(f.numerator, d.bit_length() - 1)

    @classmethod
    def power_of_half(cls, n: int) -> DyadicRational:
        return cls(1, n)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __float__(self) -> float:
        return math.ldexp(self.numerator, -self.exponent)

    def to_json(self) -> dict:
        return {"num": self.numerator, "exp": self.exponent}

    @classmethod
    def from_json(cls, d: dict) -> DyadicRational:
        return cls(d["num"], d["exp"])

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.exponent}"


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, a: int) -> int:
        p = self.parent.setdefault(a, a)
        root = a
        while p != root:
            root = p
            p = self.parent[root]
        while a != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


@dataclass(frozen=True, init=False)
class ConstraintSet:
    """A finite conjunction of coordinate equalities A(a) = A(b)."""

    pairs: tuple[tuple[int, int], ...]

    def __init__(self, pairs: Iterable[tuple[int, int]] = ()):
        seen = set()
        out = []
        for a, b in pairs:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"constraint ({a}, {b}) has equal endpoints")
            key = (min(a, b), max(a, b))
            if key not in seen:
                seen.add(key)
                out.append(key)
        object.__setattr__(self, "pairs", tuple(out))

    @property
    def coordinates(self) -> list[int]:
        return sorted({c for p in self.pairs for c in p})

    @property
    def num_coordinates(self) -> int:
        return len(self.coordinates)

    @property
    def num_components(self) -> int:
        uf = _UnionFind()
        for c in self.coordinates:
            uf.find(c)
        merged = sum(uf.union(a, b) for a, b in self.pairs)
        return self.num_coordinates - merged

    def extends(self, other: ConstraintSet) -> bool:
        return self.pairs[: len(other.pairs)] == other.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]

    @classmethod
    def from_json(cls, data: list) -> ConstraintSet:
        return cls((a, b) for a, b in data)


def fresh_sequence(k: FuncTerm, n: int, search_cap: int = DEFAULT_SEARCH_CAP) -> list[int]:
    """Greedy x_0 < x_1 < ... of non-fixed points of k, each above every
    earlier x_i and k(x_i)."""
    xs: list[int] = []
    x = 0
    while len(xs) < n:
        while x < search_cap and evaluate(k, x) == x:
            x += 1
        if x >= search_cap:
            raise NotEnoughNonFixedPoints(len(xs), n, search_cap)
        xs.append(x)
        x = max(x, evaluate(k, x)) + 1
    return xs


def test_level(k: FuncTerm, n: int, search_cap: int = DEFAULT_SEARCH_CAP) -> ConstraintSet:
    return ConstraintSet((x, evaluate(k, x)) for x in fresh_sequence(k, n, search_cap))


test_level.__test__ = False  # not a pytest test


def exact_measure(cs: ConstraintSet) -> DyadicRational:
    """μ of the clopen set cut out by cs: 2**-(V - C)."""
    return DyadicRational(1, cs.num_coordinates - cs.num_components)


def level_contains(cs: ConstraintSet, a: Oracle) -> int:
    return int(all(a.query(p) == a.query(q) for p, q in cs.pairs))


def fix_violation_witness(a: Oracle, k: FuncTerm, bound: int) -> int | None:
    """Least x < bound with a(x) != a(k(x)), if any."""
    if bound <= 0:
        return None
    xs = np.arange(bound, dtype=np.int64)
    ys = [evaluate(k, int(x)) for x in xs]
    if max(ys) < 2**62:
        diff = np.flatnonzero(a.bits_at(xs) != a.bits_at(np.asarray(ys, dtype=np.int64)))
        return int(diff[0]) if diff.size else None
    for x, y in zip(range(bound), ys):
        if a.query(x) != a.query(y):
            return x
    return None


@dataclass(frozen=True)
class CoverageResult:
    term: str
    n: int
    trials: int
    base_seed: int
    inside: int
    target: DyadicRational
    backend: str

    @property
    def fraction(self) -> float:
        return self.inside / self.trials

    @property
    def stderr(self) -> float:
        p = float(self.target)
        return math.sqrt(p * (1 - p) / self.trials)

    def within(self, z: float = 3.0) -> bool:
        return abs(self.fraction - float(self.target)) <= z * self.stderr

    def to_json(self) -> dict:
        return {
            "term": self.term,
            "n": self.n,
            "trials": self.trials,
            "base_seed": self.base_seed,
            "inside": self.inside,
            "fraction": self.fraction,
            "target": self.target.to_json(),
            "stderr": self.stderr,
            "within_3se": self.within(3.0),
        }


def coverage_experiment(
    k: FuncTerm,
    n: int,
    trials: int,
    base_seed: int,
    search_cap: int = DEFAULT_SEARCH_CAP,
) -> CoverageResult:
    """Fraction of seeded random oracles falling in test_level(k, n).

    Trial i uses the oracle SeededRandom(derive_seed(base_seed, i)).
    """
    if trials <= 0:
        raise EmptyExperiment("coverage experiment needs at least one trial")
    cs = test_level(k, n, search_cap)
    target = exact_measure(cs)
    left = [p for p, _ in cs.pairs]
    right = [q for _, q in cs.pairs]
    if max(left + right, default=0) < 2**63:
        seeds = _kernels.derive_seeds(base_seed, trials)
        inside = _kernels.count_agreeing(seeds, left, right)
        backend = _kernels.BACKEND
    else:
        inside = sum(
            level_contains(cs, SeededRandom(_kernels.derive_seed(base_seed, i)))
            for i in range(trials)
        )
        backend = "python"
    return CoverageResult(str(k), n, trials, base_seed, inside, target, backend)


# genericity ----------------------------------------------------------------------


@dataclass(frozen=True)
class Meets:
    n: int


@dataclass(frozen=True)
class AvoidsLocally:
    n: int


@dataclass(frozen=True)
class Undetermined:
    bound: int


def meets_or_avoids(a: Oracle, w: Iterable[str], bound: int) -> Meets | AvoidsLocally | Undetermined:
    """Does a meet the finite string set w, or avoid it at some prefix?

    Meets(n): the least n with a's length-n prefix in w. Otherwise
    AvoidsLocally(n): the least n <= bound such that no member of w extends
    a's length-n prefix.
    """
    w = set(w)
    longest = max((len(s) for s in w), default=-1)
    pre = a.prefix(max(longest, bound, 0) + 1)
    for n in range(longest + 1):
        if pre[:n] in w:
            return Meets(n)
    for n in range(bound + 1):
        sigma = pre[:n]
        if not any(tau.startswith(sigma) for tau in w):
            return AvoidsLocally(n)
    return Undetermined(bound)
