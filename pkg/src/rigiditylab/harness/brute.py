"""Exhaustive checkers that share no counting code with the exact engines."""

from __future__ import annotations

import itertools
from typing import Iterable

from .. import _kernels
from ..oracle import Oracle
from ..randomness import AvoidsLocally, ConstraintSet, DyadicRational, Meets, Undetermined

__all__ = ["TooManyCoordinates", "brute_measure", "brute_meets_or_avoids", "MAX_BRUTE_COORDINATES"]

MAX_BRUTE_COORDINATES = 24


class TooManyCoordinates(ValueError):
    def __init__(self, v: int):
        self.v = v
        super().__init__(f"{v} coordinates exceeds the brute-force limit {MAX_BRUTE_COORDINATES}")


def brute_measure(cs: ConstraintSet) -> DyadicRational:
    """Count satisfying assignments over all 2**V bit vectors."""
    coords = sorted({c for p in cs.pairs for c in p})
    v = len(coords)
    if v > MAX_BRUTE_COORDINATES:
        raise TooManyCoordinates(v)
    slot = {c: i for i, c in enumerate(coords)}
    left = [slot[a] for a, _ in cs.pairs]
    right = [slot[b] for _, b in cs.pairs]
    return DyadicRational(_kernels.count_satisfying(v, left, right), v)


def brute_meets_or_avoids(a: Oracle, w: Iterable[str], bound: int):
    """Reference verdict by enumerating every string up to the longest in w."""
    w = set(w)
    longest = max((len(s) for s in w), default=0)
    pre = a.prefix(max(longest, bound) + 1)
    for n in range(longest + 1):
        if any(pre[:n] == s for s in w):
            return Meets(n)
    for n in range(bound + 1):
        sigma = pre[:n]
        extensions = (
            sigma + "".join(tail)
            for m in range(0, max(longest - n, 0) + 1)
            for tail in itertools.product("01", repeat=m)
        )
        if not any(e in w for e in extensions):
            return AvoidsLocally(n)
    return Undetermined(bound)
