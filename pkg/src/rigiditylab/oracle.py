"""Points of Cantor space behind a membership-query interface.

All oracles are immutable and every query is a pure function of the oracle
value and the index. ``bits_at`` is the vectorized form used by window scans;
it expects an int64 index array and must agree with ``query`` pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .paramsets import PeriodicSet, complement

__all__ = [
    "Oracle",
    "SeededRandom",
    "FromSet",
    "PrefixPatch",
    "Duplicated",
    "Complement",
    "DuplicationError",
    "NoZeroBelowBound",
    "OracleSyntaxError",
    "query",
    "find_zero",
    "prefix",
    "parse_oracle",
    "complement_oracle",
]


class DuplicationError(ValueError):
    """The duplication constant c is a member of the base oracle."""

    def __init__(self, c: int):
        self.c = c
        super().__init__(f"duplication constant c={c} is in the base oracle (needs A(c) = 0)")


class NoZeroBelowBound(ValueError):
    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"oracle is all ones on [0, {bound})")


class OracleSyntaxError(ValueError):
    pass


class Oracle:
    def query(self, x: int) -> int:
        raise NotImplementedError

    def bits_at(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return np.fromiter((self.query(int(i)) for i in idx), dtype=np.uint8, count=idx.size)

    def bits(self, n: int, start: int = 0) -> np.ndarray:
        return self.bits_at(np.arange(start, start + n, dtype=np.int64))

    def prefix(self, n: int) -> str:
        return "".join("1" if b else "0" for b in self.bits(n))

    def __getitem__(self, x: int) -> int:
        return self.query(x)


def _fold_seed(seed: int, x: int) -> tuple[int, int]:
    """Reduce an index of any size to (seed', x mod 2**64)."""
    hi = x >> 64
    while hi:
        seed = _kernels.mix64(seed ^ _kernels.mix64((hi & _kernels.MASK64) + _kernels.GAMMA))
        hi >>= 64
    return seed, x & _kernels.MASK64


@dataclass(frozen=True)
class SeededRandom(Oracle):
    seed: int

    def __post_init__(self):
        if not 0 <= self.seed <= _kernels.MASK64:
            raise ValueError(f"seed must be a 64-bit natural, got {self.seed}")

    def query(self, x: int) -> int:
        seed, x = _fold_seed(self.seed, x)
        return _kernels.bit_scalar(seed, x)

    def bits_at(self, idx: np.ndarray) -> np.ndarray:
        return _kernels.random_bits(self.seed, np.asarray(idx, dtype=np.int64))

    def __str__(self) -> str:
        return f"random:{self.seed}"


@dataclass(frozen=True)
class FromSet(Oracle):
    s: PeriodicSet

    def query(self, x: int) -> int:
        return int(x in self.s)

    def bits_at(self, idx: np.ndarray) -> np.ndarray:
        return self.s.contains_array(idx).astype(np.uint8)

    def __str__(self) -> str:
        return f"set:{self.s}"


@dataclass(frozen=True)
class PrefixPatch(Oracle):
    """``bits`` on [0, len(bits)), then ``rest``."""

    patch: str
    rest: Oracle

    def __post_init__(self):
        if set(self.patch) - {"0", "1"}:
            raise ValueError(f"patch must be a bit string, got {self.patch!r}")

    def query(self, x: int) -> int:
        if x < len(self.patch):
            return int(self.patch[x])
        return self.rest.query(x)

    def bits_at(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        out = self.rest.bits_at(idx)
        n = len(self.patch)
        if n:
            arr = np.frombuffer(self.patch.encode(), dtype=np.uint8) - ord("0")
            low = idx < n
            out = out.copy()
            out[low] = arr[idx[low]]
        return out

    def __str__(self) -> str:
        return f"prefix:{self.patch}:{self.rest}"


@dataclass(frozen=True)
class Duplicated(Oracle):
    """The preimage of ``base`` under 2x -> x, 2x+1 -> (x if x in s else c)."""

    s: PeriodicSet
    c: int
    base: Oracle

    def __post_init__(self):
        if self.c < 0:
            raise ValueError("c must be a natural")
        if self.base.query(self.c) != 0:
            raise DuplicationError(self.c)

    def image(self, z: int) -> int:
        q, r = divmod(z, 2)
        if r == 0 or q in self.s:
            return q
        return self.c

    def query(self, z: int) -> int:
        return self.base.query(self.image(z))

    def image_array(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        q = idx >> 1
        keep = ((idx & 1) == 0) | self.s.contains_array(q)
        return np.where(keep, q, np.int64(self.c))

    def bits_at(self, idx: np.ndarray) -> np.ndarray:
        return self.base.bits_at(self.image_array(idx))

    def __str__(self) -> str:
        return f"dup:{self.s}:{self.c}:{self.base}"


@dataclass(frozen=True)
class Complement(Oracle):
    base: Oracle

    def query(self, x: int) -> int:
        return 1 - self.base.query(x)

    def bits_at(self, idx: np.ndarray) -> np.ndarray:
        return (1 - self.base.bits_at(idx)).astype(np.uint8)

    def __str__(self) -> str:
        return f"not:{self.base}"


def complement_oracle(a: Oracle) -> Oracle:
    if isinstance(a, FromSet):
        return FromSet(complement(a.s))
    if isinstance(a, Complement):
        return a.base
    return Complement(a)


def query(a: Oracle, x: int) -> int:
    return a.query(x)


def prefix(a: Oracle, n: int) -> str:
    return a.prefix(n)


def find_zero(a: Oracle, bound: int) -> int:
    """Least c < bound with a(c) = 0."""
    step = 4096
    for start in range(0, bound, step):
        chunk = a.bits(min(step, bound - start), start)
        zeros = np.flatnonzero(chunk == 0)
        if zeros.size:
            return start + int(zeros[0])
    raise NoZeroBelowBound(bound)


# text syntax -------------------------------------------------------------------


def parse_oracle(text: str) -> Oracle:
    """Parse ``random:SEED``, ``set:SET``, ``prefix:BITS:ORACLE``,
    ``dup:SET:C:ORACLE`` or ``not:ORACLE``."""
    from .grammar import TermSyntaxError, parse_set

    text = text.strip()
    kind, sep, rest = text.partition(":")
    if not sep:
        raise OracleSyntaxError(f"oracle string needs a 'kind:' prefix, got {text!r}")
    try:
        if kind == "random":
            try:
                return SeededRandom(int(rest))
            except ValueError as e:
                raise OracleSyntaxError(f"bad seed {rest!r}: {e}") from None
        if kind == "set":
            return FromSet(parse_set(rest))
        if kind == "prefix":
            bits, sep, inner = rest.partition(":")
            if not sep:
                raise OracleSyntaxError("prefix oracle needs prefix:BITS:ORACLE")
            return PrefixPatch(bits.strip(), parse_oracle(inner))
        if kind == "dup":
            parts = rest.split(":", 2)
            if len(parts) != 3:
                raise OracleSyntaxError("dup oracle needs dup:SET:C:ORACLE")
            return Duplicated(parse_set(parts[0]), int(parts[1]), parse_oracle(parts[2]))
        if kind == "not":
            return Complement(parse_oracle(rest))
    except TermSyntaxError as e:
        raise OracleSyntaxError(f"in {text!r}: {e}") from None
    raise OracleSyntaxError(f"unknown oracle kind {kind!r}")
