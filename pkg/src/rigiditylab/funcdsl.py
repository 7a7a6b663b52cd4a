"""A closed language of total functions on the naturals.

Every term evaluates on every natural input, so anything built from these
constructors is a total computable function. Terms are frozen dataclasses and
compare structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .paramsets import FiniteSetError, PeriodicSet, next_above

__all__ = [
    "FuncTerm",
    "Identity",
    "Const",
    "Add",
    "Sub",
    "Mul",
    "DivFloor",
    "Mod",
    "Piecewise",
    "Compose",
    "NextIn",
    "Dup",
    "ID",
    "evaluate",
    "compose",
    "nonfixed_points",
    "IdentityBeyond",
    "ViolationsPersist",
    "eventually_identity_verdict",
    "bi_immune_refuter",
    "table_term",
]


def _nat(name: str, v: int, least: int = 0) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(f"{name} must be an int, got {type(v).__name__}")
    if v < least:
        raise ValueError(f"{name} must be >= {least}, got {v}")
    return v


class _Term:
    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __str__(self) -> str:
        from .grammar import render_term

        return render_term(self)


@dataclass(frozen=True, repr=False)
class Identity(_Term):
    def __repr__(self) -> str:
        return "Identity()"


@dataclass(frozen=True)
class Const(_Term):
    n: int

    def __post_init__(self):
        _nat("const", self.n)


@dataclass(frozen=True)
class Add(_Term):
    n: int

    def __post_init__(self):
        _nat("add", self.n)


@dataclass(frozen=True)
class Sub(_Term):
    """Truncated subtraction x -> max(x - n, 0)."""

    n: int

    def __post_init__(self):
        _nat("sub", self.n)


@dataclass(frozen=True)
class Mul(_Term):
    n: int

    def __post_init__(self):
        _nat("mul", self.n, 1)


@dataclass(frozen=True)
class DivFloor(_Term):
    d: int

    def __post_init__(self):
        _nat("div", self.d, 1)


@dataclass(frozen=True)
class Mod(_Term):
    m: int

    def __post_init__(self):
        _nat("mod", self.m, 1)


@dataclass(frozen=True)
class Piecewise(_Term):
    guard: PeriodicSet
    then: "FuncTerm"
    else_: "FuncTerm"


@dataclass(frozen=True)
class Compose(_Term):
    """x -> outer(inner(x))."""

    outer: "FuncTerm"
    inner: "FuncTerm"


@dataclass(frozen=True)
class NextIn(_Term):
    s: PeriodicSet

    def __post_init__(self):
        if self.s.is_finite:
            raise FiniteSetError(f"next() needs an infinite set, got {self.s}")


@dataclass(frozen=True)
class Dup(_Term):
    """2x -> x; 2x+1 -> x if x in s, else c."""

    s: PeriodicSet
    c: int

    def __post_init__(self):
        _nat("dup constant", self.c)


FuncTerm = Union[Identity, Const, Add, Sub, Mul, DivFloor, Mod, Piecewise, Compose, NextIn, Dup]

ID = Identity()


def compose(*terms: FuncTerm) -> FuncTerm:
    """compose(f, g, h) computes f(g(h(x)))."""
    if not terms:
        return ID
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = Compose(t, out)
    return out


def evaluate(f: FuncTerm, x: int) -> int:
    if x < 0:
        raise ValueError(f"inputs are naturals, got {x}")
    # No recursion: outer halves of Compose wait on a stack until the inner
    # value is known, so nesting depth is bounded only by memory.
    pending: list[FuncTerm] = []
    while True:
        tp = type(f)
        if tp is Piecewise:
            f = f.then if x in f.guard else f.else_
            continue
        if tp is Compose:
            pending.append(f.outer)
            f = f.inner
            continue
        if tp is Identity:
            pass
        elif tp is Add:
            x = x + f.n
        elif tp is Mul:
            x = x * f.n
        elif tp is Dup:
            q, r = divmod(x, 2)
            x = q if r == 0 or q in f.s else f.c
        elif tp is NextIn:
            x = next_above(f.s, x)
        elif tp is Const:
            x = f.n
        elif tp is Sub:
            x = x - f.n if x > f.n else 0
        elif tp is DivFloor:
            x = x // f.d
        elif tp is Mod:
            x = x % f.m
        else:
            raise TypeError(f"not a term: {f!r}")
        if not pending:
            return x
        f = pending.pop()


def nonfixed_points(f: FuncTerm, bound: int) -> list[int]:
    return [x for x in range(bound) if evaluate(f, x) != x]


@dataclass(frozen=True)
class IdentityBeyond:
    n0: int


@dataclass(frozen=True)
class ViolationsPersist:
    last_violation: int


def eventually_identity_verdict(
    f: FuncTerm, bound: int, slack: int | None = None
) -> IdentityBeyond | ViolationsPersist:
    """Window-relative guess at whether f is eventually the identity.

    Only [0, bound) is inspected. If the last non-fixed point falls within
    ``slack`` of the bound (default bound // 10) the scan is inconclusive and
    ``ViolationsPersist`` is returned.
    """
    if slack is None:
        slack = bound // 10
    last = None
    for x in range(bound - 1, -1, -1):
        if evaluate(f, x) != x:
            last = x
            break
    if last is None:
        return IdentityBeyond(0)
    if last >= bound - slack:
        return ViolationsPersist(last)
    return IdentityBeyond(last + 1)


def bi_immune_refuter(s: PeriodicSet) -> FuncTerm:
    """x -> next element of s above x for x in s, identity elsewhere.

    For any A containing s this is an m-autoreduction of A that moves every
    element of s.
    """
    if s.is_finite:
        raise FiniteSetError(f"refuter needs an infinite set, got {s}")
    return Piecewise(s, NextIn(s), ID)


def table_term(table: dict[int, int], default: FuncTerm = ID) -> FuncTerm:
    """Term agreeing with ``table`` on its keys and with ``default`` elsewhere."""
    from .paramsets import finite

    by_value: dict[int, list[int]] = {}
    for x, y in table.items():
        by_value.setdefault(y, []).append(x)
    out = default
    for y in sorted(by_value, reverse=True):
        out = Piecewise(finite(by_value[y]), Const(y), out)
    return out
