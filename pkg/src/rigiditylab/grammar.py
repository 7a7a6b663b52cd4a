"""Text syntax for terms and periodic sets.

    term := "id" | "const(" nat ")" | "add(" nat ")" | "sub(" nat ")"
          | "mul(" nat ")" | "div(" nat ")" | "mod(" nat ")"
          | "piecewise(" set "," term "," term ")" | "compose(" term "," term ")"
          | "next(" set ")" | "dup(" set "," nat ")"
    set  := "residues(" nat ";" "{" nat-list "}" ")" [ "+{" nat-list "}" ] [ "-{" nat-list "}" ]

Whitespace is ignored everywhere.
"""

from __future__ import annotations

import re

from .funcdsl import (
    Add,
    Compose,
    Const,
    DivFloor,
    Dup,
    FuncTerm,
    Identity,
    Mod,
    Mul,
    NextIn,
    Piecewise,
    Sub,
)
from .paramsets import PeriodicSet

__all__ = ["TermSyntaxError", "parse_term", "parse_set", "render_term", "render_set"]


class TermSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z]+)|(.))", re.S)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        for m in _TOKEN.finditer(text):
            if m.group(1) is not None:
                self.toks.append(("nat", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.toks.append(("word", m.group(2), m.start(2)))
            elif m.group(3) is not None and not m.group(3).isspace():
                self.toks.append(("sym", m.group(3), m.start(3)))
        self.i = 0

    # token helpers

    def _pos(self) -> int:
        return self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)

    def fail(self, msg: str, pos: int | None = None):
        raise TermSyntaxError(msg, self._pos() if pos is None else pos, self.text)

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def sym(self, s: str) -> None:
        tok = self.peek()
        if tok is None or tok[0] != "sym" or tok[1] != s:
            got = "end of input" if tok is None else repr(tok[1])
            self.fail(f"expected {s!r}, got {got}")
        self.i += 1

    def maybe_sym(self, s: str) -> bool:
        tok = self.peek()
        if tok is not None and tok[0] == "sym" and tok[1] == s:
            self.i += 1
            return True
        return False

    def nat(self) -> int:
        tok = self.peek()
        if tok is None or tok[0] != "nat":
            self.fail("expected a natural number")
        self.i += 1
        return int(tok[1])

    def word(self) -> tuple[str, int]:
        tok = self.peek()
        if tok is None or tok[0] != "word":
            self.fail("expected a keyword")
        self.i += 1
        return tok[1], tok[2]

    def end(self) -> None:
        if self.i != len(self.toks):
            self.fail(f"unexpected trailing input {self.toks[self.i][1]!r}")

    # grammar

    def nat_list(self) -> list[int]:
        self.sym("{")
        out: list[int] = []
        if self.maybe_sym("}"):
            return out
        out.append(self.nat())
        while self.maybe_sym(","):
            out.append(self.nat())
        self.sym("}")
        return out

    def set_(self) -> PeriodicSet:
        w, pos = self.word()
        if w != "residues":
            self.fail(f"expected 'residues', got {w!r}", pos)
        self.sym("(")
        p = self.nat()
        self.sym(";")
        rs = self.nat_list()
        self.sym(")")
        added: list[int] = []
        removed: list[int] = []
        if self.maybe_sym("+"):
            added = self.nat_list()
        if self.maybe_sym("-"):
            removed = self.nat_list()
        try:
            return PeriodicSet(p, rs, added, removed)
        except ValueError as e:
            self.fail(str(e), pos)

    def term(self) -> FuncTerm:
        w, pos = self.word()
        try:
            if w == "id":
                return Identity()
            if w in _UNARY:
                self.sym("(")
                n = self.nat()
                self.sym(")")
                return _UNARY[w](n)
            self.sym("(")
            if w == "piecewise":
                g = self.set_()
                self.sym(",")
                a = self.term()
                self.sym(",")
                b = self.term()
                out = Piecewise(g, a, b)
            elif w == "compose":
                a = self.term()
                self.sym(",")
                b = self.term()
                out = Compose(a, b)
            elif w == "next":
                out = NextIn(self.set_())
            elif w == "dup":
                s = self.set_()
                self.sym(",")
                out = Dup(s, self.nat())
            else:
                self.fail(f"unknown term constructor {w!r}", pos)
            self.sym(")")
            return out
        except TermSyntaxError:
            raise
        except ValueError as e:
            self.fail(str(e), pos)


_UNARY = {"const": Const, "add": Add, "sub": Sub, "mul": Mul, "div": DivFloor, "mod": Mod}


def parse_term(text: str) -> FuncTerm:
    p = _Parser(text)
    t = p.term()
    p.end()
    return t


def parse_set(text: str) -> PeriodicSet:
    p = _Parser(text)
    s = p.set_()
    p.end()
    return s


def render_set(s: PeriodicSet) -> str:
    return str(s)


def render_term(t: FuncTerm) -> str:
    tp = type(t)
    if tp is Identity:
        return "id"
    if tp is Const:
        return f"const({t.n})"
    if tp is Add:
        return f"add({t.n})"
    if tp is Sub:
        return f"sub({t.n})"
    if tp is Mul:
        return f"mul({t.n})"
    if tp is DivFloor:
        return f"div({t.d})"
    if tp is Mod:
        return f"mod({t.m})"
    if tp is Piecewise:
        return f"piecewise({t.guard},{render_term(t.then)},{render_term(t.else_)})"
    if tp is Compose:
        return f"compose({render_term(t.outer)},{render_term(t.inner)})"
    if tp is NextIn:
        return f"next({t.s})"
    if tp is Dup:
        return f"dup({t.s},{t.c})"
    raise TypeError(f"not a term: {t!r}")
