"""Finite backtracking search for window-consistent injective maps."""

from __future__ import annotations

from dataclasses import dataclass

from ..oracle import Oracle

__all__ = ["SearchBoundError", "SearchResult", "brute_search_reduction", "MAX_SEARCH_DOMAIN"]

MAX_SEARCH_DOMAIN = 24
NONE_WITHIN = "no injective window-consistent map within bounds"


class SearchBoundError(ValueError):
    pass


@dataclass(frozen=True)
class SearchResult:
    found: bool
    domain_bound: int
    range_bound: int
    mapping: tuple[int, ...] | None
    nodes: int

    @property
    def label(self) -> str:
        if self.found:
            return "Found"
        return f"NoneWithin({self.domain_bound}, {self.range_bound}): {NONE_WITHIN}"

    def to_json(self) -> dict:
        return {
            "result": "Found" if self.found else "NoneWithin",
            "domain_bound": self.domain_bound,
            "range_bound": self.range_bound,
            "mapping": list(self.mapping) if self.mapping is not None else None,
            "nodes": self.nodes,
            "note": None if self.found else NONE_WITHIN + " (says nothing about infinite reductions)",
        }


def brute_search_reduction(
    src: Oracle, tgt: Oracle, domain_bound: int, range_bound: int
) -> SearchResult:
    """Depth-first search for injective h: [0, domain_bound) -> [0, range_bound)
    with src(z) = tgt(h(z)). Candidates are tried in increasing order."""
    if not 0 <= domain_bound <= MAX_SEARCH_DOMAIN:
        raise SearchBoundError(f"domain_bound must be in [0, {MAX_SEARCH_DOMAIN}], got {domain_bound}")
    if range_bound < 0:
        raise SearchBoundError(f"range_bound must be >= 0, got {range_bound}")
    want = [int(b) for b in src.bits(domain_bound)]
    have = [int(b) for b in tgt.bits(range_bound)]
    by_bit = {0: [j for j, b in enumerate(have) if b == 0], 1: [j for j, b in enumerate(have) if b == 1]}
    used = [False] * range_bound
    # unmatched demand and unused supply per bit value, for pruning
    demand = [want.count(0), want.count(1)]
    supply = [len(by_bit[0]), len(by_bit[1])]
    h: list[int] = []
    nodes = 0

    def extend(z: int) -> bool:
        nonlocal nodes
        if z == domain_bound:
            return True
        if demand[0] > supply[0] or demand[1] > supply[1]:
            return False
        b = want[z]
        for j in by_bit[b]:
            if used[j]:
                continue
            nodes += 1
            used[j] = True
            demand[b] -= 1
            supply[b] -= 1
            h.append(j)
            if extend(z + 1):
                return True
            h.pop()
            used[j] = False
            demand[b] += 1
            supply[b] += 1
        return False

    if extend(0):
        return SearchResult(True, domain_bound, range_bound, tuple(h), nodes)
    return SearchResult(False, domain_bound, range_bound, None, nodes)
