"""Fixed corpora used by the suites and the acceptance tests."""

from __future__ import annotations

from ..funcdsl import (
    ID,
    Add,
    Compose,
    DivFloor,
    FuncTerm,
    Mod,
    Mul,
    Piecewise,
    bi_immune_refuter,
    compose,
)
from ..paramsets import (
    EMPTY,
    EVENS,
    ODDS,
    PeriodicSet,
    complement,
    finite,
    odifreddi_family,
    residues,
)


def measure_corpus() -> list[FuncTerm]:
    """Terms that move infinitely many points: shifts, scalings, mixtures, refuters."""
    S = odifreddi_family
    return [
        Add(1),
        Add(2),
        Add(7),
        Add(1000),
        Mul(2),
        DivFloor(2),
        DivFloor(5),
        Mod(3),
        Mod(10),
        Compose(Add(1), Mul(2)),
        Compose(DivFloor(2), Add(3)),
        Piecewise(EVENS, Add(1), ID),
        Piecewise(ODDS, DivFloor(2), Add(4)),
        Piecewise(residues(3, [0]), Mul(2), ID),
        Piecewise(residues(5, [1, 2]), Mod(7), Add(3)),
        bi_immune_refuter(EVENS),
        bi_immune_refuter(ODDS),
        bi_immune_refuter(residues(3, [0])),
        bi_immune_refuter(S(3)),
        bi_immune_refuter(residues(7, [2, 5], added=[0], removed=[9])),
        compose(Mod(64), Add(5), Mul(3)),
    ]


def refuter_sets() -> list[PeriodicSet]:
    return [
        EVENS,
        ODDS,
        residues(3, [0]),
        residues(5, [1, 3]),
        odifreddi_family(1),
        odifreddi_family(4),
        residues(6, [0, 1, 2], added=[3]),
        residues(10, [7], removed=[7, 17]),
        complement(odifreddi_family(2)),
        residues(12, [0, 5, 11], added=[2, 4]),
    ]


def subset_pairs() -> list[tuple[PeriodicSet, PeriodicSet]]:
    """Pairs s ⊆ t with infinite complement of s ∪ t."""
    S = odifreddi_family
    return [
        (residues(4, [0]), EVENS),
        (residues(8, [0]), residues(4, [0])),
        (S(3), residues(8, [0])),
        (S(1), EVENS),
        (S(2), residues(4, [0])),
        (EMPTY, ODDS),
        (EMPTY, EVENS),
        (ODDS, ODDS),
        (EVENS, EVENS),
        (residues(6, [0]), EVENS),
        (residues(6, [0]), residues(3, [0])),
        (residues(10, [0, 5]), residues(5, [0])),
        (S(0), complement(S(1))),
        (S(1), complement(S(0))),
        (S(2), complement(S(3))),
        (finite([3, 5]), ODDS),
        (residues(4, [1], added=[2]), residues(2, [1], added=[2])),
        (residues(3, [0], removed=[0, 3]), residues(3, [0])),
        (residues(12, [1, 7], added=[0]), residues(6, [1], added=[0, 2])),
        (finite([0, 1, 2]), residues(5, [0, 1, 2], added=[3])),
        (residues(9, [4]), residues(3, [1], removed=[1])),
        (residues(2, [0], removed=[0, 2, 4]), residues(2, [0])),
    ]


def capture_sets() -> list[PeriodicSet]:
    """Purely periodic sets with period exactly 2, 3, 4 or 8."""
    return [
        EVENS,
        ODDS,
        residues(3, [0]),
        residues(3, [1, 2]),
        odifreddi_family(1),
        residues(4, [0, 1]),
        odifreddi_family(2),
        residues(8, [1, 2, 6]),
    ]
