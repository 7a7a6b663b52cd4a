"""Finite-scale workbench for m-rigidity, the duplication construction and
Martin-Löf tests for Fix(k)."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .duplication import (
    InclusionReport,
    ReductionVerdict,
    almost_inclusion_from_reduction,
    construct_subset_reduction,
    dup_set,
    fiber,
    induced_autoreductions,
    verify_m_equivalence,
    verify_one_reduction,
)
from .funcdsl import (
    ID,
    Add,
    Compose,
    Const,
    DivFloor,
    Dup,
    Identity,
    Mod,
    Mul,
    NextIn,
    Piecewise,
    Sub,
    bi_immune_refuter,
    evaluate,
    eventually_identity_verdict,
    nonfixed_points,
)
from .grammar import TermSyntaxError, parse_set, parse_term, render_set, render_term
from .oracle import (
    Complement,
    Duplicated,
    FromSet,
    PrefixPatch,
    SeededRandom,
    find_zero,
    parse_oracle,
    prefix,
    query,
)
from .paramsets import (
    EMPTY,
    EVENS,
    FULL,
    ODDS,
    PeriodicSet,
    almost_subset,
    complement,
    finite,
    intersection,
    membership,
    nth_element,
    odifreddi_family,
    residues,
    set_algebra,
    union,
)
from .randomness import (
    ConstraintSet,
    DyadicRational,
    coverage_experiment,
    exact_measure,
    fix_violation_witness,
    fresh_sequence,
    level_contains,
    meets_or_avoids,
    test_level,
)
