import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rigiditylab.funcdsl import (
    ID,
    Add,
    Compose,
    Const,
    DivFloor,
    Dup,
    Mod,
    Mul,
    NextIn,
    Piecewise,
    Sub,
)
from rigiditylab.paramsets import residues

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", settings.get_profile("default"), max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def periodic_sets(draw, max_period=12, max_exc=30, infinite=False):
    p = draw(st.integers(1, max_period))
    rs = draw(st.sets(st.integers(0, p - 1), min_size=1 if infinite else 0))
    added = draw(st.lists(st.integers(0, max_exc), max_size=4))
    removed = draw(st.lists(st.integers(0, max_exc), max_size=4))
    return residues(p, rs, added=added, removed=removed)


def _leaf():
    return st.one_of(
        st.just(ID),
        st.builds(Const, st.integers(0, 50)),
        st.builds(Add, st.integers(0, 20)),
        st.builds(Sub, st.integers(0, 20)),
        st.builds(Mul, st.integers(1, 5)),
        st.builds(DivFloor, st.integers(1, 6)),
        st.builds(Mod, st.integers(1, 9)),
        st.builds(NextIn, periodic_sets(max_period=8, infinite=True)),
        st.builds(Dup, periodic_sets(max_period=8), st.integers(0, 10)),
    )


terms = st.recursive(
    _leaf(),
    lambda sub: st.one_of(
        st.builds(Compose, sub, sub),
        st.builds(Piecewise, periodic_sets(max_period=6), sub, sub),
    ),
    max_leaves=8,
)
