import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import periodic_sets, terms
from rigiditylab.funcdsl import (
    ID,
    Add,
    Compose,
    Const,
    DivFloor,
    Dup,
    IdentityBeyond,
    Mod,
    Mul,
    NextIn,
    Piecewise,
    Sub,
    ViolationsPersist,
    bi_immune_refuter,
    compose,
    evaluate,
    eventually_identity_verdict,
    nonfixed_points,
    table_term,
)
from rigiditylab.grammar import TermSyntaxError, parse_set, parse_term, render_term
from rigiditylab.paramsets import EMPTY, EVENS, ODDS, FiniteSetError, finite, residues


class TestEvaluate:
    def test_identity(self):
        assert evaluate(ID, 7) == 7

    def test_dup_odds(self):
        f = Dup(ODDS, 0)
        assert [evaluate(f, x) for x in (6, 7, 9)] == [3, 3, 0]

    def test_next_in_evens(self):
        assert evaluate(NextIn(EVENS), 5) == 6
        assert evaluate(NextIn(EVENS), 6) == 8

    def test_arithmetic(self):
        assert evaluate(Const(4), 100) == 4
        assert evaluate(Add(3), 4) == 7
        assert evaluate(Sub(3), 2) == 0
        assert evaluate(Sub(3), 10) == 7
        assert evaluate(Mul(3), 5) == 15
        assert evaluate(DivFloor(4), 11) == 2
        assert evaluate(Mod(4), 11) == 3

    def test_arbitrary_precision(self):
        big = 2**200 + 5
        assert evaluate(compose(Add(1), Mul(2)), big) == 2**201 + 11
        assert evaluate(Dup(ODDS, 0), 2 * big + 1) == big

    def test_callable_terms(self):
        assert Add(2)(5) == 7

    def test_deep_chain_does_not_recurse(self):
        f = ID
        for _ in range(5000):
            f = Compose(Add(1), f)
        assert evaluate(f, 0) == 5000

    def test_constructor_validation(self):
        for bad in (lambda: Mul(0), lambda: DivFloor(0), lambda: Mod(0), lambda: Add(-1)):
            with pytest.raises(ValueError):
                bad()

    def test_next_in_finite_rejected(self):
        with pytest.raises(FiniteSetError):
            NextIn(finite([1, 2, 3]))
        with pytest.raises(FiniteSetError):
            NextIn(EMPTY)

    def test_terms_are_immutable(self):
        f = Add(1)
        with pytest.raises(AttributeError):
            f.n = 2


class TestNonfixed:
    def test_examples(self):
        assert nonfixed_points(ID, 100) == []
        assert nonfixed_points(Add(1), 4) == [0, 1, 2, 3]
        assert nonfixed_points(Piecewise(EVENS, NextIn(EVENS), ID), 5) == [0, 2, 4]

    def test_eventually_identity(self):
        assert eventually_identity_verdict(ID, 1000) == IdentityBeyond(0)
        assert eventually_identity_verdict(Add(5), 1000) == ViolationsPersist(999)
        f = Piecewise(finite([0, 1, 2]), Const(0), ID)
        assert nonfixed_points(f, 1000) == [1, 2]
        g = Piecewise(finite([0, 1, 2]), Const(7), ID)
        assert eventually_identity_verdict(g, 1000) == IdentityBeyond(3)

    def test_slack(self):
        f = Piecewise(finite([950]), Const(0), ID)
        assert eventually_identity_verdict(f, 1000) == ViolationsPersist(950)
        assert eventually_identity_verdict(f, 1000, slack=10) == IdentityBeyond(951)


class TestRefuter:
    def test_evens(self):
        k = bi_immune_refuter(EVENS)
        assert evaluate(k, 4) == 6
        assert evaluate(k, 5) == 5

    def test_odds(self):
        assert nonfixed_points(bi_immune_refuter(ODDS), 10) == [1, 3, 5, 7, 9]

    def test_mult3(self):
        assert evaluate(bi_immune_refuter(residues(3, [0])), 3) == 6

    def test_finite_rejected(self):
        with pytest.raises(FiniteSetError):
            bi_immune_refuter(finite([4]))

    @given(periodic_sets(infinite=True))
    def test_refuter_law(self, s):
        k = bi_immune_refuter(s)
        for x in range(10**4):
            y = evaluate(k, x)
            if x in s:
                assert y in s and y > x
            else:
                assert y == x


class TestLaws:
    @given(terms, terms, st.integers(0, 10**6))
    def test_composition(self, f, g, x):
        assert evaluate(Compose(f, g), x) == evaluate(f, evaluate(g, x))

    @given(periodic_sets(), st.integers(0, 20), st.integers(0, 10**5))
    def test_dup_fibers(self, s, c, x):
        f = Dup(s, c)
        assert evaluate(f, 2 * x) == x
        assert evaluate(f, 2 * x + 1) == (x if x in s else c)

    @given(periodic_sets(infinite=True), st.integers(0, 10**6))
    def test_next_in(self, s, x):
        y = evaluate(NextIn(s), x)
        assert y in s and y > x
        assert not any(z in s for z in range(x + 1, y))

    def test_table_term(self):
        f = table_term({0: 5, 3: 1, 4: 1}, default=Add(10))
        assert [evaluate(f, x) for x in range(6)] == [5, 11, 12, 1, 1, 15]


class TestGrammar:
    def test_compose_example(self):
        f = parse_term("compose(add(1), mul(2))")
        assert [evaluate(f, x) for x in range(4)] == [1, 3, 5, 7]

    def test_dup_example(self):
        assert parse_term("dup(residues(2;{1}), 0)") == Dup(ODDS, 0)

    def test_next_empty_rejected(self):
        with pytest.raises(TermSyntaxError) as e:
            parse_term("next(residues(2;{}))")
        assert e.value.position is not None

    def test_whitespace_insensitive(self):
        assert parse_term(" piecewise ( residues(3;{0,1}) +{ 2 } -{3} , add(1),id ) ") == Piecewise(
            residues(3, [0, 1], added=[2], removed=[3]), Add(1), ID
        )

    @pytest.mark.parametrize(
        "text, pos",
        [("add(", 4), ("add(1", 5), ("frob(1)", 0), ("add(1))", 6), ("mul(0)", 0), ("", 0)],
    )
    def test_syntax_errors(self, text, pos):
        with pytest.raises(TermSyntaxError) as e:
            parse_term(text)
        assert e.value.position == pos

    def test_set_syntax(self):
        assert parse_set("residues(4;{2})") == residues(4, [2])
        assert parse_set("residues(2;{1})+{4}") == residues(2, [1], added=[4])
        assert str(parse_set("residues(4;{0,2})")) == "residues(2;{0})"

    @given(terms)
    def test_round_trip(self, t):
        text = render_term(t)
        u = parse_term(text)
        assert u == t
        assert render_term(u) == text
        assert all(evaluate(u, x) == evaluate(t, x) for x in range(201))
