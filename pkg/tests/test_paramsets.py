import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import periodic_sets
from rigiditylab.paramsets import (
    EMPTY,
    EVENS,
    FULL,
    ODDS,
    FiniteSetError,
    PeriodicSet,
    almost_subset,
    complement,
    count_below,
    difference,
    finite,
    intersection,
    is_subset,
    membership,
    next_above,
    nth_element,
    odd_image,
    odifreddi_family,
    residues,
    set_algebra,
    union,
)


def brute_members(s, bound):
    return [x for x in range(bound) if membership(s, x)]


class TestMembership:
    def test_examples(self):
        assert membership(ODDS, 7) == 1
        assert membership(odifreddi_family(2), 4) == 1
        assert membership(odifreddi_family(2), 8) == 0

    def test_formula(self):
        s = residues(5, [1, 3], added=[0, 2], removed=[6, 11])
        for x in range(200):
            expect = x in (0, 2) or (x % 5 in (1, 3) and x not in (6, 11))
            assert membership(s, x) == int(expect)

    def test_contains_array_matches_scalar(self):
        s = residues(7, [0, 4], added=[2], removed=[11])
        xs = np.arange(500, dtype=np.int64)
        assert s.contains_array(xs).tolist() == [x in s for x in range(500)]


class TestCanonical:
    def test_minimal_period(self):
        assert residues(4, [1, 3]) == ODDS
        assert residues(12, [0, 3, 6, 9]) == residues(3, [0])
        assert residues(6, range(6)) == FULL

    def test_exception_normalisation(self):
        s = residues(2, [1], added=[3, 4], removed=[5, 6])
        assert s.added == (4,) and s.removed == (5,)

    def test_removed_residue_absorbed(self):
        # removing every member of a class below the next period is still a
        # finite correction, so the representation keeps the class
        s = residues(2, [0], removed=[0])
        assert 0 not in s and 2 in s

    def test_equality_is_semantic(self):
        a = residues(4, [0, 2], added=[1])
        b = residues(2, [0], added=[1])
        assert a == b and hash(a) == hash(b)

    def test_huge_period(self):
        s = residues(2**65, [2**64])
        assert s.period == 2**65
        assert 2**64 in s and 2**64 + 1 not in s

    @given(periodic_sets())
    def test_canonical_form_reparses(self, s):
        from rigiditylab.grammar import parse_set

        assert parse_set(str(s)) == s

    @given(periodic_sets(max_period=8), periodic_sets(max_period=8))
    def test_equality_decides_extension(self, s, t):
        bound = 4 * math.lcm(s.period, t.period) + 80
        assert (s == t) == (brute_members(s, bound) == brute_members(t, bound))


class TestFamily:
    def test_examples(self):
        assert odifreddi_family(0) == ODDS
        s1 = odifreddi_family(1)
        assert s1 == residues(4, [2])
        assert [nth_element(s1, n) for n in range(3)] == [2, 6, 10]
        s3 = odifreddi_family(3)
        assert s3 == residues(16, [8])
        assert [nth_element(s3, n) for n in range(3)] == [8, 24, 40]

    def test_definition(self):
        for i in range(8):
            expect = {2**i * (2 * n + 1) for n in range(300)}
            got = set(brute_members(odifreddi_family(i), 2**i * 600))
            assert got == expect

    def test_limit(self):
        odifreddi_family(64)
        with pytest.raises(ValueError):
            odifreddi_family(65)
        assert odifreddi_family(70, limit=80).period == 2**71


class TestAlmostSubset:
    def test_reflexive(self):
        for s in (EMPTY, FULL, ODDS, residues(6, [1], added=[2])):
            assert almost_subset(s, s)

    def test_finite_exception(self):
        assert almost_subset(residues(2, [1], added=[4]), ODDS)

    def test_family_witness(self):
        r = almost_subset(odifreddi_family(1), odifreddi_family(2))
        assert not r
        assert (r.witness_class, r.modulus) == (2, 8)
        assert r.witnesses[:3] == (2, 10, 18)
        assert len(r.witnesses) == 10

    def test_witnesses_above_threshold(self):
        s = residues(3, [0], added=[1], removed=[30])
        r = almost_subset(s, EMPTY)
        assert not r and all(w > 30 for w in r.witnesses)
        assert all(w in s for w in r.witnesses)

    @given(periodic_sets(max_period=8), periodic_sets(max_period=8))
    def test_witness_class_is_certificate(self, s, t):
        r = almost_subset(s, t)
        if r.holds:
            return
        thr = max(s.threshold, t.threshold)
        for K in (0, 37, 1000, 10**4):
            x = r.witness_class + max(0, -(-(max(K, thr) + 1 - r.witness_class) // r.modulus)) * r.modulus
            assert x > K and x in s and x not in t

    @given(periodic_sets(max_period=8), periodic_sets(max_period=8))
    def test_agrees_with_enumeration(self, s, t):
        # s \ t is finite iff its count stops growing across 10^2, 10^3, 10^4
        counts = []
        for bound in (10**2, 10**3, 10**4):
            counts.append(sum(1 for x in range(bound) if x in s and x not in t))
        stable = counts[0] == counts[1] == counts[2]
        assert bool(almost_subset(s, t)) == stable

    def test_reflexive_transitive_random_triples(self):
        rng = random.Random(7)

        def rand_set():
            p = rng.randint(1, 8)
            return residues(
                p,
                [r for r in range(p) if rng.random() < 0.5],
                added=rng.sample(range(20), rng.randint(0, 3)),
                removed=rng.sample(range(20), rng.randint(0, 3)),
            )

        implications = 0
        for _ in range(1000):
            a, b, c = rand_set(), rand_set(), rand_set()
            assert almost_subset(a, a)
            if almost_subset(a, b) and almost_subset(b, c):
                implications += 1
                assert almost_subset(a, c)
        assert implications > 0

    @given(periodic_sets(max_period=8), periodic_sets(max_period=8))
    def test_exact_subset_implies_almost(self, s, t):
        bound = 10 * math.lcm(s.period, t.period) + 40
        if all(x in t for x in range(bound) if x in s):
            assert almost_subset(s, t)

    def test_huge_moduli(self):
        r = almost_subset(odifreddi_family(40), odifreddi_family(60))
        assert not r and r.modulus == 2**61 and r.witness_class == 2**40


class TestAlgebra:
    def test_examples(self):
        assert complement(ODDS) == EVENS
        assert union(residues(4, [0]), residues(2, [0])) == EVENS
        assert intersection(odifreddi_family(0), odifreddi_family(1)) == EMPTY

    def test_set_algebra_dispatch(self):
        assert set_algebra(ODDS, None, "complement") == EVENS
        assert set_algebra(ODDS, EVENS, "union") == FULL
        assert set_algebra(ODDS, EVENS, "intersection") == EMPTY
        assert set_algebra(FULL, EVENS, "difference") == ODDS
        with pytest.raises(ValueError):
            set_algebra(ODDS, EVENS, "xor")

    def test_operators(self):
        assert (ODDS | EVENS) == FULL and (ODDS & EVENS) == EMPTY
        assert ~ODDS == EVENS and (FULL - ODDS) == EVENS

    @given(periodic_sets(), periodic_sets())
    def test_pointwise(self, s, t):
        u, i, d, c = union(s, t), intersection(s, t), difference(s, t), complement(s)
        for x in range(1000):
            a, b = x in s, x in t
            assert (x in u) == (a or b)
            assert (x in i) == (a and b)
            assert (x in d) == (a and not b)
            assert (x in c) == (not a)

    @given(periodic_sets(), periodic_sets())
    def test_is_subset(self, s, t):
        bound = 2 * math.lcm(s.period, t.period) + 40
        assert is_subset(s, t) == all(x in t for x in range(bound) if x in s)

    def test_odd_image(self):
        s = residues(3, [1], added=[0])
        img = odd_image(s)
        for z in range(600):
            assert (z in img) == (z % 2 == 1 and (z // 2) in s)


class TestEnumeration:
    def test_nth_examples(self):
        assert nth_element(EVENS, 3) == 6
        assert nth_element(odifreddi_family(1), 0) == 2
        assert nth_element(residues(2, [1], added=[0]), 0) == 0

    def test_nth_finite_rejected(self):
        with pytest.raises(FiniteSetError):
            nth_element(finite([1, 2]), 0)

    @given(periodic_sets(infinite=True), st.integers(0, 500))
    def test_nth_matches_enumeration(self, s, n):
        members = brute_members(s, 600 * s.period + 100)
        assert nth_element(s, n) == members[n]
        assert nth_element(s, n) < nth_element(s, n + 1)

    @given(periodic_sets(), st.integers(0, 2000))
    def test_count_below(self, s, x):
        assert count_below(s, x) == len(brute_members(s, x))

    def test_next_above(self):
        assert next_above(EVENS, 5) == 6
        assert next_above(residues(7, [3], removed=[10]), 3) == 17
        with pytest.raises(FiniteSetError):
            next_above(finite([1]), 5)

    def test_elements(self):
        it = residues(3, [1], added=[0]).elements()
        assert [next(it) for _ in range(4)] == [0, 1, 4, 7]

    def test_below(self):
        assert finite([9, 2, 4]).below(5) == [2, 4]

    def test_str(self):
        assert str(residues(7, [2, 5], added=[0], removed=[9])) == "residues(7;{2,5})+{0}-{9}"
        assert str(EMPTY) == "residues(1;{})"
        assert isinstance(EMPTY, PeriodicSet)
