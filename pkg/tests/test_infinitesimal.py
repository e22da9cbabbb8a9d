"""Ordered-ring properties of the two-infinitesimal arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nodalk3.infinitesimal import (
    EPS,
    EPSP,
    ONE,
    ZERO,
    EpsPoly,
    EpsRational,
    ZeroDenominatorError,
    compare,
)

coeffs = st.fractions(min_value=-100, max_value=100, max_denominator=50)
monos = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monos, coeffs, max_size=5).map(EpsPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def sign_of(x: Fraction) -> int:
    return (x > 0) - (x < 0)


class TestEpsPolyRing:
    @given(polys, polys)
    def test_add_commutes(self, p, q):
        assert p + q == q + p

    @given(polys, polys, polys)
    def test_add_associates(self, p, q, r):
        assert (p + q) + r == p + (q + r)

    @given(polys, polys, polys)
    def test_mul_distributes(self, p, q, r):
        assert p * (q + r) == p * q + p * r

    @given(polys)
    def test_additive_inverse(self, p):
        assert (p + (-p)).is_zero()
        assert p - p == ZERO

    @given(polys)
    def test_one_is_neutral(self, p):
        assert p * ONE == p

    @given(polys, polys)
    def test_mul_commutes(self, p, q):
        assert p * q == q * p


class TestOrdering:
    def test_scale_separation(self):
        # constants dominate eps-powers, which dominate anything with epsp
        assert (ONE - EPS).sign() == 1
        assert (EPS - EPS * EPS).sign() == 1
        assert (EPS**4 - EPSP).sign() == 1
        assert (EPSP - EPSP * EPSP).sign() == 1
        assert (EPS**3 - 2 * EPSP).sign() == 1

    @given(polys)
    def test_sign_of_negation(self, p):
        assert (-p).sign() == -p.sign()

    @given(polys)
    def test_sign_zero_iff_zero(self, p):
        assert (p.sign() == 0) == p.is_zero()

    @given(polys, polys)
    def test_sign_multiplicative(self, p, q):
        assert (p * q).sign() == p.sign() * q.sign()

    @given(polys, polys)
    def test_sign_of_sum_of_positives(self, p, q):
        if p.sign() > 0 and q.sign() > 0:
            assert (p + q).sign() == 1

    @given(polys)
    def test_sign_agrees_with_instantiation_deep_in_the_regime(self, p):
        # eps and epsp small enough for degree <= 6 and these coefficient sizes
        val = p.instantiate(Fraction(1, 10**10), Fraction(1, 10**80))
        assert sign_of(val) == p.sign()


class TestEpsRational:
    @given(polys, nonzero_polys)
    def test_denominator_normalized_positive(self, p, q):
        r = EpsRational(p, q)
        assert r.den.sign() == 1
        assert r.sign() == compare(r, 0)

    @given(polys, nonzero_polys)
    def test_instantiation_matches_quotient(self, p, q):
        e, ep = Fraction(1, 7), Fraction(1, 9)
        r = EpsRational(p, q)
        if q.instantiate(e, ep) != 0 and r.den.instantiate(e, ep) != 0:
            assert r.instantiate(e, ep) == p.instantiate(e, ep) / q.instantiate(e, ep)

    @given(polys, nonzero_polys)
    def test_times_denominator_recovers_numerator(self, p, q):
        r = EpsRational(p, q)
        assert r * EpsRational(q) == EpsRational(p)

    @given(polys, polys, nonzero_polys)
    def test_compare_matches_difference_sign(self, p1, p2, q):
        a = EpsRational(p1, q)
        b = EpsRational(p2, q)
        assert compare(a, b) == (a - b).sign()

    def test_zero_sign_denominator_rejected(self):
        with pytest.raises(ZeroDenominatorError):
            EpsRational(ONE, ZERO)

    def test_field_identities(self):
        x = EpsRational(EPS + 1, EPSP + EPS)
        assert x / x == EpsRational(ONE)
        assert (x - x).is_zero()
        assert compare(x * (1 / x), 1) == 0

    @given(polys, nonzero_polys, polys, nonzero_polys)
    def test_order_compatible_with_addition(self, p1, q1, p2, q2):
        a = EpsRational(p1, q1)
        b = EpsRational(p2, q2)
        c = EpsRational(EPS, ONE + EPSP)
        assert compare(a, b) == compare(a + c, b + c)
