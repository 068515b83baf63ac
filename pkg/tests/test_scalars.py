from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uqsl2.scalars import (ONE, Q, QMINUS, ZERO, LaurentPoly, RatScalar, ScalarZeroDivision,
                           _kronecker, casimir_scalar, check_qint_lemma, parse_scalar, qbinom,
                           qfact, qint, render_scalar)


def lp(d):
    return RatScalar(LaurentPoly(d))


# hand-expanded oracles
def test_qint_small_values():
    assert qint(0) == ZERO
    assert qint(1) == ONE
    assert qint(2) == lp({1: 1, -1: 1})
    assert qint(3) == lp({2: 1, 0: 1, -2: 1})
    assert qint(-2) == -qint(2)


def test_qint_is_quotient_definition():
    for n in range(-6, 7):
        assert qint(n) == (Q ** n - Q ** -n) / QMINUS


def test_qfact_and_qbinom():
    assert qfact(0) == ONE
    assert qfact(3) == qint(1) * qint(2) * qint(3)
    assert qbinom(4, 2) == lp({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    assert qbinom(5, 0) == ONE and qbinom(5, 5) == ONE
    assert qbinom(3, 4) == ZERO


def test_qbinom_pascal():
    for n in range(1, 8):
        for k in range(1, n):
            assert qbinom(n, k) == Q ** -k * qbinom(n - 1, k) + Q ** (n - k) * qbinom(n - 1, k - 1)


def test_qint_at_q_equal_one_gives_integers():
    for n in range(-5, 8):
        assert qint(n).as_laurent().at_one() == n


def test_lemma_single_instance_by_hand():
    # [4][5] - [2][3] = [2][7]
    assert qint(4) * qint(5) - qint(2) * qint(3) == qint(2) * qint(7)
    assert check_qint_lemma(2, 3, 5)
    assert check_qint_lemma(0, 0, 0)


def test_canonical_form_is_unique():
    a = (Q ** 2 - 1) / (Q - 1)
    assert a == Q + 1
    assert a.den == LaurentPoly({0: 1})
    x = RatScalar(Q, Q ** 3 - Q)          # q / (q^3 - q) = 1 / (q^2 - 1)
    y = RatScalar(-1, 1 - Q ** 2)
    assert x == y and hash(x) == hash(y)
    assert x.num == y.num and x.den == y.den
    assert x.den.valuation() == 0 and x.den.leading_coefficient() > 0


def test_rational_coefficients_are_cleared():
    x = RatScalar(Fraction(1, 2) * Q, Fraction(3, 4) + Q ** 2)
    assert all(isinstance(c, int) for c in x.den.coefficients.values())
    assert x * (Fraction(3, 4) + Q ** 2) == Fraction(1, 2) * Q


def test_zero_division():
    with pytest.raises(ScalarZeroDivision):
        ONE / ZERO
    with pytest.raises(ScalarZeroDivision):
        ZERO.inverse()


def test_render_and_parse():
    assert render_scalar(qint(2)) == "q^1 + q^-1"
    assert render_scalar(ZERO) == "0"
    assert render_scalar(ONE) == "1"
    for text, value in [("[3]", qint(3)), ("[3]!", qfact(3)), ("q^2 - 1", Q ** 2 - 1),
                        ("3/2*q^-1", Fraction(3, 2) * Q ** -1), ("1/(q - q^-1)", QMINUS.inverse())]:
        assert parse_scalar(text) == value


def test_shift_matches_multiplication():
    x = qint(3) / (Q ** 2 + 3)
    for k in (-3, 0, 2):
        assert x.shift(k) == x * Q ** k


def test_casimir_scalar_symmetry():
    # c(eps q^n) = c(eps q^(-n-2)): the two highest weights of a block share a value
    for n in range(0, 5):
        for eps in (1, -1):
            assert casimir_scalar(Q ** n * eps) == casimir_scalar(Q ** (-n - 2) * eps)


def test_kronecker_agrees_with_schoolbook():
    a = {-3: 5, 0: -7, 2: 1, 4: 9, 5: -2, 6: 3, 9: 11}
    b = {-1: 2, 1: -3, 2: 4, 3: 1, 7: -8, 8: 6, 10: 1}
    want = {}
    for i, x in a.items():
        for j, y in b.items():
            want[i + j] = want.get(i + j, 0) + x * y
    assert _kronecker(a, b) == {k: v for k, v in want.items() if v}


laurent = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4).map(lp)
nonzero = laurent.filter(lambda x: not x.is_zero())
ratscalars = st.builds(lambda a, b: a / b, laurent, nonzero)


@settings(max_examples=60, deadline=None)
@given(ratscalars, ratscalars, ratscalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    if not a.is_zero():
        assert a * a.inverse() == ONE


@settings(max_examples=60, deadline=None)
@given(ratscalars)
def test_render_parse_round_trip(a):
    assert parse_scalar(render_scalar(a)) == a


@settings(max_examples=40, deadline=None)
@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(-8, 8))
def test_lemma_property(a, b, k):
    assert qint(a + k) * qint(b + k) - qint(a) * qint(b) == qint(k) * qint(a + b + k)
