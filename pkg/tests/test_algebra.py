import random

import pytest

from uqsl2.algebra import (E, F, IDENTITY, ONE_ELEMENT, T, T_INV, AlgebraElement, PbwMonomial,
                           bracket_t, casimir, degree_bound, element_from_json, element_to_json,
                           monomial_product, multiply, power, render_element, sigma)
from uqsl2.scalars import ONE, QQINV_INV, Q, qint
from uqsl2.verify import multiplier, random_element, t_equivariance_failure


def mono(a, b, c, coeff=1):
    return AlgebraElement.monomial(a, b, c, coeff)


def test_defining_relations():
    assert T * T_INV == ONE_ELEMENT
    assert T * E * T_INV == E * Q ** 2
    assert T * F * T_INV == F * Q ** -2
    assert E * F - F * E == (T - T_INV) * QQINV_INV
    assert E * F - F * E == bracket_t(0)


def test_e_f_power_rule_by_hand():
    # e f^s = f^s e + [s] f^(s-1) [t; 1-s]
    for s in range(1, 7):
        lhs = E * power(F, s)
        rhs = power(F, s) * E + power(F, s - 1) * bracket_t(1 - s) * qint(s)
        assert lhs == rhs


def test_f_e_power_rule_by_hand():
    # f e^s = e^s f - [s] [t; 1-s] e^(s-1)
    for s in range(1, 7):
        lhs = F * power(E, s)
        rhs = power(E, s) * F - bracket_t(1 - s) * power(E, s - 1) * qint(s)
        assert lhs == rhs


def test_s_equal_one_is_the_commutator():
    assert E * F == F * E + bracket_t(0)


def test_normal_form_is_ordered():
    x = E * T * F
    assert all(isinstance(m, PbwMonomial) for m in x.terms)
    assert render_element(power(F, 3)) == "f^3"
    assert render_element(T * T_INV) == "1"
    assert render_element(E * F - F * E) == "(q^1)/(q^2 - 1)*t - (q^1)/(q^2 - 1)*t^-1"


def test_t_moves_past_monomials():
    assert T * F == F * T * Q ** -2
    assert E * T == T * E * Q ** -2
    assert mono(0, 2, 0) * mono(3, 0, 1) == mono(3, 2, 1, Q ** -12)


def test_casimir_is_central():
    c = casimir()
    for g in (E, F, T, T_INV, E * E * F + T):
        assert c * g == g * c


def test_casimir_other_form():
    # C = e f + (q^-1 t + q t^-1)/(q - q^-1)^2
    d = QQINV_INV * QQINV_INV
    alt = E * F + (T * Q ** -1 + T_INV * Q) * d
    assert casimir() == alt


def test_sigma():
    assert sigma(E) == F and sigma(F) == E and sigma(T) == T
    x = E * E * F + T * F
    y = F * E + T_INV
    assert sigma(x * y) == sigma(y) * sigma(x)
    assert sigma(sigma(x)) == x


def test_degree_bound():
    assert degree_bound(E * F * E) == 3
    assert degree_bound(T * T_INV) == 0


def test_t_equivariance_on_small_monomials():
    monos = [(a, b, c) for a in range(3) for b in (-2, 0, 1) for c in range(3)]
    assert not any(t_equivariance_failure(monomial_product, x, y) for x in monos for y in monos)


def test_corrupted_product_breaks_t_equivariance():
    def bad(x, y):
        out = monomial_product(x, y)
        if x[1] == 1 and y[0] == 1:
            return tuple((m, -c) for m, c in out)
        return out
    assert t_equivariance_failure(bad, (0, 1, 0), (1, 0, 0))


def test_random_associativity_direct():
    rng = random.Random(7)
    for _ in range(15):
        x, y, z = (random_element(rng, terms=2) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_multiplier_matches_multiply():
    rng = random.Random(3)
    mul = multiplier()
    for _ in range(10):
        x, y = random_element(rng), random_element(rng)
        assert mul(x, y) == multiply(x, y)


def test_json_round_trip():
    x = E * F * Q ** 3 - T_INV * qint(3) + mono(2, -1, 0)
    d = element_to_json(x)
    assert d["rendered"] == render_element(x)
    assert element_from_json(d) == x


def test_negative_pbw_exponent_rejected():
    with pytest.raises(ValueError):
        AlgebraElement({(-1, 0, 0): ONE})


def test_power_rejects_negative():
    with pytest.raises(ValueError):
        power(E, -1)


def test_identity_constant():
    assert ONE_ELEMENT.terms == {IDENTITY: ONE}


@pytest.mark.slow
def test_brute_force_associativity_small_range():
    monos = [(a, b, c) for a in range(3) for b in (-1, 0, 1) for c in range(3)]
    elems = {m: mono(*m) for m in monos}
    for x in monos:
        for y in monos:
            xy = elems[x] * elems[y]
            for z in monos:
                assert xy * elems[z] == elems[x] * (elems[y] * elems[z]), (x, y, z)
