import pytest

from uqsl2.algebra import E, F, T, T_INV, bracket_t, casimir, power
from uqsl2.parser import ParseError, UnknownSymbolError, parse_element, parse_scalar
from uqsl2.scalars import Q, qfact, qint


@pytest.mark.parametrize("text, expected", [
    ("e*f - f*e", E * F - F * E),
    ("f^3", power(F, 3)),
    ("t^-1", T_INV),
    ("C", casimir()),
    ("[t;2]", bracket_t(2)),
    ("[3]*e", E * qint(3)),
    ("[2]!*f", F * qfact(2)),
    ("q^-2*t*e", T * E * Q ** -2),
    ("(e + f)^2", E * E + E * F + F * E + F * F),
    ("1/2*e", E * (Q ** 0 / 2)),
    ("-e", -E),
    ("  e *  f ", E * F),
])
def test_parse_element(text, expected):
    assert parse_element(text) == expected


def test_centrality_via_text():
    assert parse_element("C*e - e*C").is_zero()


def test_parse_scalar_rejects_generators():
    with pytest.raises(ParseError):
        parse_scalar("e")


@pytest.mark.parametrize("text, pos", [
    ("e*(f", 4),
    ("e +", 3),
    ("e ^ -1", 2),
    ("e / f", 2),
])
def test_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_element(text)
    assert info.value.position == pos
    assert info.value.caret().splitlines()[1] == " " * pos + "^"


def test_unknown_symbol():
    with pytest.raises(UnknownSymbolError) as info:
        parse_element("e*x")
    assert info.value.position == 2
