import json

import pytest

from uqsl2.modules import character, is_isomorphic, restricted_dual, t_module, verma
from uqsl2.modules.specs import (Atom, Dual, Quot, SpecError, Sum, build, dumps, module_from_json,
                                 module_to_json, parse_spec)


def test_atoms_normalize_parameter_order():
    assert parse_spec("verma:m=-3,eps=-") == Atom("verma", (("eps", -1), ("m", -3)))
    assert parse_spec(" T : eps=+ , n=2 ,7") == Atom("T", (("n", 2), ("eps", 1)), 7)


@pytest.mark.parametrize("text", [
    "T:n=1,eps=+", "dual(S:n=2,eps=-,depth=5)", "sum(T:n=0,eps=+;verma:eps=+,m=4)",
    "quot(T:n=1,eps=+,v0)", "sum()",
])
def test_render_round_trip(text):
    spec = parse_spec(text)
    assert parse_spec(spec.render()) == spec


def test_nested_structure():
    spec = parse_spec("dual(sum(verma:eps=+,m=1;quot(T:n=1,eps=+,8,1:v0)))")
    assert isinstance(spec, Dual) and isinstance(spec.inner, Sum)
    q = spec.inner.parts[1]
    assert isinstance(q, Quot) and q.labels == ("1:v0",) and q.inner.depth == 8


@pytest.mark.parametrize("text, pos", [
    ("T:n=1,eps=*", 6),
    ("W:n=1", 0),
    ("T:n=x,eps=+", 2),
    ("T:n=1,eps=+,k=2", 12),
    ("dual(T:n=1,eps=+", 16),
    ("quot(T:n=1,eps=+)", 16),
    ("frob(T:n=1,eps=+)", 0),
])
def test_errors_carry_positions(text, pos):
    with pytest.raises(SpecError) as err:
        parse_spec(text)
    assert err.value.position == pos
    assert err.value.caret().splitlines()[1] == " " * pos + "^"


def test_missing_parameter():
    with pytest.raises(SpecError, match="missing eps"):
        parse_spec("T:n=1")
    with pytest.raises(SpecError, match="unexpected n"):
        parse_spec("verma:eps=+,m=1,n=2")


def test_build_atoms_and_depth_override():
    assert build("verma:eps=+,m=2", 5) == verma(1, 2, 5)
    assert build("T:n=1,eps=-,depth=4", 9) == t_module(1, -1, 4)
    assert build("V:n=3,eps=+").dims == (1, 1, 1, 1)


def test_build_dual_and_quot():
    assert build("dual(T:n=1,eps=+)", 6) == restricted_dual(t_module(1, 1, 6))
    q = build("quot(T:n=2,eps=+,v0)", 9)
    assert q.dims[:3] == (0, 0, 0)
    assert is_isomorphic(q, verma(1, -4, 6)) is not None


def test_empty_sum_is_zero_module():
    z = build("sum()", 4)
    assert z.dims == (0,) * 5 and character(z) == {}


def test_json_round_trip_is_exact():
    m = build("sum(T:n=1,eps=+;dual(verma:eps=+,m=5))", 7)
    doc = module_to_json(m)
    text = dumps(doc)
    back = module_from_json(json.loads(text))
    assert back == m
    assert dumps(module_to_json(back)) == text
