import pytest

from uqsl2.modules import (DecompositionDepthError, DecompositionError, DepthExceeded,
                           completeness_check, decompose, direct_sum, is_isomorphic, verma)
from uqsl2.modules.analysis import summand_model
from uqsl2.modules.specs import build


@pytest.mark.parametrize("spec, outcome, failing", [
    ("T:n=1,eps=+", "complete", []),
    ("dual(T:n=1,eps=+)", "complete", []),
    ("S:n=1,eps=+", "complete", []),
    ("verma:eps=+,m=2", "complete", []),
    ("verma:eps=-,m=-1", "complete", []),
    ("verma:eps=+,m=-3", "not-complete", [1]),
    ("V:n=2,eps=+", "not-complete", [2]),
    ("TmodM:n=2,eps=-", "not-complete", [2]),
    ("sum()", "complete", []),
])
def test_completeness(spec, outcome, failing):
    rep = completeness_check(build(spec, 10))
    assert rep.outcome == outcome
    assert [p.n for p in rep.failures] == failing


def test_completeness_untestable_when_target_is_past_depth():
    rep = completeness_check(build("verma:eps=+,m=8", 3))
    assert rep.outcome == "untestable"
    assert rep.pair(8).status == "untestable"
    assert "untestable" in rep.render()


def test_verma_failure_is_rank_deficient():
    p = completeness_check(build("verma:eps=+,m=-3", 10)).pair(1)
    # ker e is empty above the top, while v0 is singular at the target
    assert (p.source_dim, p.target_dim, p.rank) == (0, 1, 0)


@pytest.mark.parametrize("spec, expected", [
    ("T:n=1,eps=+", [("T(1,+)", 0)]),
    ("S:n=1,eps=+", [("T(1,+)", 0), ("Verma(+,-1)", 1)]),
    ("sum(T:n=1,eps=+;verma:eps=+,m=5)", [("Verma(+,5)", 0), ("T(1,+)", 2)]),
    ("quot(T:n=2,eps=+,v0)", [("Verma(+,-4)", 3)]),
    ("TmodM:n=2,eps=-", [("T(2,-)/M(-q^-4)", 0)]),
    ("sum(V:n=1,eps=+;verma:eps=+,m=1;verma:eps=+,m=-3)",
     [("Verma(+,1)", 0), ("V(1,+)", 0), ("Verma(+,-3)", 2)]),
    ("sum()", []),
])
def test_decompose_examples(spec, expected):
    got = [(s.label(), s.head_level) for s in decompose(build(spec, 10))]
    assert got == expected


def test_embeddings_are_injective_homomorphisms():
    m = build("sum(T:n=0,eps=-;T:n=0,eps=-;verma:eps=-,m=0)", 8)
    parts = decompose(m)
    assert sorted(s.label() for s in parts) == ["T(0,-)", "T(0,-)", "Verma(-,0)"]
    for s in parts:
        assert s.embedding.is_homomorphism() and s.embedding.is_injective()


def test_repeated_summands_round_trip():
    m = build("sum(verma:eps=+,m=3;verma:eps=+,m=3;T:n=1,eps=+)", 9)
    parts = decompose(m)
    rebuilt = direct_sum(*(s.embedding.source for s in parts))
    assert is_isomorphic(rebuilt, m) is not None


def test_block_past_depth_raises_depth_error():
    m = build("verma:eps=+,m=6", 3)
    with pytest.raises(DecompositionDepthError) as err:
        decompose(m)
    assert isinstance(err.value, DepthExceeded)
    assert isinstance(err.value, DecompositionError)


def test_summand_model_kinds():
    assert summand_model("Verma", {"eps": 1, "m": 2}, 4) == verma(1, 2, 4)
    assert summand_model("T", {"n": 3, "eps": 1}, 1).depth == 4
