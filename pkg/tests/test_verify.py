import json

import pytest

from uqsl2.algebra import monomial_product
from uqsl2.scalars import Q, casimir_scalar, qbinom, qfact, qint
from uqsl2.verify import (FAIL, PASS, STATEMENTS, UNTESTABLE, SummandSpec, casimir_constant,
                          random_sums, render_reports, reports_json, required_depth,
                          run_statement, sharp_closed_form, verify_algebra_relations,
                          verify_decompose_roundtrip, verify_lemma1, verify_theorem8_verma)


def test_lemma1_small_range():
    r = verify_lemma1(2)
    assert r.outcome == PASS and r.checks == 125


def _negate_pair(target):
    def product(x, y):
        out = monomial_product(x, y)
        return tuple((m, -c) for m, c in out) if (x, y) == target else out
    return product


def test_relations_catch_a_corrupted_product():
    r = verify_algebra_relations(samples=2, mono_product=_negate_pair(((0, 0, 1), (1, 0, 0))))
    assert r.outcome == FAIL
    assert r.witness.startswith("e f - f e =")


def test_associativity_catches_a_t_free_corruption():
    # e^2 f^2 is untouched by the defining relations checked before associativity
    r = verify_algebra_relations(samples=0, mono_product=_negate_pair(((0, 0, 2), (2, 0, 0))))
    assert r.outcome == FAIL
    assert r.witness == "t-equivariance fails for t^-3*e^2 * f^2*t^-3"


@pytest.mark.parametrize("sid", [s for s in STATEMENTS if s != "Relations"])
def test_statements_pass_at_small_parameters(sid):
    reports = run_statement(sid, depth=8, n_max=1, roundtrips=5)
    assert reports
    assert all(r.outcome == PASS for r in reports), render_reports(reports)


@pytest.mark.parametrize("sid", ["Thm2", "Cor3", "Prop4", "Prop7", "Thm8", "Cor9", "Cor10"])
def test_shallow_depth_is_untestable_not_failing(sid):
    reports = run_statement(sid, depth=2, n_max=1)
    outcomes = {r.outcome for r in reports}
    assert FAIL not in outcomes
    assert UNTESTABLE in outcomes


def test_verma_self_duality_needs_negative_m():
    assert verify_theorem8_verma(1, 2, 6).outcome == UNTESTABLE
    assert verify_theorem8_verma(-1, -4, 8).outcome == PASS


def test_sharp_closed_form():
    assert sharp_closed_form(2, 1, 1) == qfact(1) ** 2 * qbinom(2, 1)
    assert sharp_closed_form(2, -1, 1) == -qint(2)
    # past n the sign alternates: (-1)^(i-n-1)
    assert sharp_closed_form(1, 1, 2) == qfact(1) ** 2 * qbinom(2, 2)
    assert sharp_closed_form(1, 1, 3) == -qint(3)


def test_casimir_constant():
    for n in range(5):
        assert casimir_constant(n, 0) == casimir_scalar(Q ** n)
        for j in range(n + 2):
            assert casimir_constant(n, j) == casimir_constant(n, n + 1 - j)


def test_required_depth():
    assert required_depth([SummandSpec("T", 1, 2)]) == 4
    assert required_depth([SummandSpec("Verma", 1, -3)]) == 1
    assert required_depth([SummandSpec("Verma", 1, 3)]) == 5
    assert required_depth([SummandSpec("T", 1, 1), SummandSpec("Verma", 1, 5)]) >= 5


def test_random_sums_cover_the_required_shapes():
    sums = random_sums(50)
    assert len(sums) == 50
    assert random_sums(50) == sums
    assert all(1 <= len(s) <= 3 for s in sums)
    assert any(len(set(s)) < len(s) for s in sums), "no repeated summand"
    for s in sums:
        assert len({p.eps for p in s}) == 1
        for p in s:
            if p.kind == "Verma":
                assert -6 <= p.index <= 6
            else:
                assert p.kind == "T" and 0 <= p.index <= 4
    partners = 0
    for s in sums:
        verma_m = {p.index for p in s if p.kind == "Verma"}
        partners += any(-m - 2 in verma_m or any(p.kind == "T" and p.index in (m, -m - 2)
                                                  for p in s) for m in verma_m)
    assert partners, "no coinciding Casimir scalars"


def test_decompose_roundtrip_with_repeats():
    parts = [SummandSpec("T", 1, 1), SummandSpec("T", 1, 1), SummandSpec("Verma", 1, -3)]
    r = verify_decompose_roundtrip(parts, required_depth(parts) + 2)
    assert r.outcome == PASS


def test_report_rendering_and_json_are_stable():
    a = run_statement("Thm2", depth=6, n=0, eps=1)
    b = run_statement("Thm2", depth=6, n=0, eps=1)
    assert reports_json(a) == reports_json(b)
    doc = json.loads(reports_json(a))
    assert doc[0]["statement_id"] == "Thm2"
    assert doc[0]["params"] == {"depth": "6", "eps": "+", "n": "0"}
    assert render_reports(a).splitlines()[-1] == "1 pass, 0 fail, 0 untestable"


def test_unknown_statement():
    with pytest.raises((KeyError, ValueError)):
        run_statement("Thm99")
