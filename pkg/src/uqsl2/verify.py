"""Executable checks, one per statement about U_q(sl2) and its modules.

Each check returns a VerifyReport whose outcome is "pass" only if every exact
equality it tried held.  Module constructors are looked up through a
``Builders`` record so that tests can inject deliberately broken ones.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from .algebra import (E, F, T, T_INV, AlgebraElement, PbwMonomial, casimir, degree_bound,
                      monomial_product, render_element, sigma)
from .linalg import Matrix
from .modules import constructors as _c
from .modules.analysis import DecompositionError, completeness_check, decompose, summand_model
from .modules.core import DepthExceeded, ModuleError, ModuleMap, ModuleVector, WeightModule
from .modules.core import sign_char
from .modules.homs import is_isomorphic, map_from_generator
from .modules.specs import zero_module
from .modules.ops import (add_characters, apply, apply_word_e_then_f, casimir_matrix, character,
                          direct_sum, generalized_eigenspace, pad_top, quotient,
                          restrict_character, restricted_dual, submodule_generated, trim_top)
from .scalars import (ONE, Q, QMINUS, QQINV_INV, ZERO, RatScalar, casimir_scalar, check_qint_lemma,
                      qbinom, qfact, qint, render_scalar)

PASS, FAIL, UNTESTABLE = "pass", "fail", "untestable-at-depth"

MonoProduct = Callable[[tuple, tuple], tuple]


@dataclass(frozen=True)
class VerifyReport:
    statement_id: str
    params: tuple[tuple[str, str], ...]
    outcome: str
    witness: str = ""
    checks: int = 0

    @property
    def passed(self) -> bool:
        return self.outcome == PASS

    def param_text(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self.params)

    def render(self) -> str:
        head = f"{self.outcome:<20} {self.statement_id}"
        if self.params:
            head += f" [{self.param_text()}]"
        head += f" ({self.checks} checks)"
        return f"{head}: {self.witness}" if self.witness else head

    def to_json(self) -> dict:
        return {"statement_id": self.statement_id, "params": dict(self.params),
                "outcome": self.outcome, "witness": self.witness, "checks": self.checks}


@dataclass(frozen=True)
class Builders:
    """The constructors a check uses; replace fields to inject corrupted ones."""

    verma: Callable[[int, int, int], WeightModule] = _c.verma
    finite_simple: Callable[[int, int], WeightModule] = _c.finite_simple
    s_module: Callable[[int, int, int], WeightModule] = _c.s_module
    t_module: Callable[[int, int, int], WeightModule] = _c.t_module
    t_quotient: Callable[[int, int, int], WeightModule] = _c.t_quotient
    restricted_dual: Callable[[WeightModule], WeightModule] = restricted_dual


DEFAULT = Builders()


class _Abort(Exception):
    pass


class _Run:
    """Collects sub-checks; the first failure becomes the witness."""

    def __init__(self, statement_id: str, **params):
        self.statement_id = statement_id
        self.params = tuple((k, _fmt(v)) for k, v in params.items())
        self.count = 0
        self.failure: str | None = None
        self.skipped: str | None = None
        self.notes: list[str] = []

    def check(self, ok: bool, witness: str | Callable[[], str]) -> bool:
        self.count += 1
        if not ok and self.failure is None:
            self.failure = witness() if callable(witness) else witness
        return ok

    def require(self, ok: bool, witness: str | Callable[[], str]) -> None:
        """A check whose failure makes the rest of the run meaningless."""
        if not self.check(ok, witness):
            raise _Abort

    def untestable(self, reason: str) -> None:
        self.skipped = reason
        raise _Abort

    def note(self, text: str) -> None:
        self.notes.append(text)

    def report(self) -> VerifyReport:
        if self.failure is not None:
            return VerifyReport(self.statement_id, self.params, FAIL, self.failure, self.count)
        if self.skipped is not None:
            return VerifyReport(self.statement_id, self.params, UNTESTABLE, self.skipped,
                                self.count)
        return VerifyReport(self.statement_id, self.params, PASS, "; ".join(self.notes),
                            self.count)


def _fmt(v) -> str:
    return v if isinstance(v, str) else str(v)


def _eps(eps: int) -> str:
    return sign_char(eps)


def _run(statement_id: str, body: Callable[[_Run], None], **params) -> VerifyReport:
    run = _Run(statement_id, **params)
    try:
        body(run)
    except _Abort:
        pass
    except DepthExceeded as exc:
        run.skipped = f"needs data past the stored levels: {exc}"
    except (ModuleError, ArithmeticError, ValueError) as exc:
        run.check(False, f"{type(exc).__name__}: {exc}")
    return run.report()


def _need_depth(run: _Run, depth: int, needed: int, what: str) -> None:
    if depth < needed:
        run.untestable(f"{what} needs depth >= {needed}, got {depth}")


def _iso(run: _Run, a: WeightModule, b: WeightModule, what: str) -> ModuleMap | None:
    phi = is_isomorphic(a, b)
    run.check(phi is not None, f"no isomorphism found: {what}")
    return phi


def _valid(run: _Run, m: WeightModule) -> None:
    bad = m.invariant_violations()
    run.require(not bad, lambda: f"{m.name}: e f - f e != [t; 0] at level {bad[0][0]}")


def _labelled(m: WeightModule, level: int, coords) -> str:
    return ModuleVector({level: coords}).render(m)


# ---------------------------------------------------------------------------
# q-integers
# ---------------------------------------------------------------------------

def verify_lemma1(bound: int = 10) -> VerifyReport:
    """[a+k][b+k] - [a][b] = [k][a+b+k] for all a, b, k in [-bound, bound]."""
    def body(run: _Run):
        rng = range(-bound, bound + 1)
        for a in rng:
            for b in rng:
                for k in rng:
                    run.check(check_qint_lemma(a, b, k), f"fails at a={a}, b={b}, k={k}")
        run.note(f"{run.count} instances")
    return _run("Lemma1", body, bound=bound)


# ---------------------------------------------------------------------------
# the algebra
# ---------------------------------------------------------------------------

def multiplier(mono_product: MonoProduct = monomial_product):
    """Element multiplication driven by a given monomial product."""
    def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        out: dict = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                for m, c in mono_product(tuple(m1), tuple(m2)):
                    out[m] = out.get(m, ZERO) + c * c1 * c2
        return AlgebraElement(out)
    return mul


def _mono(a: int, b: int, c: int) -> AlgebraElement:
    return AlgebraElement({(a, b, c): ONE})


def _pow(mul, x: AlgebraElement, k: int) -> AlgebraElement:
    out = _mono(0, 0, 0)
    for _ in range(k):
        out = mul(out, x)
    return out


def t_equivariance_failure(mono_product: MonoProduct, x: tuple, y: tuple) -> bool:
    """Does the product of x and y differ from the t-free product with t-exponents pulled out?

    With x0, y0 the monomials x, y with t-exponent 0, the claim is
    x y = sum c q^(-2 bx i - 2 by j) f^a t^(k + bx + by) e^c
    over the terms c f^a t^k e^c of x0 y0, where i = a - ax and j = c - cy.
    """
    xa, xb, xc = x
    ya, yb, yc = y
    got = mono_product(x, y)
    base = mono_product((xa, 0, xc), (ya, 0, yc))
    if len(got) != len(base):
        return True
    for (m, g), ((fa, tk, ec), c) in zip(got, base):
        if m != (fa, tk + xb + yb, ec) or g != c.shift(-2 * xb * (fa - xa) - 2 * yb * (ec - yc)):
            break
    else:
        return False
    got = dict(got)
    for (fa, tk, ec), c in base:
        if got.get((fa, tk + xb + yb, ec)) != c.shift(-2 * xb * (fa - xa) - 2 * yb * (ec - yc)):
            return True
    return False


def _pair_witness(x: tuple, y: tuple) -> str:
    return f"t-equivariance fails for {PbwMonomial(*x).render()} * {PbwMonomial(*y).render()}"


def check_associativity(run: _Run, mono_product: MonoProduct = monomial_product,
                        max_exp: int = 3) -> None:
    """Associativity on every triple of monomials f^a t^b e^c with |a|, |b|, |c| <= max_exp.

    Two exact steps.  (1) The product is t-equivariant on every pair of
    monomials that occurs while evaluating (xy)z and x(yz) for such triples.
    (2) Associativity holds on all t-free triples.  Under (1) both sides of
    each triple are the t-free result times the same power of q in every
    output term, so (2) settles all triples.
    """
    monos = [(a, b, c) for a in range(max_exp + 1) for b in range(-max_exp, max_exp + 1)
             for c in range(max_exp + 1)]
    middles = set()
    for x in monos:
        for y in monos:
            if not run.check(not t_equivariance_failure(mono_product, x, y),
                             lambda: _pair_witness(x, y)):
                return
            middles.update(m for m, _ in mono_product(x, y))
    for m in sorted(middles):
        for z in monos:
            for pair in ((m, z), (z, m)):
                if not run.check(not t_equivariance_failure(mono_product, *pair),
                                 lambda: _pair_witness(*pair)):
                    return
    # t-free triples, with every product scaled by (q - q^-1)^max_exp so that
    # the coefficients are Laurent polynomials; both sides pick up the same factor
    scale = QMINUS ** max_exp
    scaled_cache: dict = {}

    def scaled(x: tuple, y: tuple) -> tuple:
        key = (x, y)
        if key not in scaled_cache:
            scaled_cache[key] = tuple((m, c * scale) for m, c in mono_product(x, y))
        return scaled_cache[key]

    mul = multiplier(scaled)
    flat = [(a, 0, c) for a in range(max_exp + 1) for c in range(max_exp + 1)]
    elems = {x: _mono(*x) for x in flat}
    right = {(y, z): mul(elems[y], elems[z]) for y in flat for z in flat}
    for x in flat:
        for y in flat:
            xy = mul(elems[x], elems[y])
            for z in flat:
                if not run.check(mul(xy, elems[z]) == mul(elems[x], right[y, z]),
                                 lambda: "(xy)z != x(yz) for x={}, y={}, z={}".format(
                                     *(PbwMonomial(*m).render() for m in (x, y, z)))):
                    return
    run.note(f"associativity: {len(monos) ** 3} monomial triples via "
             f"{len(monos) ** 2 + 2 * len(middles) * len(monos)} equivariance pairs "
             f"and {len(flat) ** 3} t-free triples")


def random_element(rng: random.Random, terms: int = 3, max_exp: int = 3) -> AlgebraElement:
    out = {}
    for _ in range(terms):
        mono = (rng.randint(0, max_exp), rng.randint(-max_exp, max_exp), rng.randint(0, max_exp))
        coeff = RatScalar.q_power(rng.randint(-2, 2), rng.choice([-2, -1, 1, 3]))
        out[mono] = coeff
    return AlgebraElement(out)


def verify_algebra_relations(s_max: int = 8, samples: int = 20, seed: int = 0,
                             mono_product: MonoProduct = monomial_product) -> VerifyReport:
    """Defining relations, both forms of the e-f^s rule, associativity, centrality, sigma."""
    mul = multiplier(mono_product)

    def body(run: _Run):
        qq = lambda k: RatScalar.q_power(k)  # noqa: E731
        # defining relations
        run.check(mul(T, T_INV) == _mono(0, 0, 0) and mul(T_INV, T) == _mono(0, 0, 0),
                  "t t^-1 != 1")
        run.check(mul(mul(T, E), T_INV) == E.scale(qq(2)),
                  lambda: f"t e t^-1 = {render_element(mul(mul(T, E), T_INV))}")
        run.check(mul(mul(T, F), T_INV) == F.scale(qq(-2)),
                  lambda: f"t f t^-1 = {render_element(mul(mul(T, F), T_INV))}")
        comm = mul(E, F) - mul(F, E)
        run.check(comm == (T - T_INV).scale(QQINV_INV),
                  lambda: f"e f - f e = {render_element(comm)}")
        # e f^s = f^s e + [s] f^(s-1) [t; 1-s], right side written down directly
        for s in range(1, s_max + 1):
            lhs = mul(E, _pow(mul, F, s))
            rhs = AlgebraElement({
                (s, 0, 1): ONE,
                (s - 1, 1, 0): qint(s) * qq(1 - s) * QQINV_INV,
                (s - 1, -1, 0): -(qint(s) * qq(s - 1) * QQINV_INV),
            })
            run.check(lhs == rhs, lambda: f"e f^{s} = {render_element(lhs)}")
        # f e^s = e^s f - [s] e^(s-1) [t; s-1], compared after moving t to the left
        for s in range(1, s_max + 1):
            es = _mono(0, 0, s)
            lhs = mul(F, es) - mul(es, F)
            rhs = AlgebraElement({
                (0, 1, s - 1): -(qint(s) * qq(1 - s) * QQINV_INV),
                (0, -1, s - 1): qint(s) * qq(s - 1) * QQINV_INV,
            })
            run.check(lhs == rhs, lambda: f"f e^{s} - e^{s} f = {render_element(lhs)}")
        check_associativity(run, mono_product)
        cas = casimir()
        for g in (E, F, T, T_INV):
            run.check(mul(cas, g) == mul(g, cas),
                      lambda: f"C does not commute with {render_element(g)}")
        monos = [(a, b, c) for a in range(4) for b in range(-3, 4) for c in range(4)]
        for x in monos:
            xe = _mono(*x)
            run.check(mul(cas, xe) == mul(xe, cas),
                      lambda: f"C does not commute with {PbwMonomial(*x).render()}")
            run.check(sigma(sigma(xe)) == xe,
                      lambda: f"sigma^2 != id on {PbwMonomial(*x).render()}")
        flip = {x: (x[2], x[1], x[0]) for x in monos}
        for x in monos:
            for y in monos:
                lhs = sigma(AlgebraElement(dict(mono_product(x, y))))
                rhs = AlgebraElement(dict(mono_product(flip[y], flip[x])))
                run.check(lhs == rhs, lambda: "sigma(xy) != sigma(y) sigma(x) for x={}, y={}"
                          .format(PbwMonomial(*x).render(), PbwMonomial(*y).render()))
        rng = random.Random(seed)
        for _ in range(samples):
            x, y, z = (random_element(rng) for _ in range(3))
            run.check(mul(mul(x, y), z) == mul(x, mul(y, z)),
                      lambda: f"(xy)z != x(yz) for x={render_element(x)}, "
                              f"y={render_element(y)}, z={render_element(z)}")
            run.check(mul(cas, x) == mul(x, cas),
                      lambda: f"C x != x C for x={render_element(x)}")
            run.check(sigma(mul(x, y)) == mul(sigma(y), sigma(x)),
                      lambda: f"sigma(xy) != sigma(y) sigma(x) for x={render_element(x)}, "
                              f"y={render_element(y)}")
            word = [rng.choice((E, F, T, T_INV)) for _ in range(rng.randint(1, 6))]
            prod = _mono(0, 0, 0)
            for g in word:
                prod = mul(prod, g)
            k = sum(1 for g in word if g is E or g is F)
            run.check(degree_bound(prod) <= k,
                      lambda: f"product of {k} e/f letters has a term of degree "
                              f"{degree_bound(prod)}")
    return _run("Relations", body, s_max=s_max, samples=samples, seed=seed)


# ---------------------------------------------------------------------------
# Casimir structure of T and its consequences
# ---------------------------------------------------------------------------

def casimir_constant(n: int, j: int) -> RatScalar:
    """c_j = (q^(2j-n-1) + q^(-2j+n+1))/(q - q^-1)^2."""
    return (Q ** (2 * j - n - 1) + Q ** (n + 1 - 2 * j)) * QQINV_INV * QQINV_INV


def expected_s_casimir(n: int, eps: int, level: int) -> Matrix:
    """Lower bidiagonal C on S(n, eps) at a level <= n, basis f^a e^(n+1-level+a) with a ascending."""
    size = level + 1
    rows = [[ZERO] * size for _ in range(size)]
    for a in range(size):
        rows[a][a] = casimir_constant(n, n - level + 1 + a) * eps
        if a + 1 < size:
            rows[a + 1][a] = ONE
    return Matrix(rows, size)


def _s_vector(s: WeightModule, a: int, j: int) -> ModuleVector:
    return s.vector(_c.s_label(a, j))


def verify_theorem2(n: int, eps: int, depth: int = 12,
                    builders: Builders = DEFAULT) -> VerifyReport:
    def body(run: _Run):
        _need_depth(run, depth, n + 2, f"T({n},{_eps(eps)})")
        s = builders.s_module(n, eps, depth)
        _valid(run, s)
        value = casimir_scalar(RatScalar.q_power(n, eps))
        z = _c.theorem_z_vector(n, eps)
        zl = n + 1
        shifted = casimir_matrix(s, zl) - Matrix.scalar_matrix(s.dims[zl], value)
        cz = shifted.apply(z.components[zl])
        top = _s_vector(s, n + 1, n + 1).components[zl]
        run.check(cz == top, lambda: f"(C - eps c) z = {_labelled(s, zl, cz)}")
        c2z = shifted.apply(cz)
        run.check(not any(c2z), lambda: f"(C - eps c)^2 z = {_labelled(s, zl, c2z)}")
        ez = s.E(zl).apply(z.components[zl])
        run.check(ez == _s_vector(s, n, n + 1).components[n],
                  lambda: f"e z = {_labelled(s, n, ez)}")
        lv, fz = zl, z.components[zl]
        for j in range(1, depth - n):
            prev = fz
            fz = s.F(lv).apply(fz)
            lv += 1
            got = s.E(lv).apply(fz)
            want = [c * (-(qint(j) * qint(n + 1 + j)) * eps) for c in prev]
            _, idx = s.find_label(_c.s_label(n + j, n + 1))
            want[idx] += ONE
            run.check(got == tuple(want), lambda: f"e f^{j} z = {_labelled(s, lv - 1, got)}")
        gen = generalized_eigenspace(s, value, 2)
        dims = [len(gen[i]) for i in range(depth + 1)]
        expect = [1 if i <= n else 2 for i in range(depth + 1)]
        run.check(dims == expect, f"generalized eigenspace dims {dims}, expected {expect}")
        strict = generalized_eigenspace(s, value, 1, range(n + 1, depth + 1))
        run.check(all(len(v) == 1 for v in strict.values()),
                  "z should be a generalized but not a true eigenvector")
        for i in range(n + 1):
            cm = casimir_matrix(s, i)
            run.check(cm == expected_s_casimir(n, eps, i),
                      f"Casimir matrix on S at level {i} differs from the bidiagonal form")
        t = builders.t_module(n, eps, depth)
        _valid(run, t)
        for i in range(n + 2, depth + 1):
            run.check(t.E(i)[0, 0] == qint(i) * qint(n - i + 1) * eps,
                      lambda: f"E(z_{i}) has z-coefficient {render_scalar(t.E(i)[0, 0])}")
        phi = map_from_generator(t, t.vector(f"z{n + 1}"), s, z)
        run.check(phi.is_injective(), "T -> S is not injective")
        for i in range(depth + 1):
            img = phi.blocks[i]
            same = bool(gen[i]) and img.rank() == len(gen[i]) and \
                Matrix.from_columns(img.columns() + gen[i], s.dims[i]).rank() == len(gen[i])
            run.check(same, f"image of T at level {i} is not the generalized eigenspace")
        run.note(f"T({n},{_eps(eps)}) -> S({n},{_eps(eps)})^(eps c): z{n + 1} -> "
                 f"{z.render(s)}")
    return _run("Thm2", body, n=n, eps=_eps(eps), depth=depth)


def verify_corollary3(n: int, eps: int, depth: int = 12,
                      builders: Builders = DEFAULT) -> VerifyReport:
    def body(run: _Run):
        _need_depth(run, depth, n + 2, f"T({n},{_eps(eps)})")
        t = builders.t_module(n, eps, depth)
        _valid(run, t)
        sub, inc = submodule_generated(t, [t.vector("v0")])
        _iso(run, sub, builders.verma(eps, n, depth), f"U v0 vs M({_eps(eps)}q^{n})")
        quo, proj = quotient(t, inc)
        low = builders.verma(eps, -n - 2, depth - n - 1)
        _iso(run, quo, low, f"T/U v0 vs M({_eps(eps)}q^{-n - 2})")
        run.check(inc.is_homomorphism() and proj.is_homomorphism(), "maps do not intertwine")
        run.check(inc.is_injective(), "inclusion is not injective")
        run.check(proj.is_surjective(), "projection is not surjective")
        for i in range(depth + 1):
            run.check((proj.blocks[i] @ inc.blocks[i]).is_zero(),
                      f"projection does not kill the submodule at level {i}")
            run.check(inc.blocks[i].rank() + proj.blocks[i].rank() == t.dims[i],
                      f"image != kernel at level {i}")
        run.check(character(quo) == character(pad_top(low, n + 1)),
                  "quotient character differs from the Verma character")
        run.check(character(t) == add_characters(character(sub), character(quo)),
                  "characters are not additive")
        report = completeness_check(t)
        run.check(report.outcome == "complete",
                  lambda: f"T not complete: {report.render()}")
        hi = completeness_check(builders.verma(eps, n, depth))
        run.check(hi.outcome == "complete", lambda: f"M(eps q^n) not complete: {hi.render()}")
        lo = completeness_check(builders.verma(eps, -n - 2, depth))
        pair = lo.pair(n)
        run.check(lo.outcome == "not-complete" and pair is not None and pair.status == "fails",
                  f"M({_eps(eps)}q^{-n - 2}) should fail completeness at n={n}")
        try:
            parts = decompose(t)
            kinds = [p.label() for p in parts]
        except DecompositionError as exc:
            kinds = [f"error: {exc}"]
        run.check(kinds == [f"T({n},{_eps(eps)})"], f"decompose(T) = {kinds}")
        zv = t.vector(f"z{n + 1}")
        value = casimir_scalar(RatScalar.q_power(n, eps))
        c_shift = casimir() - AlgebraElement({(0, 0, 0): value})
        gens = {
            "t - eps q^(-n-2)": T - AlgebraElement({(0, 0, 0): RatScalar.q_power(-n - 2, eps)}),
            f"e^{n + 2}": _mono(0, 0, n + 2),
            "(C - eps c)^2": c_shift * c_shift,
        }
        for name, x in gens.items():
            out = apply(t, x, zv)
            run.check(out.is_zero(), lambda: f"({name}) z{n + 1} = {out.render(t)}")
        run.note(f"0 -> M({_eps(eps)}q^{n}) -> T -> M({_eps(eps)}q^{-n - 2}) -> 0 exact on "
                 f"levels 0..{depth}; completeness fails for M({_eps(eps)}q^{-n - 2}) at n={n}")
    return _run("Cor3", body, n=n, eps=_eps(eps), depth=depth)


def verify_proposition4(n: int, eps: int, depth: int = 12,
                        builders: Builders = DEFAULT) -> VerifyReport:
    def body(run: _Run):
        _need_depth(run, depth, n + 2, f"T({n},{_eps(eps)})")
        t = builders.t_module(n, eps, depth)
        _valid(run, t)
        _, low_inc = submodule_generated(t, [t.vector(f"v{n + 1}")])
        tq, proj = quotient(t, low_inc)
        _iso(run, tq, builders.t_quotient(n, eps, depth), "T/M(eps q^(-n-2)) vs constructor")
        head = proj.apply(t.vector("v0"))
        vsub, vinc = submodule_generated(tq, [head])
        simple = builders.finite_simple(n, eps)
        run.check([d for d in vsub.dims if d] == [1] * (n + 1),
                  f"U v0 in T/M has dims {vsub.dims}")
        _iso(run, vsub, simple, f"U v0 vs V({n},{_eps(eps)})")
        for i in range(1, n + 1):
            run.check(vsub.E(i).rank() == vsub.dims[i],
                      f"V({n}) has a singular vector at level {i}")
        rest, _ = quotient(tq, vinc)
        low = builders.verma(eps, -n - 2, depth - n - 1)
        _iso(run, rest, low, f"(T/M)/V vs M({_eps(eps)}q^{-n - 2})")
        run.check(character(tq) == add_characters(character(vsub), character(rest)),
                  "characters are not additive")
        run.check(character(tq) == add_characters(character(simple),
                                                   character(pad_top(low, n + 1))),
                  "ch(T/M) != ch V + ch M(eps q^(-n-2))")
        run.note(f"0 -> V({n},{_eps(eps)}) -> T/M -> M({_eps(eps)}q^{-n - 2}) -> 0")
    return _run("Prop4", body, n=n, eps=_eps(eps), depth=depth)


def _dual_checks(run: _Run, m: WeightModule, builders: Builders) -> WeightModule:
    d = builders.restricted_dual(m)
    run.check(d.invariant_violations() == [], f"{d.name} violates e f - f e = [t; 0]")
    run.check(d.dims == m.dims, f"dims of {m.name} and its dual differ")
    run.check(character(d) == character(m), f"ch {m.name}^sigma != ch {m.name}")
    dd = builders.restricted_dual(d)
    run.check(dd == m, f"double dual of {m.name} is not the module itself")
    _iso(run, m, dd, f"{m.name} vs its double dual")
    return d


def verify_proposition7(n: int, eps: int, depth: int = 12,
                        builders: Builders = DEFAULT) -> VerifyReport:
    def body(run: _Run):
        sum_parts = (SummandSpec("T", eps, n), SummandSpec("Verma", eps, n + 4))
        _need_depth(run, depth, required_depth(sum_parts), f"T({n},{_eps(eps)}) + "
                    f"M({_eps(eps)}q^{n + 4})")
        samples = [builders.finite_simple(n, eps), builders.verma(eps, n, depth),
                   builders.verma(eps, -n - 2, depth), builders.t_module(n, eps, depth),
                   builders.t_quotient(n, eps, depth)]
        for m in samples:
            _dual_checks(run, m, builders)
        v = samples[0]
        _iso(run, v, builders.restricted_dual(v), f"V({n},{_eps(eps)}) vs its dual")
        parts = [builders.t_module(n, eps, depth), builders.verma(eps, n + 4, depth)]
        total = direct_sum(*parts)
        dual_total = builders.restricted_dual(total)
        dual_sum = direct_sum(*(builders.restricted_dual(p) for p in parts))
        _iso(run, dual_total, dual_sum, "dual of a sum vs sum of duals")
        try:
            got = Counter(s.label() for s in decompose(dual_total))
            want = Counter(s.label() for p in parts for s in decompose(restricted_dual(p)))
        except DecompositionError as exc:
            got, want = Counter([str(exc)]), Counter()
        run.check(got == want, f"dual of sum decomposes as {sorted(got)}, expected {sorted(want)}")
        run.note(f"dual of T({n},{_eps(eps)}) + M({_eps(eps)}q^{n + 4}) = "
                 + " + ".join(sorted(got.elements())))
    return _run("Prop7", body, n=n, eps=_eps(eps), depth=depth)


# ---------------------------------------------------------------------------
# self-duality
# ---------------------------------------------------------------------------

def sharp_closed_form(n: int, eps: int, i: int) -> RatScalar:
    """Coefficient of v_i^* (i <= n) or z_i^* (i > n) in v_i^#."""
    if i <= n:
        return qfact(i) * qfact(i) * qbinom(n, i) * (eps ** i)
    sign = eps ** (i - 1) * (-1) ** (i - n - 1)
    c = qfact(n) * qfact(i - n - 1)
    return c * c * qbinom(i, n + 1) * sign


def theorem8_witness(n: int, eps: int, depth: int,
                     builders: Builders = DEFAULT) -> tuple[WeightModule, WeightModule, ModuleMap]:
    """T, T^sigma and the map v_i -> F'^i v_0^*, z_i -> eps^n ([n]!)^2 F'^(i-n-1) v_(n+1)^*."""
    t = builders.t_module(n, eps, depth)
    d = builders.restricted_dual(t)
    vs, zs = [], {}
    cur = d.vector("v0*").components[0]
    vs.append(cur)
    for i in range(1, depth + 1):
        cur = d.F(i - 1).apply(cur)
        vs.append(cur)
    scale = qfact(n) * qfact(n) * (eps ** n)
    cur = tuple(c * scale for c in d.vector(f"v{n + 1}*").components[n + 1])
    zs[n + 1] = cur
    for i in range(n + 2, depth + 1):
        cur = d.F(i - 1).apply(cur)
        zs[i] = cur
    blocks = []
    for i in range(depth + 1):
        cols = [vs[i]] if i <= n else [zs[i], vs[i]]
        blocks.append(Matrix.from_columns(cols, d.dims[i]))
    return t, d, ModuleMap(t, d, blocks)


def verify_theorem8(n: int, eps: int, depth: int = 12,
                    builders: Builders = DEFAULT) -> VerifyReport:
    def body(run: _Run):
        _need_depth(run, depth, n + 2, f"T({n},{_eps(eps)})")
        t, d, phi = theorem8_witness(n, eps, depth, builders)
        _valid(run, d)
        bad = phi.violations()
        run.check(not bad, lambda: f"v -> v#, z -> z# is not a module map: {bad[0]}")
        run.check(phi.is_invertible(), "v -> v#, z -> z# is not invertible on every level")
        for i in range(depth + 1):
            col = phi.blocks[i].column(0 if i <= n else 1)
            label = f"v{i}*" if i <= n else f"z{i}*"
            want = d.vector(label).scale(sharp_closed_form(n, eps, i)).components[i]
            run.check(col == want, lambda: f"v{i}# = {_labelled(d, i, col)}, closed form "
                                          f"{_labelled(d, i, want)}")
        v = phi.blocks[n + 1].column(1)
        run.note(f"v{n + 1}# = {_labelled(d, n + 1, v)}")
    return _run("Thm8", body, n=n, eps=_eps(eps), depth=depth)


def verify_theorem8_verma(eps: int, m: int, depth: int = 12,
                          builders: Builders = DEFAULT) -> VerifyReport:
    def body(run: _Run):
        if m >= 0:
            run.untestable("self-duality is claimed only for m < 0")
        v = builders.verma(eps, m, depth)
        d = builders.restricted_dual(v)
        _valid(run, d)
        phi = _iso(run, v, d, f"M({_eps(eps)}q^{m}) vs its dual")
        if phi is not None:
            run.note(f"M({_eps(eps)}q^{m}) = M({_eps(eps)}q^{m})^sigma on levels 0..{depth}")
    return _run("Thm8-verma", body, eps=_eps(eps), m=m, depth=depth)


def verify_corollary9(n: int, eps: int, depth: int = 12,
                      builders: Builders = DEFAULT) -> VerifyReport:
    def body(run: _Run):
        _need_depth(run, depth, n + 2, f"T({n},{_eps(eps)})")
        dual = builders.restricted_dual(builders.verma(eps, n, depth))
        t = builders.t_module(n, eps, depth)
        _, low = submodule_generated(t, [t.vector(f"v{n + 1}")])
        tq, _ = quotient(t, low)
        run.check(character(dual) == character(tq), "characters differ")
        run.check(dual.dims == tq.dims, f"dims {dual.dims} vs {tq.dims}")
        phi = _iso(run, dual, tq, f"M({_eps(eps)}q^{n})^sigma vs T/M")
        if phi is not None:
            run.note(f"M({_eps(eps)}q^{n})^sigma = T({n},{_eps(eps)})/M({_eps(eps)}q^{-n - 2})")
    return _run("Cor9", body, n=n, eps=_eps(eps), depth=depth)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SummandSpec:
    """A summand type: ("Verma", eps, m) or ("T" | "TmodM" | "V", eps, n)."""

    kind: str
    eps: int
    index: int

    def params(self) -> dict[str, int]:
        key = "m" if self.kind == "Verma" else "n"
        return {"eps": self.eps, key: self.index}

    def build(self, depth: int) -> WeightModule:
        return summand_model(self.kind, self.params(), depth)

    def label(self) -> str:
        s = _eps(self.eps)
        if self.kind == "Verma":
            return f"Verma({s},{self.index})"
        if self.kind == "TmodM":
            return f"T({self.index},{s})/M({s}q^{-self.index - 2})"
        return f"{self.kind}({self.index},{s})"

    def casimir_index(self) -> int:
        """The n >= -1 of the Casimir block."""
        if self.kind == "Verma" and self.index < 0:
            return -self.index - 2
        return self.index

    def dual(self) -> "SummandSpec":
        if self.kind == "Verma" and self.index >= 0:
            return SummandSpec("TmodM", self.eps, self.index)
        if self.kind == "TmodM":
            return SummandSpec("Verma", self.eps, self.index)
        return self


def random_sums(count: int = 50, seed: int = 0, max_parts: int = 3
                ) -> list[tuple[SummandSpec, ...]]:
    """Random sums of Verma(eps, m), m in [-6, 6], and T(n, eps), n in [0, 4].

    All parts of one sum share eps and the parity of the weights, so they fit
    on one weight strand.  Some draws repeat a part and some pick a partner
    with the same Casimir value, so those cases are always covered.
    """
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        eps = rng.choice((1, -1))
        parity = rng.randint(0, 1)
        vermas = [SummandSpec("Verma", eps, m) for m in range(-6, 7) if m % 2 == parity]
        ts = [SummandSpec("T", eps, n) for n in range(0, 5) if n % 2 == parity]
        pool = vermas + ts
        parts = [rng.choice(pool)]
        for _ in range(rng.randint(1, max_parts) - 1):
            roll = rng.random()
            prev = rng.choice(parts)
            if roll < 0.3:
                parts.append(prev)
            elif roll < 0.6:
                partners = [p for p in pool if p.casimir_index() == prev.casimir_index()]
                parts.append(rng.choice(partners))
            else:
                parts.append(rng.choice(pool))
        out.append(tuple(parts))
    return out


def required_depth(parts: Sequence[SummandSpec]) -> int:
    """Levels a sum needs before its Casimir blocks can be told apart.

    A part headed at level h (below the top of the sum) in block n needs
    level h + n + 1 when it carries the upper head of the block, and its own
    head level otherwise.
    """
    if not parts:
        return 0
    tops = [p.index for p in parts]
    high = max(tops)
    need = 0
    for p in parts:
        head = (high - p.index) // 2
        if p.kind == "Verma" and p.index < 0:
            need = max(need, head + 1)
        else:
            need = max(need, head + p.casimir_index() + 2)
    return need


def build_sum(parts: Sequence[SummandSpec], depth: int) -> WeightModule:
    return direct_sum(*(p.build(depth) for p in parts))


def _type_counter(parts: Iterable) -> Counter:
    return Counter(p.label() for p in parts)


def verify_decompose_roundtrip(parts: Sequence[SummandSpec], depth: int = 12) -> VerifyReport:
    def body(run: _Run):
        _need_depth(run, depth, required_depth(parts), "this sum")
        m = build_sum(parts, depth)
        found = decompose(m)
        got, want = _type_counter(found), _type_counter(parts)
        run.check(got == want, f"found {sorted(got.elements())}, expected {sorted(want.elements())}")
        models = [_c_model(s, depth) for s in found]
        reassembled = direct_sum(*models)
        _iso(run, reassembled, m, "reassembled sum vs input")
        run.note(" + ".join(s.label() for s in found))
    return _run("Prop6-decompose", body, parts="+".join(p.label() for p in parts), depth=depth)


def _c_model(s, depth: int) -> WeightModule:
    return summand_model(s.kind, s.param, depth)


COR10_SAMPLES: tuple[tuple[SummandSpec, ...], ...] = (
    (SummandSpec("T", 1, 1), SummandSpec("T", 1, 1)),
    (SummandSpec("T", 1, 0), SummandSpec("Verma", 1, -2)),
    (SummandSpec("T", -1, 2), SummandSpec("Verma", -1, -4), SummandSpec("Verma", -1, -6)),
    (SummandSpec("Verma", 1, 0),),
    (SummandSpec("Verma", -1, 3), SummandSpec("T", -1, 1)),
    (SummandSpec("Verma", 1, 2), SummandSpec("Verma", 1, -4), SummandSpec("T", 1, 2)),
    (SummandSpec("Verma", 1, -1), SummandSpec("T", 1, 3)),
    (),
)


def cor10_allowed(s) -> bool:
    """T(n, eps), M(eps q^(-n-2)) and T/M(eps q^(-n-2)) for n >= 0, plus M(eps q^-1)."""
    if s.kind in ("T", "TmodM"):
        return s.param["n"] >= 0
    return s.kind == "Verma" and s.param["m"] <= -1


def verify_corollary10(samples: Sequence[Sequence[SummandSpec]] = COR10_SAMPLES,
                       depth: int = 12, builders: Builders = DEFAULT) -> VerifyReport:
    def body(run: _Run):
        _need_depth(run, depth, max((required_depth(p) for p in samples), default=0),
                    "the sample sums")
        lines = []
        for parts in samples:
            m = build_sum(parts, depth) if parts else zero_module(depth)
            found = decompose(builders.restricted_dual(m))
            bad = [s.label() for s in found if not cor10_allowed(s)]
            name = "+".join(p.label() for p in parts) or "0"
            run.check(not bad, f"dual of {name} has summands outside the list: {bad}")
            got = _type_counter(found)
            want = _type_counter(p.dual() for p in parts)
            run.check(got == want, f"dual of {name} decomposes as {sorted(got.elements())}, "
                                   f"expected {sorted(want.elements())}")
            lines.append(f"{name} -> " + ("+".join(s.label() for s in found) or "0"))
        run.note("; ".join(lines))
    return _run("Cor10", body, depth=depth, samples=len(samples))


# ---------------------------------------------------------------------------
# batch
# ---------------------------------------------------------------------------

STATEMENTS = ("Lemma1", "Relations", "Thm2", "Cor3", "Prop4", "Prop7", "Thm8", "Thm8-verma",
              "Cor9", "Cor10", "Prop6-decompose")

PER_N = {
    "Thm2": verify_theorem2,
    "Cor3": verify_corollary3,
    "Prop4": verify_proposition4,
    "Prop7": verify_proposition7,
    "Thm8": verify_theorem8,
    "Cor9": verify_corollary9,
}


def run_statement(statement_id: str, depth: int = 12, n_max: int = 4,
                  n: int | None = None, eps: int | None = None,
                  builders: Builders = DEFAULT, roundtrips: int = 50) -> list[VerifyReport]:
    """All reports for one statement; n and eps narrow the sweep."""
    signs = (1, -1) if eps is None else (eps,)
    ns = range(n_max + 1) if n is None else (n,)
    if statement_id == "Lemma1":
        return [verify_lemma1()]
    if statement_id == "Relations":
        return [verify_algebra_relations()]
    if statement_id in PER_N:
        fn = PER_N[statement_id]
        return [fn(k, s, depth, builders) for k in ns for s in signs]
    if statement_id == "Thm8-verma":
        ms = range(-6, 0) if n is None else (n,)
        return [verify_theorem8_verma(s, m, depth, builders) for m in ms for s in signs]
    if statement_id == "Cor10":
        return [verify_corollary10(depth=depth, builders=builders)]
    if statement_id == "Prop6-decompose":
        sums = random_sums(roundtrips)
        if eps is not None:
            sums = [p for p in sums if p[0].eps == eps]
        return [verify_decompose_roundtrip(p, depth) for p in sums]
    raise KeyError(f"unknown statement {statement_id!r}; known: {', '.join(STATEMENTS)}")


def run_all(depth: int = 12, n_max: int = 4, builders: Builders = DEFAULT,
            roundtrips: int = 50) -> list[VerifyReport]:
    reports = []
    for sid in STATEMENTS:
        reports.extend(run_statement(sid, depth, n_max, builders=builders,
                                     roundtrips=roundtrips))
    return sort_reports(reports)


def sort_reports(reports: Iterable[VerifyReport]) -> list[VerifyReport]:
    order = {sid: i for i, sid in enumerate(STATEMENTS)}
    return sorted(reports, key=lambda r: (order.get(r.statement_id, len(order)),
                                          r.statement_id, r.params))


def render_reports(reports: Sequence[VerifyReport]) -> str:
    lines = [r.render() for r in reports]
    counts = Counter(r.outcome for r in reports)
    lines.append(f"{counts[PASS]} pass, {counts[FAIL]} fail, {counts[UNTESTABLE]} untestable")
    return "\n".join(lines)


def reports_json(reports: Sequence[VerifyReport]) -> str:
    return json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2)


__all__ = ["Builders", "COR10_SAMPLES", "DEFAULT", "FAIL", "PASS", "STATEMENTS", "SummandSpec",
           "UNTESTABLE", "VerifyReport", "build_sum", "check_associativity", "multiplier",
           "random_sums", "render_reports", "reports_json", "run_all", "run_statement",
           "sharp_closed_form", "theorem8_witness", "verify_algebra_relations",
           "verify_corollary10", "verify_corollary3", "verify_corollary9",
           "verify_decompose_roundtrip", "verify_lemma1", "verify_proposition4",
           "verify_proposition7", "verify_theorem2", "verify_theorem8", "verify_theorem8_verma"]
