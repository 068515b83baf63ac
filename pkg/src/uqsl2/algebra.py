"""The algebra U_q(sl2) in the PBW basis f^a t^b e^c.

Elements are immutable linear combinations of monomials with coefficients in
Q(q).  Every public constructor and every product returns PBW normal form, so
two elements are equal exactly when their term dictionaries agree.

Rewriting uses only

    t e = q^2 e t,     t f = q^-2 f t,
    e f^s = f^s e + [s] f^(s-1) [t; 1-s],
    [t; a] = (q^a t - q^-a t^-1)/(q - q^-1).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Mapping, NamedTuple

from .scalars import (ONE, QQINV_INV, ZERO, RatScalar, ScalarLike, parse_scalar, qint,
                      render_scalar, scalar)


class PbwMonomial(NamedTuple):
    """f^f_exp t^t_exp e^e_exp, in that order."""

    f_exp: int
    t_exp: int
    e_exp: int

    def render(self) -> str:
        parts = []
        for sym, k in (("f", self.f_exp), ("t", self.t_exp), ("e", self.e_exp)):
            if k == 1:
                parts.append(sym)
            elif k:
                parts.append(f"{sym}^{k}")
        return "*".join(parts) if parts else "1"


IDENTITY = PbwMonomial(0, 0, 0)


class AlgebraElement:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, ScalarLike] | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                m = PbwMonomial(*m)
                if m.f_exp < 0 or m.e_exp < 0:
                    raise ValueError(f"negative PBW exponent in {m}")
                c = scalar(c)
                if c:
                    t[m] = t[m] + c if m in t else c
                    if not t[m]:
                        del t[m]
        self._terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "AlgebraElement":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, f_exp: int = 0, t_exp: int = 0, e_exp: int = 0,
                 coeff: ScalarLike = 1) -> "AlgebraElement":
        return cls({PbwMonomial(f_exp, t_exp, e_exp): coeff})

    @classmethod
    def from_scalar(cls, c: ScalarLike) -> "AlgebraElement":
        return cls({IDENTITY: c})

    @property
    def terms(self) -> dict[PbwMonomial, RatScalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, f_exp: int, t_exp: int, e_exp: int) -> RatScalar:
        return self._terms.get(PbwMonomial(f_exp, t_exp, e_exp), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return not self._terms or set(self._terms) == {IDENTITY}

    def scalar_part(self) -> RatScalar:
        return self._terms.get(IDENTITY, ZERO)

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElement._raw(_add_terms(self._terms, o._terms, ONE))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElement._raw(_add_terms(self._terms, o._terms, -ONE))

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return multiply(self, o)

    def __rmul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return multiply(o, self)

    def __pow__(self, n: int):
        return power(self, n)

    def scale(self, c: ScalarLike) -> "AlgebraElement":
        c = scalar(c)
        if not c:
            return ZERO_ELEMENT
        return AlgebraElement._raw({m: v * c for m, v in self._terms.items()})

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        return render_element(self)

    def __repr__(self):
        return f"AlgebraElement({render_element(self)!r})"


def _coerce(x) -> AlgebraElement | None:
    if isinstance(x, AlgebraElement):
        return x
    try:
        c = scalar(x)
    except TypeError:
        return None
    return AlgebraElement._raw({IDENTITY: c} if c else {})


def _add_terms(a: dict, b: dict, sign: RatScalar) -> dict:
    out = dict(a)
    neg = sign != ONE
    for m, c in b.items():
        if neg:
            c = -c
        if m in out:
            s = out[m] + c
            if s:
                out[m] = s
            else:
                del out[m]
        else:
            out[m] = c
    return out


def _accumulate(out: dict, m, c: RatScalar) -> None:
    if not c:
        return
    if m in out:
        s = out[m] + c
        if s:
            out[m] = s
        else:
            del out[m]
    else:
        out[m] = c


ZERO_ELEMENT = AlgebraElement._raw({})
ONE_ELEMENT = AlgebraElement._raw({IDENTITY: ONE})
E = AlgebraElement._raw({PbwMonomial(0, 0, 1): ONE})
F = AlgebraElement._raw({PbwMonomial(1, 0, 0): ONE})
T = AlgebraElement._raw({PbwMonomial(0, 1, 0): ONE})
T_INV = AlgebraElement._raw({PbwMonomial(0, -1, 0): ONE})


def qpow(k: int) -> RatScalar:
    return RatScalar.q_power(k)


# ---------------------------------------------------------------------------
# normal-form rewriting
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _e_pow_f_pow(c: int, a: int) -> tuple:
    """Normal form of e^c f^a as a tuple of ((i, k, j), coeff)."""
    if c == 0:
        return (((a, 0, 0), ONE),)
    out: dict = {}
    for (i, k, j), coef in _e_pow_f_pow(c - 1, a):
        # e f^i t^k e^j = q^-2k f^i t^k e^(j+1) + [i] f^(i-1) [t;1-i] t^k e^j
        _accumulate(out, (i, k, j + 1), coef * qpow(-2 * k))
        if i:
            base = coef * qint(i) * QQINV_INV
            _accumulate(out, (i - 1, k + 1, j), base * qpow(1 - i))
            _accumulate(out, (i - 1, k - 1, j), -(base * qpow(i - 1)))
    return tuple(out.items())


@lru_cache(maxsize=1 << 16)
def monomial_product(x: tuple, y: tuple) -> tuple:
    """Normal form of (f^a t^b e^c)(f^a' t^b' e^c') as ((monomial), coeff) pairs."""
    a, b, c = x
    a2, b2, c2 = y
    # t^b f^i = q^(-2bi) f^i t^b ;  e^j t^b2 = q^(-2 b2 j) t^b2 e^j
    # the (i, k, j) are distinct, so no terms merge
    return tuple((PbwMonomial(a + i, b + k + b2, j + c2), coef.shift(-2 * b * i - 2 * b2 * j))
                 for (i, k, j), coef in _e_pow_f_pow(c, a2))


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Product in PBW normal form."""
    out: dict = {}
    for m1, c1 in x._terms.items():
        for m2, c2 in y._terms.items():
            c12 = c1 * c2
            for m, c in monomial_product(m1, m2):
                _accumulate(out, m, c * c12)
    return AlgebraElement._raw(out)


Multiplier = Callable[[AlgebraElement, AlgebraElement], AlgebraElement]


def power(x: AlgebraElement, n: int, mul: Multiplier = multiply) -> AlgebraElement:
    if n < 0:
        raise ValueError("negative power of an algebra element")
    out = ONE_ELEMENT
    for _ in range(n):
        out = mul(out, x)
    return out


def product(factors: Iterable[AlgebraElement], mul: Multiplier = multiply) -> AlgebraElement:
    out = ONE_ELEMENT
    for x in factors:
        out = mul(out, x)
    return out


def t_power(b: int) -> AlgebraElement:
    return AlgebraElement.monomial(0, b, 0)


def bracket_t(a: int) -> AlgebraElement:
    """[t; a] = (q^a t - q^-a t^-1)/(q - q^-1)."""
    return AlgebraElement({
        PbwMonomial(0, 1, 0): qpow(a) * QQINV_INV,
        PbwMonomial(0, -1, 0): -(qpow(-a) * QQINV_INV),
    })


def casimir() -> AlgebraElement:
    """C = (q t + q^-1 t^-1)/(q - q^-1)^2 + f e."""
    d = QQINV_INV * QQINV_INV
    return AlgebraElement({
        PbwMonomial(0, 1, 0): qpow(1) * d,
        PbwMonomial(0, -1, 0): qpow(-1) * d,
        PbwMonomial(1, 0, 1): ONE,
    })


def sigma(x: AlgebraElement) -> AlgebraElement:
    """The antiautomorphism e <-> f, t fixed: f^a t^b e^c -> f^c t^b e^a."""
    return AlgebraElement._raw({PbwMonomial(m.e_exp, m.t_exp, m.f_exp): c
                                for m, c in x._terms.items()})


def degree_bound(x: AlgebraElement) -> int:
    """max(f_exp + e_exp) over the terms of x."""
    return max((m.f_exp + m.e_exp for m in x._terms), default=0)


def render_element(x: AlgebraElement) -> str:
    """Render normal-form terms ordered by (f_exp, t_exp, e_exp) descending."""
    if not x._terms:
        return "0"
    out = []
    for m in sorted(x._terms, reverse=True):
        c = x._terms[m]
        neg = c.leading_sign() < 0
        if neg:
            c = -c
        if m == IDENTITY:
            body = render_scalar(c)
            if out and c.is_laurent() and len(c.num.coefficients) > 1:
                body = f"({body})"
        elif c.is_one():
            body = m.render()
        elif c.is_laurent() and len(c.num.coefficients) > 1:
            body = f"({render_scalar(c)})*{m.render()}"
        else:
            body = f"{render_scalar(c)}*{m.render()}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def element_to_json(x: AlgebraElement) -> dict:
    """{"terms": [{"f", "t", "e", "coeff"}...], "rendered"}; terms in rendering order."""
    terms = [{"f": m.f_exp, "t": m.t_exp, "e": m.e_exp, "coeff": render_scalar(x._terms[m])}
             for m in sorted(x._terms, reverse=True)]
    return {"terms": terms, "rendered": render_element(x)}


def element_from_json(d: dict) -> AlgebraElement:
    return AlgebraElement({(t["f"], t["t"], t["e"]): parse_scalar(t["coeff"])
                           for t in d["terms"]})


def parse_element(text: str) -> AlgebraElement:
    """Parse an algebra expression; see ``uqsl2.parser`` for the grammar."""
    from .parser import parse_element as _pe
    return _pe(text)
