"""Exact arithmetic in the field Q(q).

Two value types live here:

``LaurentPoly``
    a finite sum ``sum c_k q^k`` with rational coefficients, stored sparsely.

``RatScalar``
    a reduced quotient of Laurent polynomials.  Canonical form: the
    denominator is an ordinary polynomial with nonzero constant term and
    positive leading coefficient, numerator and denominator share no common
    polynomial factor, and all integer coefficients of the pair are coprime.
    Equality of values is therefore structural equality.

The q-combinatorial helpers ``qint``, ``qfact`` and ``qbinom`` return
``RatScalar`` values that are always Laurent polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping, Union


class ScalarZeroDivision(ZeroDivisionError):
    """Raised when inverting or dividing by the zero element of Q(q)."""


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (index = exponent, lowest first)
# ---------------------------------------------------------------------------

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _content(p: Iterable[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _primitive(p: list[int]) -> list[int]:
    c = _content(p)
    if c == 0:
        return []
    if p[-1] < 0:
        c = -c
    if c == 1:
        return p
    return [x // c for x in p]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, bc in enumerate(b):
            r[i + shift] -= lr * bc
        _trim(r)
    return r


def _prs_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd over Z[q] by the primitive PRS."""
    a = _primitive(list(a))
    b = _primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else [])
    return _primitive(a)


def _eval(p: list[int], x: int) -> int:
    v = 0
    for c in reversed(p):
        v = v * x + c
    return v


def _digits(h: int, x: int) -> list[int]:
    """Balanced base-x digits of h, lowest first."""
    out = []
    half = x // 2
    while h:
        r = h % x
        if r > half:
            r -= x
        out.append(r)
        h = (h - r) // x
    return out


def _divides(g: list[int], a: list[int]) -> bool:
    try:
        _pdiv_exact(a, g)
    except ArithmeticError:
        return False
    return True


def _pgcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd over Z[q].

    Heuristic gcd first: evaluate at a large integer, take the integer gcd,
    read the candidate back from its balanced digits and accept it only if it
    divides both inputs.  Falls back to the primitive PRS.
    """
    if len(a) <= 1 or len(b) <= 1:
        return [1]
    a = _primitive(list(a))
    b = _primitive(list(b))
    bound = min(max(abs(c) for c in a), max(abs(c) for c in b))
    x = 2 * bound + 29
    for _ in range(6):
        h = gcd(_eval(a, x), _eval(b, x))
        g = _primitive(_digits(h, x)) if h else []
        if g:
            # a candidate dividing both inputs is the gcd once x > 2*bound + 1
            if len(g) == 1:
                return [1]
            if _divides(g, a) and _divides(g, b):
                return g
        x = x * 73794 // 27011
    return _prs_gcd(a, b)


def _pdiv_exact(a: list[int], b: list[int]) -> list[int]:
    """Exact quotient a / b over Z[q]; b must divide a."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    out = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c, rem = divmod(r[k + db], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out[k] = c
        if c:
            for i, bc in enumerate(b):
                r[k + i] -= c * bc
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return out


def _to_dense(c: Mapping[int, int], low: int) -> list[int]:
    hi = max(c)
    p = [0] * (hi - low + 1)
    for k, v in c.items():
        p[k - low] = v
    return p


def _from_dense(p: list[int], low: int) -> dict[int, int]:
    return {k + low: v for k, v in enumerate(p) if v}


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

def _norm_coeff(v):
    if type(v) is not int and v.denominator == 1:
        return int(v.numerator)
    return v


class LaurentPoly:
    """Sparse Laurent polynomial in q with rational coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Rational] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    c[int(k)] = _norm_coeff(v if isinstance(v, (int, Fraction)) else Fraction(v))
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, k: int, c: Rational = 1) -> "LaurentPoly":
        return cls({k: c})

    @property
    def coefficients(self) -> dict[int, Rational]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial")
        return max(self._c)

    def valuation(self) -> int:
        if not self._c:
            raise ValueError("valuation of the zero polynomial")
        return min(self._c)

    def leading_coefficient(self) -> Rational:
        return self._c[self.degree()]

    def shift(self, k: int) -> "LaurentPoly":
        if not k:
            return self
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def at_one(self) -> Rational:
        """Sum of coefficients, i.e. the formal value at q = 1."""
        return _norm_coeff(sum(self._c.values(), 0))

    def bar(self) -> "LaurentPoly":
        """Substitute q -> q^-1."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def is_integral(self) -> bool:
        return all(type(v) is int for v in self._c.values())

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly({0: other})
            else:
                return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = _norm_coeff(s)
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                if not other:
                    return LaurentPoly._raw({})
                return LaurentPoly._raw({k: _norm_coeff(v * other) for k, v in self._c.items()})
            return NotImplemented
        return LaurentPoly._raw(_lmul(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly({0: 1})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly({render_laurent(self)!r})"

    def __str__(self):
        return render_laurent(self)


def _pack(c: dict, low: int, bits: int) -> int:
    v = 0
    for k in range(max(c), low - 1, -1):
        v = (v << bits) + c.get(k, 0)
    return v


def _kronecker(a: dict, b: dict) -> dict:
    """Product of integer Laurent polynomials via one big-integer multiplication."""
    la, lb = min(a), min(b)
    bound = max(map(abs, a.values())) * max(map(abs, b.values())) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    h = _pack(a, la, bits) * _pack(b, lb, bits)
    mask, half = (1 << bits) - 1, 1 << (bits - 1)
    out, k = {}, la + lb
    while h:
        r = h & mask
        if r >= half:
            r -= 1 << bits
        if r:
            out[k] = r
        h = (h - r) >> bits
        k += 1
    return out


def _lmul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    if len(a) > 6 and all(type(v) is int for v in a.values()) \
            and all(type(v) is int for v in b.values()):
        return _kronecker(a, b)
    out: dict = {}
    get = out.get
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            out[k] = get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def render_laurent(p: LaurentPoly) -> str:
    """Render as ``c*q^k`` terms, descending in k."""
    if not p._c:
        return "0"
    parts = []
    for k in sorted(p._c, reverse=True):
        v = p._c[k]
        neg = v < 0
        a = -v if neg else v
        if k == 0:
            body = str(a)
        elif a == 1:
            body = f"q^{k}"
        else:
            body = f"{a}*q^{k}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# the field Q(q)
# ---------------------------------------------------------------------------

ScalarLike = Union["RatScalar", LaurentPoly, int, Fraction]

_ONE_DICT = {0: 1}


class RatScalar:
    """An element of Q(q) kept in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: ScalarLike = 0, den: ScalarLike = 1):
        n = _as_ratscalar(num)
        d = _as_ratscalar(den)
        if d.is_zero():
            raise ScalarZeroDivision("denominator is zero")
        if d.is_one():
            self.num, self.den, self._hash = n.num, n.den, None
        else:
            r = n * d.inverse()
            self.num, self.den, self._hash = r.num, r.den, None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RatScalar":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_polys(cls, num: LaurentPoly, den: LaurentPoly) -> "RatScalar":
        """Canonicalize the quotient num/den."""
        return _canonical(dict(num._c), dict(den._c))

    @classmethod
    def q_power(cls, k: int, c: int = 1) -> "RatScalar":
        if not c:
            return ZERO
        return cls._raw(LaurentPoly._raw({k: c}), _ONE)

    @classmethod
    def const(cls, c: Rational) -> "RatScalar":
        return _as_ratscalar(c)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num._c

    def is_one(self) -> bool:
        return self.num._c == _ONE_DICT and self.den._c == _ONE_DICT

    def is_laurent(self) -> bool:
        """True when the value lies in Q[q, q^-1] (the denominator is a constant)."""
        return len(self.den._c) == 1

    def is_monomial(self) -> bool:
        return len(self.den._c) == 1 and len(self.num._c) == 1

    def size(self) -> int:
        """Crude complexity measure used for pivot selection."""
        return len(self.num._c) + len(self.den._c) - 1

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        if self.den._c == _ONE_DICT:
            return self.num
        d = self.den._c[0]
        return LaurentPoly._raw({k: _norm_coeff(Fraction(v, d)) for k, v in self.num._c.items()})

    def leading_sign(self) -> int:
        """Sign of the numerator's top coefficient (the denominator's is positive)."""
        if not self.num._c:
            return 0
        return 1 if self.num._c[max(self.num._c)] > 0 else -1

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o.num._c:
            return self
        if not self.num._c:
            return o
        sd, od = self.den._c, o.den._c
        if sd == _ONE_DICT and od == _ONE_DICT:
            return RatScalar._raw(self.num + o.num, _ONE)
        if sd == od:
            return _canonical((self.num + o.num)._c, dict(sd))
        n = _lmul(self.num._c, od)
        for k, v in _lmul(o.num._c, sd).items():
            s = n.get(k, 0) + v
            if s:
                n[k] = s
            else:
                n.pop(k, None)
        return _canonical(n, _lmul(sd, od))

    __radd__ = __add__

    def __neg__(self):
        return RatScalar._raw(-self.num, self.den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not self.num._c or not o.num._c:
            return ZERO
        sd, od = self.den._c, o.den._c
        if sd == _ONE_DICT and od == _ONE_DICT:
            return RatScalar._raw(LaurentPoly._raw(_lmul(self.num._c, o.num._c)), _ONE)
        if len(o.num._c) == 1 and od == _ONE_DICT:
            (k, c), = o.num._c.items()
            if c == 1 or c == -1:
                return RatScalar._raw(
                    LaurentPoly._raw({e + k: v * c for e, v in self.num._c.items()}), self.den)
        if len(self.num._c) == 1 and sd == _ONE_DICT:
            return o * self
        return _canonical(_lmul(self.num._c, o.num._c), _lmul(sd, od))

    __rmul__ = __mul__

    def shift(self, k: int) -> "RatScalar":
        """Multiply by q^k; the canonical form is preserved."""
        if not k:
            return self
        return RatScalar._raw(LaurentPoly._raw({e + k: v for e, v in self.num._c.items()}),
                              self.den)

    def inverse(self) -> "RatScalar":
        if not self.num._c:
            raise ScalarZeroDivision("inverse of zero in Q(q)")
        return _canonical(dict(self.den._c), dict(self.num._c))

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.num._c == o.num._c and self.den._c == o.den._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num._c)

    def canonicalize(self) -> "RatScalar":
        return RatScalar.from_polys(self.num, self.den)

    def bar(self) -> "RatScalar":
        """Image under the field automorphism q -> q^-1."""
        return RatScalar.from_polys(self.num.bar(), self.den.bar())

    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"RatScalar({render_scalar(self)!r})"


_ONE = LaurentPoly._raw({0: 1})


def _canonical(n: dict, d: dict) -> RatScalar:
    """Build the canonical form of n/d from raw coefficient dicts."""
    if not d:
        raise ScalarZeroDivision("denominator is zero")
    if not n:
        return ZERO
    # clear rational coefficients
    dens = [v.denominator for v in n.values() if type(v) is not int]
    dens += [v.denominator for v in d.values() if type(v) is not int]
    if dens:
        m = lcm(*dens)
        n = {k: int(v * m) for k, v in n.items()}
        d = {k: int(v * m) for k, v in d.items()}
    vd = min(d)
    vn = min(n)
    if len(d) == 1:
        (kd, cd), = d.items()
        g = gcd(_content(n.values()), cd)
        if cd < 0:
            g = -g
        return RatScalar._raw(LaurentPoly._raw({k - kd: v // g for k, v in n.items()}),
                              LaurentPoly._raw({0: cd // g}))
    dp = _to_dense(d, vd)
    np_ = _to_dense(n, vn)
    g = _pgcd(np_, dp)
    if len(g) > 1:
        np_ = _pdiv_exact(np_, g)
        dp = _pdiv_exact(dp, g)
    c = gcd(_content(np_), _content(dp))
    if dp[-1] < 0:
        c = -c
    if c != 1:
        np_ = [x // c for x in np_]
        dp = [x // c for x in dp]
    return RatScalar._raw(LaurentPoly._raw(_from_dense(np_, vn - vd)),
                          LaurentPoly._raw(_from_dense(dp, 0)))


def _as_ratscalar(x) -> RatScalar:
    r = _coerce(x)
    if r is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(q)")
    return r


def _coerce(x) -> RatScalar | None:
    if isinstance(x, RatScalar):
        return x
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return RatScalar._raw(LaurentPoly._raw({0: x} if x else {}), _ONE)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return _coerce(int(x.numerator))
        return _canonical({0: x.numerator}, {0: x.denominator})
    if isinstance(x, LaurentPoly):
        if x.is_integral():
            return RatScalar._raw(x, _ONE)
        return _canonical(dict(x._c), {0: 1})
    return None


ZERO = RatScalar._raw(LaurentPoly._raw({}), _ONE)
ONE = RatScalar._raw(_ONE, _ONE)
Q = RatScalar.q_power(1)


def scalar(x: ScalarLike) -> RatScalar:
    """Coerce an int, Fraction, LaurentPoly or RatScalar into Q(q)."""
    return _as_ratscalar(x)


def render_scalar(x: RatScalar) -> str:
    """Laurent values render as ``c*q^k`` sums; anything else as ``(num)/(den)``."""
    if x.is_laurent():
        return render_laurent(x.as_laurent())
    return f"({render_laurent(x.num)})/({render_laurent(x.den)})"


def parse_scalar(text: str) -> RatScalar:
    """Parse the scalar grammar (``c*q^k`` sums, ``[n]``, ``[n]!``, quotients)."""
    from .parser import parse_scalar as _ps
    return _ps(text)


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def qint(n: int) -> RatScalar:
    """The q-integer [n] = (q^n - q^-n)/(q - q^-1)."""
    if n < 0:
        return -qint(-n)
    return RatScalar._raw(LaurentPoly._raw({n - 1 - 2 * j: 1 for j in range(n)}), _ONE)


@lru_cache(maxsize=None)
def qfact(n: int) -> RatScalar:
    if n < 0:
        raise ValueError(f"q-factorial of negative integer {n}")
    out = ONE
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> RatScalar:
    """Gaussian binomial [n][n-1]...[n-k+1] / [k]!; defined for any integer n."""
    if k < 0:
        raise ValueError(f"q-binomial with negative lower index {k}")
    top = ONE
    for j in range(k):
        top = top * qint(n - j)
    out = top / qfact(k)
    if not out.is_laurent():
        raise ArithmeticError(f"q-binomial ({n}, {k}) is not a Laurent polynomial")
    return out


def qbracket_scalar(tau: RatScalar, a: int = 0) -> RatScalar:
    """Value of [t; a] on a weight vector with t-eigenvalue tau."""
    return (Q ** a * tau - Q ** (-a) * tau.inverse()) * QQINV_INV


QMINUS = Q - Q.inverse()            # q - q^-1
QQINV_INV = QMINUS.inverse()        # 1/(q - q^-1)


def casimir_scalar(tau: RatScalar) -> RatScalar:
    """(q tau + q^-1 tau^-1)/(q - q^-1)^2, the Casimir value on a highest weight tau."""
    return (Q * tau + Q.inverse() * tau.inverse()) * QQINV_INV * QQINV_INV


def check_qint_lemma(a: int, b: int, k: int) -> bool:
    """True iff [a+k][b+k] - [a][b] == [k][a+b+k] holds exactly."""
    lhs = qint(a + k) * qint(b + k) - qint(a) * qint(b)
    return lhs == qint(k) * qint(a + b + k)
