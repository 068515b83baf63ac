"""Operations on weight modules: action, Casimir spectra, duals, sums, sub and quotient modules."""

from __future__ import annotations

from typing import Sequence

from ..algebra import AlgebraElement, PbwMonomial
from ..linalg import (Matrix, Vector, block_diag, column_space, coordinates, inverse, nullspace,
                      rref)
from ..scalars import ONE, ZERO, RatScalar, casimir_scalar
from .core import DepthExceeded, ModuleError, ModuleMap, ModuleVector, Weight, WeightModule


# ---------------------------------------------------------------------------
# action of the algebra
# ---------------------------------------------------------------------------

def _act_monomial(m: WeightModule, mono: PbwMonomial, level: int, coords: Vector):
    """f^a t^b e^c applied right to left to a homogeneous vector; None means zero."""
    for _ in range(mono.e_exp):
        if level == 0:
            return None
        coords = m.E(level).apply(coords)
        level -= 1
        if not any(coords):
            return None
    if mono.t_exp:
        tau = m.tau(level) ** mono.t_exp
        coords = tuple(c * tau for c in coords)
    for _ in range(mono.f_exp):
        if level == m.depth:
            if m.finite:
                return None
            raise DepthExceeded(f"f^{mono.f_exp} from level {level} leaves the stored "
                                f"levels 0..{m.depth} of {m.name or 'the module'}")
        coords = m.F(level).apply(coords)
        level += 1
        if not any(coords):
            return None
    return level, coords


def apply(m: WeightModule, x: AlgebraElement, v: ModuleVector) -> ModuleVector:
    """x . v; raises DepthExceeded instead of truncating."""
    acc: dict[int, list[RatScalar]] = {}
    for lv, coords in v.components.items():
        if len(coords) != m.dims[lv]:
            raise ModuleError(f"vector has {len(coords)} coordinates at level {lv}, "
                              f"module has dimension {m.dims[lv]}")
        for mono, c in x.items():
            res = _act_monomial(m, mono, lv, coords)
            if res is None:
                continue
            out_lv, out = res
            slot = acc.setdefault(out_lv, [ZERO] * m.dims[out_lv])
            for j, val in enumerate(out):
                if val:
                    slot[j] = slot[j] + c * val
    return ModuleVector(acc)


def apply_word_e_then_f(m: WeightModule, level: int, coords: Vector, c: int, a: int):
    """f^a e^c on a homogeneous vector, as (level, coords) or None for zero."""
    return _act_monomial(m, PbwMonomial(a, 0, c), level, coords)


# ---------------------------------------------------------------------------
# Casimir spectra
# ---------------------------------------------------------------------------

def casimir_matrix(m: WeightModule, level: int) -> Matrix:
    """Action of C on a level: c(tau) Id + F_(i-1) E_i."""
    d = m.dims[level]
    out = Matrix.scalar_matrix(d, casimir_scalar(m.tau(level)))
    if level > 0:
        out = out + m.F(level - 1) @ m.E(level)
    return out


def generalized_eigenspace(m: WeightModule, value: RatScalar, power: int = 2,
                           levels: Sequence[int] | None = None) -> dict[int, list[Vector]]:
    """Per level, a basis of ker (C - value)^power."""
    if power < 1:
        raise ModuleError("power must be at least 1")
    out = {}
    for lv in (range(m.depth + 1) if levels is None else levels):
        d = m.dims[lv]
        shifted = casimir_matrix(m, lv) - Matrix.scalar_matrix(d, value)
        op = shifted
        for _ in range(power - 1):
            op = op @ shifted
        out[lv] = nullspace(op)
    return out


# ---------------------------------------------------------------------------
# restricted dual
# ---------------------------------------------------------------------------

def _dual_label(s: str) -> str:
    return s[:-1] if s.endswith("*") else s + "*"


def restricted_dual(m: WeightModule) -> WeightModule:
    """M^sigma: e acts by the transpose of f and f by the transpose of e."""
    e = [m.F(i - 1).T for i in range(1, m.depth + 1)]
    f = [m.E(i + 1).T for i in range(m.depth)]
    labels = [[_dual_label(s) for s in lv] for lv in m.labels]
    name = m.name[:-6] if m.name.endswith("^sigma") else f"{m.name or 'M'}^sigma"
    return WeightModule(m.top, m.dims, e, f, finite=m.finite, labels=labels, name=name)


# ---------------------------------------------------------------------------
# level bookkeeping
# ---------------------------------------------------------------------------

def pad_top(m: WeightModule, k: int) -> WeightModule:
    """Prepend k zero-dimensional levels (the top weight rises by 2k)."""
    if k < 0:
        raise ModuleError("padding must be nonnegative")
    if k == 0:
        return m
    dims = (0,) * k + m.dims
    e = [Matrix.zeros(0, 0)] * (k - 1) + [Matrix.zeros(0, m.dims[0])] + list(m.e_mats)
    f = [Matrix.zeros(0, 0)] * (k - 1) + [Matrix.zeros(m.dims[0], 0)] + list(m.f_mats)
    labels = ((),) * k + m.labels
    top = Weight(m.top.sign, m.top.exponent + 2 * k)
    return WeightModule(top, dims, e, f, finite=m.finite, labels=labels, name=m.name)


def trim_top(m: WeightModule) -> WeightModule:
    """Drop leading zero-dimensional levels (keeping at least one level)."""
    k = 0
    while k < m.depth and m.dims[k] == 0:
        k += 1
    if k == 0:
        return m
    return WeightModule(m.top.lowered(k), m.dims[k:], m.e_mats[k:], m.f_mats[k:],
                        finite=m.finite, labels=m.labels[k:], name=m.name)


def truncate(m: WeightModule, depth: int) -> WeightModule:
    if depth > m.depth:
        raise DepthExceeded(f"cannot truncate depth {m.depth} to {depth}")
    if depth == m.depth:
        return m
    finite = m.finite and all(d == 0 for d in m.dims[depth + 1:])
    return WeightModule(m.top, m.dims[:depth + 1], m.e_mats[:depth], m.f_mats[:depth],
                        finite=finite, labels=m.labels[:depth + 1], name=m.name)


def extend_finite(m: WeightModule, depth: int) -> WeightModule:
    """Append zero-dimensional levels to a finite module."""
    if not m.finite:
        raise DepthExceeded("only finite modules can be extended with zero levels")
    k = depth - m.depth
    if k <= 0:
        return m
    e = list(m.e_mats) + [Matrix.zeros(m.dims[-1], 0)] + [Matrix.zeros(0, 0)] * (k - 1)
    f = list(m.f_mats) + [Matrix.zeros(0, m.dims[-1])] + [Matrix.zeros(0, 0)] * (k - 1)
    return WeightModule(m.top, m.dims + (0,) * k, e, f, finite=True,
                        labels=m.labels + ((),) * k, name=m.name)


def fit_depth(m: WeightModule, depth: int) -> WeightModule:
    """Truncate, or extend when finite, to exactly the given depth."""
    if depth <= m.depth:
        return truncate(m, depth)
    return extend_finite(m, depth)


def align(a: WeightModule, b: WeightModule) -> tuple[WeightModule, WeightModule]:
    """Bring two modules to a common top weight and depth."""
    a, b = align_all([a, b])
    return a, b


def same_shape(a: WeightModule, b: WeightModule) -> bool:
    return a.top == b.top and a.depth == b.depth


# ---------------------------------------------------------------------------
# direct sums
# ---------------------------------------------------------------------------

def align_all(modules: Sequence[WeightModule]) -> list[WeightModule]:
    """Pad to a common top weight, then cut (or extend finite ones) to a common depth."""
    first = modules[0]
    for m in modules[1:]:
        if m.top.sign != first.top.sign:
            raise ModuleError(f"weight strands differ in sign ({first.top} vs {m.top})")
        if (m.top.exponent - first.top.exponent) % 2:
            raise ModuleError(f"top weights {first.top} and {m.top} differ by an odd gap")
    top = max(m.top.exponent for m in modules)
    padded = [pad_top(m, (top - m.top.exponent) // 2) for m in modules]
    infinite = [m.depth for m in padded if not m.finite]
    depth = min(infinite) if infinite else max(m.depth for m in padded)
    return [fit_depth(m, depth) for m in padded]


def direct_sum(*modules: WeightModule) -> WeightModule:
    """Direct sum, padding tops and cutting to the common depth."""
    if not modules:
        raise ModuleError("direct_sum needs at least one summand")
    parts = align_all(modules)
    depth = parts[0].depth
    dims = [sum(p.dims[i] for p in parts) for i in range(depth + 1)]
    e = [block_diag([p.e_mats[i] for p in parts]) for i in range(depth)]
    f = [block_diag([p.f_mats[i] for p in parts]) for i in range(depth)]
    labels = [[f"{k}:{s}" for k, p in enumerate(parts, start=1) for s in p.labels[i]]
              for i in range(depth + 1)]
    name = " + ".join(m.name or "M" for m in modules)
    return WeightModule(parts[0].top, dims, e, f, finite=all(p.finite for p in parts),
                        labels=labels, name=name)


# ---------------------------------------------------------------------------
# submodules and quotients
# ---------------------------------------------------------------------------

def _standard_label(m: WeightModule, lv: int, vec: Vector, fallback: str) -> str:
    nz = [j for j, c in enumerate(vec) if c]
    if len(nz) == 1 and vec[nz[0]] == ONE:
        return m.labels[lv][nz[0]]
    return fallback


def _induced(m: WeightModule, bases: list[list[Vector]]) -> tuple[list[Matrix], list[Matrix]]:
    """Matrices of E and F on an action-stable family of level bases."""
    e_mats, f_mats = [], []
    for lv in range(1, m.depth + 1):
        cols = []
        for b in bases[lv]:
            c = coordinates(bases[lv - 1], m.E(lv).apply(b))
            if c is None:
                raise ModuleError(f"subspace is not stable under e at level {lv}")
            cols.append(c)
        e_mats.append(Matrix.from_columns(cols, len(bases[lv - 1])))
    for lv in range(m.depth):
        cols = []
        for b in bases[lv]:
            c = coordinates(bases[lv + 1], m.F(lv).apply(b))
            if c is None:
                raise ModuleError(f"subspace is not stable under f at level {lv}")
            cols.append(c)
        f_mats.append(Matrix.from_columns(cols, len(bases[lv + 1])))
    return e_mats, f_mats


def submodule_generated(m: WeightModule, vectors: Sequence[ModuleVector]
                        ) -> tuple[WeightModule, ModuleMap]:
    """U.vectors as a module, with its inclusion.

    Uses U = U^- U^0 U^+: the span of the f^a e^c g is the submodule, so no
    level beyond the stored depth is ever needed.
    """
    spans: list[list[Vector]] = [[] for _ in range(m.depth + 1)]
    for v in vectors:
        for lv, coords in v.components.items():
            spans[lv].append(coords)
    for lv in range(m.depth, 0, -1):
        spans[lv] = column_space(spans[lv], m.dims[lv])
        spans[lv - 1].extend(m.E(lv).apply(b) for b in spans[lv])
    spans[0] = column_space(spans[0], m.dims[0])
    for lv in range(m.depth):
        spans[lv + 1] = column_space(spans[lv + 1] + [m.F(lv).apply(b) for b in spans[lv]],
                                     m.dims[lv + 1])
    bases = [_prefer_standard(m, lv, spans[lv]) for lv in range(m.depth + 1)]
    e_mats, f_mats = _induced(m, bases)
    labels = [[_standard_label(m, lv, b, f"u{lv}.{j}") for j, b in enumerate(bases[lv])]
              for lv in range(m.depth + 1)]
    sub = WeightModule(m.top, [len(b) for b in bases], e_mats, f_mats, finite=m.finite,
                       labels=labels, name=f"sub({m.name or 'M'})")
    incl = ModuleMap(sub, m, [Matrix.from_columns(bases[lv], m.dims[lv])
                              for lv in range(m.depth + 1)])
    return sub, incl


def _prefer_standard(m: WeightModule, lv: int, basis: list[Vector]) -> list[Vector]:
    """Replace a basis by its reduced echelon form (standard vectors when possible)."""
    if not basis:
        return []
    red, pivots = rref(Matrix(basis, m.dims[lv]))
    return [red.rows[r] for r in range(len(pivots))]


def quotient(m: WeightModule, sub: ModuleMap | Sequence[Sequence[Vector]]
             ) -> tuple[WeightModule, ModuleMap]:
    """M/S with coset representatives chosen among standard basis vectors."""
    if isinstance(sub, ModuleMap):
        if sub.target is not m and not (sub.target == m):
            raise ModuleError("inclusion map does not land in the given module")
        bases = [column_space(b.columns(), m.dims[lv]) for lv, b in enumerate(sub.blocks)]
    else:
        bases = [column_space(list(b), m.dims[lv]) for lv, b in enumerate(sub)]
    if len(bases) != m.depth + 1:
        raise ModuleError("one subspace basis per level required")
    for lv in range(1, m.depth + 1):
        for b in bases[lv]:
            if coordinates(bases[lv - 1], m.E(lv).apply(b)) is None:
                raise ModuleError(f"subspace is not stable under e at level {lv}")
    for lv in range(m.depth):
        for b in bases[lv]:
            if coordinates(bases[lv + 1], m.F(lv).apply(b)) is None:
                raise ModuleError(f"subspace is not stable under f at level {lv}")
    reps, projs = [], []
    for lv in range(m.depth + 1):
        d = m.dims[lv]
        ident = [tuple(ONE if i == j else ZERO for i in range(d)) for j in range(d)]
        full = bases[lv] + ident
        _, pivots = rref(Matrix.from_columns(full, d))
        chosen = [full[c] for c in pivots]
        k = len(bases[lv])
        rep = chosen[k:]
        reps.append(rep)
        inv = inverse(Matrix.from_columns(chosen, d))
        projs.append(Matrix._raw(inv.rows[k:], d - k, d))
    e_mats = [projs[lv - 1] @ m.E(lv) @ Matrix.from_columns(reps[lv], m.dims[lv])
              for lv in range(1, m.depth + 1)]
    f_mats = [projs[lv + 1] @ m.F(lv) @ Matrix.from_columns(reps[lv], m.dims[lv])
              for lv in range(m.depth)]
    labels = [[_standard_label(m, lv, r, f"w{lv}.{j}") for j, r in enumerate(reps[lv])]
              for lv in range(m.depth + 1)]
    q = WeightModule(m.top, [len(r) for r in reps], e_mats, f_mats, finite=m.finite,
                     labels=labels, name=f"{m.name or 'M'}/S")
    return q, ModuleMap(m, q, projs)


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

def character(m: WeightModule) -> dict[Weight, int]:
    """Weight -> dimension over the stored levels (zero levels omitted)."""
    return {m.weight(i): d for i, d in enumerate(m.dims) if d}


def add_characters(*chars: dict[Weight, int]) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for ch in chars:
        for w, d in ch.items():
            out[w] = out.get(w, 0) + d
    return {w: d for w, d in sorted(out.items(), key=lambda kv: (-kv[0].exponent, kv[0].sign))
            if d}


def restrict_character(ch: dict[Weight, int], lowest_exponent: int) -> dict[Weight, int]:
    return {w: d for w, d in ch.items() if w.exponent >= lowest_exponent}


def lowest_stored_exponent(m: WeightModule) -> int:
    return m.weight(m.depth).exponent
