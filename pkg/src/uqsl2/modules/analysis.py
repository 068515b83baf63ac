"""Completeness checks and decomposition into indecomposable summands.

Both work one Casimir block at a time.  On the weight strand of a module with
top weight eps q^m0, the block of n >= -1 (with n = m0 mod 2) lives at the two
levels H = (m0 - n)/2 (weight eps q^n) and L = H + n + 1 (weight eps q^(-n-2)).
Every indecomposable in play has its head at one of these two levels, and its
type is read off from three maps between the generalized Casimir eigenspaces
G_H and G_L:

    N = C - eps c   on G_L   (nonzero only on the z-vectors of T summands)
    P = e^(n+1)     G_L -> G_H
    Fn = f^(n+1)    G_H -> G_L
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..linalg import Matrix, Vector, hstack, nullspace, rref
from ..scalars import ZERO, casimir_scalar
from .constructors import finite_simple, t_module, t_quotient, verma
from .core import (DepthExceeded, ModuleError, ModuleMap, ModuleVector, Weight, WeightModule,
                   sign_char)
from .homs import map_from_generator
from .ops import apply_word_e_then_f, casimir_matrix, fit_depth, generalized_eigenspace, pad_top


class DecompositionError(ModuleError):
    pass


class DecompositionDepthError(DecompositionError, DepthExceeded):
    """The block structure needs levels past the stored depth."""


def _levels(m: WeightModule, n: int) -> tuple[int, int]:
    h = (m.top.exponent - n) // 2
    return h, h + n + 1


def _block_values(m: WeightModule) -> list[int]:
    """Every n >= -1 whose block meets a stored level."""
    m0 = m.top.exponent
    ns = set()
    for lv in range(m.depth + 1):
        ns.add(m0 - 2 * lv)
        ns.add(2 * lv - m0 - 2)
    return sorted(n for n in ns if n >= -1)


def _e_kernel(m: WeightModule, level: int) -> list[Vector]:
    if level == 0:
        return [tuple(col) for col in Matrix.identity(m.dims[0]).columns()]
    return nullspace(m.E(level))


# ---------------------------------------------------------------------------
# completeness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairCheck:
    n: int
    source_level: int
    target_level: int
    source_dim: int
    target_dim: int
    rank: int
    status: str  # "bijective", "fails" or "untestable"

    def render(self) -> str:
        base = (f"n={self.n}: ker e at level {self.source_level} (dim {self.source_dim}) -> "
                f"level {self.target_level} (dim {self.target_dim})")
        if self.status == "untestable":
            return base + ": untestable at this depth"
        return f"{base}: rank {self.rank}, {self.status}"


@dataclass(frozen=True)
class CompletenessReport:
    outcome: str  # "complete", "not-complete" or "untestable"
    pairs: tuple[PairCheck, ...] = field(default_factory=tuple)

    @property
    def failures(self) -> list[PairCheck]:
        return [p for p in self.pairs if p.status == "fails"]

    def pair(self, n: int) -> PairCheck | None:
        return next((p for p in self.pairs if p.n == n), None)

    def render(self) -> str:
        return "\n".join([self.outcome] + ["  " + p.render() for p in self.pairs])


def completeness_check(m: WeightModule) -> CompletenessReport:
    """Is f^(n+1): ker e at eps q^n -> ker e at eps q^(-n-2) bijective for every n >= 0?

    A weight above the top is known to be zero, and so is every level past the
    depth of a finite module.  For other modules a pair whose target lies past
    the stored levels is untestable; pairs with neither weight stored are not
    reported.
    """
    pairs = []
    for n in _block_values(m):
        if n < 0:
            continue
        h, l = _levels(m, n)
        src_known = h < 0 or h <= m.depth or m.finite
        tgt_known = l <= m.depth or m.finite
        if h > m.depth and l > m.depth:
            continue
        if h < 0 and not tgt_known:
            continue
        if not (src_known and tgt_known):
            pairs.append(PairCheck(n, h, l, len(_e_kernel(m, h)) if 0 <= h <= m.depth else 0,
                                   0, 0, "untestable"))
            continue
        src = _e_kernel(m, h) if 0 <= h <= m.depth else []
        tgt = _e_kernel(m, l) if l <= m.depth else []
        dim_l = m.dims[l] if l <= m.depth else 0
        cols = []
        for v in src:
            res = apply_word_e_then_f(m, h, v, 0, n + 1)
            cols.append(res[1] if res is not None else _zero(dim_l))
        rank = Matrix.from_columns(cols, dim_l).rank() if cols and dim_l else 0
        ok = rank == len(src) == len(tgt)
        pairs.append(PairCheck(n, h, l, len(src), len(tgt), rank, "bijective" if ok else "fails"))
    if any(p.status == "fails" for p in pairs):
        outcome = "not-complete"
    elif any(p.status == "untestable" for p in pairs):
        outcome = "untestable"
    else:
        outcome = "complete"
    return CompletenessReport(outcome, tuple(pairs))


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

KIND_ORDER = {"T": 0, "TmodM": 1, "Verma": 2, "V": 3}


@dataclass(frozen=True)
class Summand:
    kind: str  # "Verma", "T", "TmodM" or "V"
    params: tuple[tuple[str, int], ...]
    head_level: int
    embedding: ModuleMap = field(compare=False)

    @property
    def param(self) -> dict[str, int]:
        return dict(self.params)

    @property
    def eps(self) -> int:
        return self.param["eps"]

    def label(self) -> str:
        p = self.param
        s = sign_char(p["eps"])
        if self.kind == "Verma":
            return f"Verma({s},{p['m']})"
        if self.kind == "T":
            return f"T({p['n']},{s})"
        if self.kind == "TmodM":
            return f"T({p['n']},{s})/M({s}q^{-p['n'] - 2})"
        return f"V({p['n']},{s})"

    def type_key(self) -> tuple:
        return (self.kind, self.params)


def summand_model(kind: str, params: dict[str, int], depth: int) -> WeightModule:
    """The module of a given kind, built to the given number of levels below its top."""
    eps = params["eps"]
    if kind == "Verma":
        return verma(eps, params["m"], depth)
    n = params["n"]
    if kind == "T":
        return t_module(n, eps, max(depth, n + 1))
    if kind == "TmodM":
        return t_quotient(n, eps, depth)
    if kind == "V":
        return finite_simple(n, eps)
    raise ModuleError(f"unknown summand kind {kind!r}")


def _placed_model(m: WeightModule, kind: str, params: dict[str, int]) -> WeightModule:
    top = params["m"] if kind == "Verma" else params["n"]
    pad = (m.top.exponent - top) // 2
    model = summand_model(kind, params, max(m.depth - pad, 0))
    return fit_depth(pad_top(model, pad), m.depth)


def _generator_label(kind: str, params: dict[str, int]) -> str:
    return f"z{params['n'] + 1}" if kind in ("T", "TmodM") else "v0"


def _extend(fixed: list[Vector], candidates: list[Vector], images: list[Vector],
            dim: int, what: str) -> list[Vector]:
    """Candidates whose images extend the independent set ``fixed``, greedily in order."""
    if not candidates:
        return []
    cols = fixed + images
    if dim == 0:
        return []
    _, piv = rref(Matrix.from_columns(cols, dim))
    if piv[:len(fixed)] != list(range(len(fixed))):
        raise DecompositionError(f"{what}: previously chosen vectors became dependent")
    return [candidates[p - len(fixed)] for p in piv[len(fixed):]]


def _combos(basis: list[Vector], coeffs: list[Vector], dim: int) -> list[Vector]:
    out = []
    for k in coeffs:
        v = [sum((c * b[i] for c, b in zip(k, basis) if c), start=ZERO) for i in range(dim)]
        out.append(tuple(v))
    return out


def _restricted_kernel(op: Matrix, basis: list[Vector], dim: int) -> list[Vector]:
    """Basis of {v in span(basis) : op v = 0}."""
    if not basis:
        return []
    images = Matrix.from_columns([op.apply(b) for b in basis], op.nrows)
    return _combos(basis, nullspace(images), dim)


def _zero(dim: int) -> Vector:
    return (ZERO,) * dim


def _block_heads(m: WeightModule, n: int) -> list[tuple[str, dict, int, Vector]]:
    """(kind, params, level, generator coords) for every summand of the n-block."""
    eps, d = m.sign, m.depth
    h, l = _levels(m, n)
    value = casimir_scalar(Weight(eps, n).scalar())
    gh = generalized_eigenspace(m, value, 2, [h])[h] if 0 <= h <= d else []
    gl = generalized_eigenspace(m, value, 2, [l])[l] if l <= d else []
    if n == -1:
        return [("Verma", {"eps": eps, "m": -1}, h, v) for v in gh]
    if l > d and gh and not m.finite:
        raise DecompositionDepthError(
            f"weight {Weight(eps, -n - 2)} of the block of {Weight(eps, n)} lies past depth {d}; "
            f"the summands headed at level {h} cannot be told apart")
    dh = m.dims[h] if 0 <= h <= d else 0
    dl = m.dims[l] if l <= d else 0
    heads = []
    if h < 0:
        if not gl:
            return []
        free = _restricted_kernel(m.E(l), gl, dl) if l > 0 else gl
        if len(free) != len(gl):
            raise DecompositionError(f"level {l} holds vectors of the block of {Weight(eps, n)} "
                                     "that e does not kill, with nothing above them")
        return [("Verma", {"eps": eps, "m": -n - 2}, l, v) for v in free]

    def fn(v):
        res = apply_word_e_then_f(m, h, v, 0, n + 1)
        return res[1] if res is not None else _zero(dl)

    def p(v):
        res = apply_word_e_then_f(m, l, v, n + 1, 0)
        return res[1] if res is not None else _zero(dh)

    t_gens, tm_gens, n_img, p_img = [], [], [], []
    if gl:
        nmat = casimir_matrix(m, l) - Matrix.scalar_matrix(dl, value)
        t_gens = _extend([], gl, [nmat.apply(v) for v in gl], dl, "T heads")
        n_img = [nmat.apply(w) for w in t_gens]
        p_img = [p(w) for w in t_gens]
        ker_n = _restricted_kernel(nmat, gl, dl)
        tm_gens = _extend(p_img, ker_n, [p(u) for u in ker_n], dh, "T/M heads")
    fixed_f = [fn(v) for v in p_img]
    top_verma = _extend(fixed_f, gh, [fn(x) for x in gh], dl, "Verma heads") if dl else []
    ker_fn = list(gh) if not dl else _restricted_kernel(
        Matrix.from_columns([fn(b) for b in _unit_basis(dh)], dl), gh, dh)
    head_h = p_img + [p(u) for u in tm_gens] + top_verma
    simple = _extend(head_h, ker_fn, ker_fn, dh, "finite simple heads")
    low_verma = []
    if gl:
        ker_e = _restricted_kernel(m.E(l), gl, dl) if l > 0 else gl
        fixed_l = t_gens + n_img + tm_gens + [fn(x) for x in top_verma]
        low_verma = _extend(fixed_l, ker_e, ker_e, dl, "lower Verma heads")
    a, b, c, dd, e = len(t_gens), len(tm_gens), len(top_verma), len(simple), len(low_verma)
    if len(gh) != a + b + c + dd or len(gl) != 2 * a + b + c + e:
        raise DecompositionError(
            f"block of {Weight(eps, n)}: eigenspace dims {len(gh)}, {len(gl)} do not match "
            f"{a} T + {b} T/M + {c} + {e} Verma + {dd} finite simple summands")
    heads += [("T", {"n": n, "eps": eps}, l, w) for w in t_gens]
    heads += [("TmodM", {"n": n, "eps": eps}, l, u) for u in tm_gens]
    heads += [("Verma", {"eps": eps, "m": n}, h, x) for x in top_verma]
    heads += [("V", {"n": n, "eps": eps}, h, y) for y in simple]
    heads += [("Verma", {"eps": eps, "m": -n - 2}, l, y) for y in low_verma]
    return heads


def _unit_basis(d: int) -> list[Vector]:
    return Matrix.identity(d).columns()


def decompose(m: WeightModule) -> list[Summand]:
    """Split m into indecomposable summands, each with an explicit embedding.

    The embeddings together give a map from the direct sum of the summands to
    m that is checked to be invertible on every stored level; if that check
    or any dimension count fails, DecompositionError is raised instead of
    returning a guess.
    """
    summands = []
    for n in _block_values(m):
        for kind, params, level, coords in _block_heads(m, n):
            model = _placed_model(m, kind, params)
            gen_level, j = model.find_label(_generator_label(kind, params))
            head = level - (n + 1) if kind in ("T", "TmodM") else level
            emb = map_from_generator(model, model.basis_vector(gen_level, j), m,
                                     ModuleVector({level: coords}))
            summands.append(Summand(kind, tuple(sorted(params.items())), head, emb))
    for lv in range(m.depth + 1):
        blocks = [s.embedding.blocks[lv] for s in summands]
        total = hstack(blocks, m.dims[lv]) if blocks else Matrix.zeros(m.dims[lv], 0)
        if not total.is_square() or total.rank() != m.dims[lv]:
            raise DecompositionError(
                f"summand embeddings fail to fill level {lv} ({total.rank()} of {m.dims[lv]} "
                "dimensions); the module is not a sum of the known indecomposables here")
    summands.sort(key=lambda s: (s.head_level, KIND_ORDER[s.kind]))
    return summands


def summary(summands: list[Summand]) -> list[str]:
    return [s.label() for s in summands]
