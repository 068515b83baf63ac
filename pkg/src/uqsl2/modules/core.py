"""Depth-truncated weight modules, vectors and maps.

A module stores levels 0..D; level i is the weight space of weight
eps*q^(m-2i).  ``E_i`` maps level i to level i-1 and ``F_i`` maps level i to
level i+1.  A module flagged ``finite`` has nothing below level D; otherwise
level D is a truncation boundary and F out of level D is unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..linalg import Matrix, ShapeError, Vector
from ..scalars import ONE, ZERO, RatScalar, ScalarLike, qint, render_scalar, scalar


class ModuleError(ValueError):
    """Invalid module data or an operation whose preconditions fail."""


class DepthExceeded(ModuleError):
    """An operation needs data beyond the stored depth."""


@dataclass(frozen=True, order=True)
class Weight:
    sign: int
    exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ModuleError(f"weight sign must be +1 or -1, got {self.sign}")

    def scalar(self) -> RatScalar:
        return RatScalar.q_power(self.exponent, self.sign)

    def lowered(self, k: int) -> "Weight":
        """The weight k levels below (exponent decreased by 2k)."""
        return Weight(self.sign, self.exponent - 2 * k)

    def render(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}q^{self.exponent}"

    def __str__(self):
        return self.render()


def sign_char(eps: int) -> str:
    return "+" if eps > 0 else "-"


class WeightModule:
    """Immutable weight module truncated at depth D (levels 0..D)."""

    __slots__ = ("top", "dims", "e_mats", "f_mats", "finite", "labels", "name")

    def __init__(self, top: Weight, dims: Sequence[int], e_mats: Sequence[Matrix],
                 f_mats: Sequence[Matrix], finite: bool = False,
                 labels: Sequence[Sequence[str]] | None = None, name: str = ""):
        dims = tuple(int(d) for d in dims)
        if not dims or any(d < 0 for d in dims):
            raise ModuleError("dims must be a nonempty sequence of nonnegative integers")
        depth = len(dims) - 1
        e_mats, f_mats = tuple(e_mats), tuple(f_mats)
        if len(e_mats) != depth or len(f_mats) != depth:
            raise ModuleError(f"depth {depth} needs {depth} E and F matrices")
        for i in range(1, depth + 1):
            if e_mats[i - 1].shape != (dims[i - 1], dims[i]):
                raise ModuleError(f"E_{i} has shape {e_mats[i - 1].shape}, "
                                  f"expected {(dims[i - 1], dims[i])}")
        for i in range(depth):
            if f_mats[i].shape != (dims[i + 1], dims[i]):
                raise ModuleError(f"F_{i} has shape {f_mats[i].shape}, "
                                  f"expected {(dims[i + 1], dims[i])}")
        if labels is None:
            labels = tuple(tuple(f"b{i}.{j}" for j in range(d)) for i, d in enumerate(dims))
        labels = tuple(tuple(str(x) for x in lv) for lv in labels)
        if tuple(len(lv) for lv in labels) != dims:
            raise ModuleError("labels do not match dims")
        self.top = top
        self.dims = dims
        self.e_mats = e_mats
        self.f_mats = f_mats
        self.finite = bool(finite)
        self.labels = labels
        self.name = name

    # basic shape ----------------------------------------------------------
    @property
    def depth(self) -> int:
        return len(self.dims) - 1

    @property
    def sign(self) -> int:
        return self.top.sign

    def weight(self, i: int) -> Weight:
        return self.top.lowered(i)

    def tau(self, i: int) -> RatScalar:
        """The t-eigenvalue on level i."""
        return self.weight(i).scalar()

    def level_of(self, w: Weight) -> int | None:
        """Level index of weight w, or None if w is not on this module's strand."""
        if w.sign != self.top.sign or (self.top.exponent - w.exponent) % 2:
            return None
        return (self.top.exponent - w.exponent) // 2

    def E(self, i: int) -> Matrix:
        """Action of e from level i to level i-1 (E_0 is the zero map to nothing)."""
        if i == 0:
            return Matrix.zeros(0, self.dims[0])
        if not 1 <= i <= self.depth:
            raise DepthExceeded(f"E_{i} is outside the stored levels 0..{self.depth}")
        return self.e_mats[i - 1]

    def F(self, i: int) -> Matrix:
        """Action of f from level i to level i+1."""
        if 0 <= i < self.depth:
            return self.f_mats[i]
        if i == self.depth and self.finite:
            return Matrix.zeros(0, self.dims[i])
        raise DepthExceeded(f"F_{i} needs level {i + 1}, beyond depth {self.depth}")

    def dim(self, i: int) -> int:
        if 0 <= i <= self.depth:
            return self.dims[i]
        if i > self.depth and self.finite:
            return 0
        if i < 0:
            return 0
        raise DepthExceeded(f"level {i} is beyond depth {self.depth}")

    def total_dim(self) -> int:
        return sum(self.dims)

    # labels and vectors ---------------------------------------------------
    def find_label(self, label: str) -> tuple[int, int]:
        for i, lv in enumerate(self.labels):
            if label in lv:
                return i, lv.index(label)
        raise ModuleError(f"no basis vector labelled {label!r}")

    def basis_vector(self, level: int, j: int) -> "ModuleVector":
        coords = [ZERO] * self.dims[level]
        coords[j] = ONE
        return ModuleVector({level: tuple(coords)})

    def vector(self, label: str) -> "ModuleVector":
        return self.basis_vector(*self.find_label(label))

    # invariants -----------------------------------------------------------
    def commutator_defect(self, i: int) -> Matrix:
        """E_{i+1}F_i - F_{i-1}E_i - eps[m-2i] on level i (zero for a valid module)."""
        d = self.dims[i]
        if i < self.depth:
            ef = self.E(i + 1) @ self.F(i)
        elif self.finite:
            ef = Matrix.zeros(d, d)
        else:
            raise DepthExceeded(f"commutator at level {i} needs level {i + 1}")
        fe = self.F(i - 1) @ self.E(i) if i > 0 else Matrix.zeros(d, d)
        target = Matrix.scalar_matrix(d, qint(self.top.exponent - 2 * i) * self.sign)
        return ef - fe - target

    def checkable_levels(self) -> range:
        return range(self.depth + 1) if self.finite else range(self.depth)

    def invariant_violations(self) -> list[tuple[int, Matrix]]:
        out = []
        for i in self.checkable_levels():
            defect = self.commutator_defect(i)
            if not defect.is_zero():
                out.append((i, defect))
        return out

    def is_valid(self) -> bool:
        return not self.invariant_violations()

    # structural equality ----------------------------------------------------
    def _key(self):
        return (self.top, self.dims, self.e_mats, self.f_mats, self.finite)

    def __eq__(self, other):
        if not isinstance(other, WeightModule):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def describe(self) -> str:
        kind = "finite" if self.finite else f"truncated at depth {self.depth}"
        name = f"{self.name} " if self.name else ""
        return f"{name}top {self.top} dims {list(self.dims)} ({kind})"

    def __repr__(self):
        return f"WeightModule({self.describe()})"

    def replace(self, **changes) -> "WeightModule":
        fields = dict(top=self.top, dims=self.dims, e_mats=self.e_mats, f_mats=self.f_mats,
                      finite=self.finite, labels=self.labels, name=self.name)
        fields.update(changes)
        return WeightModule(**fields)


class ModuleVector:
    """A finite sum of weight vectors: level -> coordinates in that level's basis."""

    __slots__ = ("components",)

    def __init__(self, components: Mapping[int, Sequence[ScalarLike]] | None = None):
        comps = {}
        for lv, coords in (components or {}).items():
            coords = tuple(scalar(c) for c in coords)
            if any(coords):
                comps[int(lv)] = coords
        self.components = dict(sorted(comps.items()))

    @classmethod
    def at_level(cls, level: int, coords: Sequence[ScalarLike]) -> "ModuleVector":
        return cls({level: coords})

    def is_zero(self) -> bool:
        return not self.components

    def levels(self) -> list[int]:
        return list(self.components)

    def coords(self, level: int, dim: int) -> Vector:
        return self.components.get(level, (ZERO,) * dim)

    @property
    def level(self) -> int:
        if len(self.components) != 1:
            raise ModuleError("vector is not homogeneous")
        return next(iter(self.components))

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self.components)
        for lv, c in other.components.items():
            if lv in out:
                out[lv] = tuple(a + b for a, b in zip(out[lv], c))
            else:
                out[lv] = c
        return ModuleVector(out)

    def __neg__(self):
        return ModuleVector({lv: tuple(-a for a in c) for lv, c in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: ScalarLike) -> "ModuleVector":
        c = scalar(c)
        return ModuleVector({lv: tuple(a * c for a in v) for lv, v in self.components.items()})

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(tuple(self.components.items()))

    def render(self, module: WeightModule | None = None) -> str:
        if not self.components:
            return "0"
        parts = []
        for lv, coords in self.components.items():
            for j, c in enumerate(coords):
                if not c:
                    continue
                lab = module.labels[lv][j] if module is not None else f"b{lv}.{j}"
                neg = c.leading_sign() < 0
                a = -c if neg else c
                if a.is_one():
                    body = lab
                else:
                    s = render_scalar(a)
                    if a.is_laurent() and len(a.num.coefficients) > 1:
                        s = f"({s})"
                    body = f"{s} {lab}"
                if parts:
                    parts.append((" - " if neg else " + ") + body)
                else:
                    parts.append(("-" if neg else "") + body)
        return "".join(parts)

    def __repr__(self):
        return f"ModuleVector({self.render()})"


class ModuleMap:
    """Level-preserving linear map; ``blocks[i]`` is dim_target(i) x dim_source(i)."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: WeightModule, target: WeightModule, blocks: Sequence[Matrix]):
        if source.top != target.top or source.depth != target.depth:
            raise ModuleError("map endpoints must share top weight and depth; align them first")
        blocks = tuple(blocks)
        if len(blocks) != source.depth + 1:
            raise ModuleError("one block per level required")
        for i, b in enumerate(blocks):
            if b.shape != (target.dims[i], source.dims[i]):
                raise ShapeError(f"block {i} has shape {b.shape}, expected "
                                 f"{(target.dims[i], source.dims[i])}")
        self.source = source
        self.target = target
        self.blocks = blocks

    @property
    def depth(self) -> int:
        return self.source.depth

    def violations(self) -> list[str]:
        """Every place where the map fails to intertwine e or f."""
        s, t, b = self.source, self.target, self.blocks
        out = []
        for i in range(1, self.depth + 1):
            if b[i - 1] @ s.E(i) != t.E(i) @ b[i]:
                out.append(f"e-intertwining fails at level {i}")
        for i in range(self.depth):
            if b[i + 1] @ s.F(i) != t.F(i) @ b[i]:
                out.append(f"f-intertwining fails at level {i}")
        return out

    def is_homomorphism(self) -> bool:
        return not self.violations()

    def is_invertible(self) -> bool:
        return all(blk.is_square() and blk.rank() == blk.nrows for blk in self.blocks)

    def is_injective(self) -> bool:
        return all(blk.rank() == blk.ncols for blk in self.blocks)

    def is_surjective(self) -> bool:
        return all(blk.rank() == blk.nrows for blk in self.blocks)

    def is_zero(self) -> bool:
        return all(blk.is_zero() for blk in self.blocks)

    def apply(self, v: ModuleVector) -> ModuleVector:
        return ModuleVector({lv: self.blocks[lv].apply(c) for lv, c in v.components.items()})

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        return ModuleMap(other.source, self.target,
                         [a @ b for a, b in zip(self.blocks, other.blocks)])

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.blocks, other.blocks)])

    def scale(self, c: ScalarLike) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a.scale(c) for a in self.blocks])

    def render(self) -> str:
        lines = []
        for i, blk in enumerate(self.blocks):
            if blk.ncols == 0:
                continue
            for j in range(blk.ncols):
                img = ModuleVector({i: blk.column(j)})
                lines.append(f"{self.source.labels[i][j]} -> {img.render(self.target)}")
        return "; ".join(lines)

    def __repr__(self):
        return f"ModuleMap({self.render()})"


def identity_map(m: WeightModule) -> ModuleMap:
    return ModuleMap(m, m, [Matrix.identity(d) for d in m.dims])
