"""Module homomorphisms: exact hom spaces, isomorphism search, maps out of cyclic modules."""

from __future__ import annotations

import random

from ..linalg import Matrix, Vector, inverse, nullspace, rref
from ..scalars import ZERO, RatScalar
from .core import ModuleError, ModuleMap, ModuleVector, WeightModule
from .ops import align, apply_word_e_then_f, trim_top


def hom_search(src: WeightModule, dst: WeightModule) -> list[ModuleMap]:
    """A basis of the maps src -> dst intertwining e and f on the stored levels.

    Solved level by level: the partial solutions on levels 0..i are kept as a
    basis, and level i+1 adds fresh unknowns constrained by the two squares
    linking levels i and i+1.
    """
    if src.top != dst.top or src.depth != dst.depth:
        raise ModuleError("hom_search needs modules with equal top weight and depth")
    ds, dt = src.dims, dst.dims
    # level 0: every matrix is allowed
    partial: list[list[Matrix]] = []
    for r in range(dt[0]):
        for c in range(ds[0]):
            rows = [[ZERO] * ds[0] for _ in range(dt[0])]
            rows[r][c] = RatScalar.const(1)
            partial.append([Matrix(rows, ds[0])])
    for lv in range(src.depth):
        nxt_s, nxt_t = ds[lv + 1], dt[lv + 1]
        k = len(partial)
        ny = nxt_s * nxt_t
        fs, ft = src.F(lv), dst.F(lv)
        es, et = src.E(lv + 1), dst.E(lv + 1)
        f_img = [ft @ p[lv] for p in partial]
        e_img = [p[lv] @ es for p in partial]
        rows = []
        # Y F^s - F^t X = 0, entries (r, c) with r < nxt_t, c < ds[lv]
        for r in range(nxt_t):
            for c in range(ds[lv]):
                row = [-f_img[j][r, c] for j in range(k)] + [ZERO] * ny
                for s in range(nxt_s):
                    if fs[s, c]:
                        row[k + r * nxt_s + s] = fs[s, c]
                rows.append(row)
        # X E^s - E^t Y = 0, entries (r, c) with r < dt[lv], c < nxt_s
        for r in range(dt[lv]):
            for c in range(nxt_s):
                row = [e_img[j][r, c] for j in range(k)] + [ZERO] * ny
                for s in range(nxt_t):
                    if et[r, s]:
                        row[k + s * nxt_s + c] = -et[r, s]
                rows.append(row)
        width = k + ny
        if rows:
            sols = nullspace(Matrix(rows, width))
        else:
            sols = [tuple(RatScalar.const(1) if i == j else ZERO for i in range(width))
                    for j in range(width)]
        new_partial = []
        for sol in sols:
            lam, y = sol[:k], sol[k:]
            prev = []
            for j in range(lv + 1):
                acc = Matrix.zeros(dt[j], ds[j])
                for idx, c in enumerate(lam):
                    if c:
                        acc = acc + partial[idx][j].scale(c)
                prev.append(acc)
            ymat = Matrix([[y[r * nxt_s + s] for s in range(nxt_s)] for r in range(nxt_t)],
                          nxt_s)
            new_partial.append(prev + [ymat])
        partial = new_partial
    return [ModuleMap(src, dst, blocks) for blocks in partial]


def _combination(maps: list[ModuleMap], coeffs) -> ModuleMap:
    blocks = []
    for lv in range(maps[0].depth + 1):
        acc = None
        for m, c in zip(maps, coeffs):
            if c:
                term = m.blocks[lv].scale(c)
                acc = term if acc is None else acc + term
        blocks.append(acc if acc is not None else Matrix.zeros(*maps[0].blocks[lv].shape))
    return ModuleMap(maps[0].source, maps[0].target, blocks)


def prepare_pair(a: WeightModule, b: WeightModule) -> tuple[WeightModule, WeightModule]:
    """Trim zero top levels and align, so that isomorphic modules get equal shapes."""
    a, b = trim_top(a), trim_top(b)
    if a.top.sign != b.top.sign or (a.top.exponent - b.top.exponent) % 2:
        raise ModuleError("modules live on different weight strands")
    return align(a, b)


def is_isomorphic(a: WeightModule, b: WeightModule, attempts: int = 24,
                  seed: int = 0) -> ModuleMap | None:
    """An isomorphism a -> b on the common stored levels, or None.

    A hit is certified (intertwining and invertible on every level).  A miss is
    exact when the hom space is zero or the characters differ; otherwise it
    means no basis element and no seeded random combination was invertible.
    """
    try:
        a, b = prepare_pair(a, b)
    except ModuleError:
        return None
    if a.dims != b.dims:
        return None
    homs = hom_search(a, b)
    if not homs:
        return None
    for h in homs:
        if h.is_invertible():
            return h
    rng = random.Random(seed)
    for _ in range(attempts):
        coeffs = [rng.randint(-9, 9) for _ in homs]
        h = _combination(homs, coeffs)
        if h.is_invertible():
            return h
    return None


def cyclic_images(m: WeightModule, gen: ModuleVector) -> dict[int, list[tuple[tuple[int, int], Vector]]]:
    """For each level, the vectors f^a e^c gen keyed by the word (c, a)."""
    lv0 = gen.level
    coords = gen.components[lv0]
    out: dict[int, list] = {lv: [] for lv in range(m.depth + 1)}
    for c in range(lv0 + 1):
        for a in range(m.depth - (lv0 - c) + 1):
            res = apply_word_e_then_f(m, lv0, coords, c, a)
            target_lv = lv0 - c + a
            if res is None:
                out[target_lv].append(((c, a), (ZERO,) * m.dims[target_lv]))
            else:
                out[res[0]].append(((c, a), res[1]))
    return out


def map_from_generator(model: WeightModule, gen: ModuleVector, target: WeightModule,
                       image: ModuleVector) -> ModuleMap:
    """The module map model -> target sending gen to image.

    The model must be generated by gen; the map is built level by level from
    the words f^a e^c and then checked to be well defined and intertwining.
    """
    if model.top != target.top or model.depth != target.depth:
        raise ModuleError("model and target must be aligned")
    if gen.level != image.level:
        raise ModuleError("generator and image must sit on the same level")
    src = cyclic_images(model, gen)
    dst = cyclic_images(target, image)
    blocks = []
    for lv in range(model.depth + 1):
        s_vecs = [v for _, v in src[lv]]
        t_vecs = [v for _, v in dst[lv]]
        d_s, d_t = model.dims[lv], target.dims[lv]
        if d_s == 0:
            blocks.append(Matrix.zeros(d_t, 0))
            continue
        s_mat = Matrix.from_columns(s_vecs, d_s)
        _, piv = rref(s_mat)
        if len(piv) != d_s:
            raise ModuleError(f"model is not generated by the given vector at level {lv}")
        s_sq = Matrix.from_columns([s_vecs[c] for c in piv], d_s)
        t_sq = Matrix.from_columns([t_vecs[c] for c in piv], d_t)
        x = t_sq @ inverse(s_sq)
        if x @ s_mat != Matrix.from_columns(t_vecs, d_t):
            raise ModuleError(f"relations of the model fail in the target at level {lv}")
        blocks.append(x)
    phi = ModuleMap(model, target, blocks)
    bad = phi.violations()
    if bad:
        raise ModuleError("map from generator does not intertwine: " + bad[0])
    return phi
