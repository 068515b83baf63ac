"""Deliberately broken constructors used as negative controls."""

from dataclasses import replace

from uqsl2.linalg import Matrix
from uqsl2.modules import constructors
from uqsl2.modules.core import WeightModule
from uqsl2.verify import DEFAULT, Builders


def _edit_e(m: WeightModule, edits) -> WeightModule:
    """edits: level i -> function(rows) mutating the rows of E(i) in place."""
    e_mats = list(m.e_mats)
    for i, fn in edits.items():
        rows = [list(r) for r in e_mats[i - 1].rows]
        fn(rows)
        e_mats[i - 1] = Matrix(rows, e_mats[i - 1].ncols)
    return m.replace(e_mats=e_mats)


def t_module_wrong_sign(n: int, eps: int, depth: int) -> WeightModule:
    """T with the z-coefficient of e negated on every level past n+1."""
    m = constructors.t_module(n, eps, depth)

    def flip(rows):
        rows[0][0] = -rows[0][0]
    return _edit_e(m, {i: flip for i in range(n + 2, depth + 1)})


def t_module_dropped_v(n: int, eps: int, depth: int) -> WeightModule:
    """T with the v-component of e z_i removed."""
    m = constructors.t_module(n, eps, depth)

    def drop_at(i):
        row = 0 if i - 1 <= n else 1

        def fn(rows):
            rows[row][0] = rows[row][0] - 1
        return fn
    return _edit_e(m, {i: drop_at(i) for i in range(n + 1, depth + 1)})


def dual_untransposed(m: WeightModule) -> WeightModule:
    """The restricted dual built without transposing e and f where they are square."""
    e = [m.F(i - 1) if m.F(i - 1).is_square() else m.F(i - 1).T for i in range(1, m.depth + 1)]
    f = [m.E(i + 1) if m.E(i + 1).is_square() else m.E(i + 1).T for i in range(m.depth)]
    labels = [[s + "*" for s in lv] for lv in m.labels]
    return WeightModule(m.top, m.dims, e, f, finite=m.finite, labels=labels,
                        name=f"{m.name}^sigma")


WRONG_SIGN = replace(DEFAULT, t_module=t_module_wrong_sign)
DROPPED_V = replace(DEFAULT, t_module=t_module_dropped_v)
UNTRANSPOSED = replace(DEFAULT, restricted_dual=dual_untransposed)

CORRUPTIONS: dict[str, Builders] = {
    "wrong-sign": WRONG_SIGN,
    "dropped-v": DROPPED_V,
    "untransposed-dual": UNTRANSPOSED,
}
