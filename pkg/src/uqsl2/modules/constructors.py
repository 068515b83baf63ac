"""Concrete modules: Verma, finite simple, S(n, eps), T(n, eps) and T/M."""

from __future__ import annotations

from ..linalg import Matrix
from ..scalars import ONE, ZERO, RatScalar, qfact, qint
from .core import ModuleError, ModuleVector, Weight, WeightModule, sign_char


def _check_sign(eps: int) -> int:
    if eps not in (1, -1):
        raise ModuleError(f"eps must be +1 or -1, got {eps}")
    return eps


def _check_depth(depth: int) -> int:
    if depth < 0:
        raise ModuleError("depth must be nonnegative")
    return depth


def verma_e(eps: int, m: int, i: int) -> RatScalar:
    """e v_i = eps [i][m-i+1] v_(i-1) in M(eps q^m)."""
    return qint(i) * qint(m - i + 1) * eps


def verma(eps: int, m: int, depth: int) -> WeightModule:
    _check_sign(eps)
    _check_depth(depth)
    dims = [1] * (depth + 1)
    e = [Matrix([[verma_e(eps, m, i)]]) for i in range(1, depth + 1)]
    f = [Matrix([[ONE]]) for _ in range(depth)]
    labels = [[f"v{i}"] for i in range(depth + 1)]
    return WeightModule(Weight(eps, m), dims, e, f, finite=False, labels=labels,
                        name=f"M({sign_char(eps)}q^{m})")


def finite_simple(n: int, eps: int) -> WeightModule:
    """V(n, eps): dimension n+1, highest weight eps q^n."""
    if n < 0:
        raise ModuleError("finite_simple needs n >= 0")
    _check_sign(eps)
    m = verma(eps, n, n)
    return m.replace(finite=True, name=f"V({n},{sign_char(eps)})")


def s_range(n: int, level: int) -> range:
    """Admissible a for the basis f^a e^(n+1-level+a) of S(n, eps) at a level."""
    return range(max(0, level - n - 1), level + 1)


def s_label(a: int, j: int) -> str:
    return f"f{a}e{j}"


def s_module(n: int, eps: int, depth: int) -> WeightModule:
    """S(n, eps) = U/J(n, eps), with basis f^a e^j (0 <= j <= n+1) on the cyclic vector 1.

    Level l holds the f^a e^j with j - a = n + 1 - l; e^(n+2) acts as 0.
    """
    if n < 0:
        raise ModuleError("s_module needs n >= 0")
    _check_sign(eps)
    _check_depth(depth)
    ranges = [s_range(n, lv) for lv in range(depth + 1)]
    dims = [len(r) for r in ranges]
    labels = [[s_label(a, n + 1 - lv + a) for a in r] for lv, r in enumerate(ranges)]
    e_mats, f_mats = [], []
    for lv in range(1, depth + 1):
        src, dst = ranges[lv], ranges[lv - 1]
        rows = [[ZERO] * len(src) for _ in dst]
        for col, a in enumerate(src):
            j = n + 1 - lv + a
            # e f^a e^j = f^a e^(j+1) - eps [a][n+1+a-2j] f^(a-1) e^j
            if j + 1 <= n + 1:
                rows[dst.index(a)][col] += ONE
            if a >= 1:
                rows[dst.index(a - 1)][col] -= qint(a) * qint(n + 1 + a - 2 * j) * eps
        e_mats.append(Matrix(rows, len(src)))
    for lv in range(depth):
        src, dst = ranges[lv], ranges[lv + 1]
        rows = [[ZERO] * len(src) for _ in dst]
        for col, a in enumerate(src):
            rows[dst.index(a + 1)][col] = ONE
        f_mats.append(Matrix(rows, len(src)))
    return WeightModule(Weight(eps, n), dims, e_mats, f_mats, finite=False, labels=labels,
                        name=f"S({n},{sign_char(eps)})")


def z_coefficient(n: int, eps: int, i: int) -> RatScalar:
    """alpha_i = eps^(n-i) [n]! [n-i]! / [i]!."""
    return qfact(n) * qfact(n - i) / qfact(i) * (eps ** (n - i))


def theorem_z_vector(n: int, eps: int) -> ModuleVector:
    """The generator z = sum_i alpha_i f^i e^i, at level n+1 of s_module(n, eps)."""
    coords = [z_coefficient(n, eps, a) if a <= n else ZERO for a in s_range(n, n + 1)]
    return ModuleVector({n + 1: coords})


def t_e_coefficient(n: int, eps: int, i: int) -> RatScalar:
    """eps [i][n-i+1], the diagonal part of e on v_i and z_i."""
    return qint(i) * qint(n - i + 1) * eps


def t_module(n: int, eps: int, depth: int) -> WeightModule:
    """T(n, eps) with basis v_0..v_n, then (z_i, v_i) for i >= n+1."""
    if n < 0:
        raise ModuleError("t_module needs n >= 0")
    _check_sign(eps)
    if depth < n + 1:
        raise ModuleError(f"T({n},{sign_char(eps)}) needs depth >= {n + 1}, got {depth}")
    dims = [1 if i <= n else 2 for i in range(depth + 1)]
    labels = [[f"v{i}"] if i <= n else [f"z{i}", f"v{i}"] for i in range(depth + 1)]

    def vpos(i):
        return 0 if i <= n else 1

    e_mats, f_mats = [], []
    for i in range(1, depth + 1):
        rows = [[ZERO] * dims[i] for _ in range(dims[i - 1])]
        c = t_e_coefficient(n, eps, i)
        rows[vpos(i - 1)][vpos(i)] = c
        if i >= n + 1:
            if i >= n + 2:
                rows[0][0] = c
            rows[vpos(i - 1)][0] += ONE
        e_mats.append(Matrix(rows, dims[i]))
    for i in range(depth):
        rows = [[ZERO] * dims[i] for _ in range(dims[i + 1])]
        rows[vpos(i + 1)][vpos(i)] = ONE
        if i >= n + 1:
            rows[0][0] = ONE
        f_mats.append(Matrix(rows, dims[i]))
    return WeightModule(Weight(eps, n), dims, e_mats, f_mats, finite=False, labels=labels,
                        name=f"T({n},{sign_char(eps)})")


def t_quotient(n: int, eps: int, depth: int) -> WeightModule:
    """T(n, eps)/M(eps q^(-n-2)) in the basis v_0..v_n, z_(n+1), z_(n+2), ..."""
    if n < 0:
        raise ModuleError("t_quotient needs n >= 0")
    _check_sign(eps)
    _check_depth(depth)
    dims = [1] * (depth + 1)
    labels = [[f"v{i}"] if i <= n else [f"z{i}"] for i in range(depth + 1)]
    e_mats = []
    for i in range(1, depth + 1):
        e_mats.append(Matrix([[ONE if i == n + 1 else t_e_coefficient(n, eps, i)]]))
    f_mats = [Matrix([[ZERO if i == n else ONE]]) for i in range(depth)]
    return WeightModule(Weight(eps, n), dims, e_mats, f_mats, finite=False, labels=labels,
                        name=f"T({n},{sign_char(eps)})/M({sign_char(eps)}q^{-n - 2})")
