import pytest

from uqsl2.linalg import (Matrix, ShapeError, block_diag, char_poly_multiplicity, coordinates,
                          hstack, inverse, nullspace, rank_of, rref, solve)
from uqsl2.scalars import ONE, Q, ZERO, qint


def test_rank_and_nullspace_over_q_of_q():
    # second row is (q + q^-1) times the first
    m = Matrix([[ONE, Q], [qint(2), qint(2) * Q]])
    assert m.rank() == 1
    (v,) = nullspace(m)
    assert m.apply(v) == (ZERO, ZERO)


def test_rref_pivots():
    m = Matrix([[0, 1, Q], [0, 2, 2 * Q], [1, 0, 0]])
    red, piv = rref(m)
    assert piv == [0, 1]
    assert red.rows[0] == (ONE, ZERO, ZERO)


def test_inverse_and_solve():
    m = Matrix([[Q, 1], [1, Q ** -1 + 1]])
    inv = inverse(m)
    assert inv is not None and inv @ m == Matrix.identity(2)
    b = (qint(3), ONE)
    x = solve(m, b)
    assert m.apply(x) == b


def test_singular_inverse_is_none():
    assert inverse(Matrix([[1, Q], [Q ** -1, 1]])) is None
    assert solve(Matrix([[1, 1], [1, 1]]), (ONE, ZERO)) is None


def test_coordinates():
    basis = [(ONE, Q), (ZERO, ONE)]
    assert coordinates(basis, (2 * ONE, 2 * Q + 3)) == (2 * ONE, 3 * ONE)
    assert coordinates([(ONE, ZERO)], (ZERO, ONE)) is None
    assert rank_of(basis, 2) == 2


def test_shapes():
    with pytest.raises(ShapeError):
        Matrix([[1, 2], [3]])
    with pytest.raises(ShapeError):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])
    a, b = Matrix([[1]]), Matrix([[1, 2], [3, 4]])
    assert block_diag([a, b]).shape == (3, 3)
    assert hstack([b, b], 2).shape == (2, 4)


def test_char_poly_multiplicity():
    c = qint(2)
    jordan = Matrix([[c, 1, 0], [0, c, 0], [0, 0, Q]])
    assert char_poly_multiplicity(jordan, c) == 2
    assert char_poly_multiplicity(jordan, Q) == 1
    assert char_poly_multiplicity(jordan, ONE) == 0
