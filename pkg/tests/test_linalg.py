from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyspectral import linalg

fracs = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=12
)


def mat(rows):
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def test_rref_canonical_example():
    rows, pivots = linalg.rref(mat([[2, 4, 0], [1, 2, 1]]))
    assert rows == mat([[1, 2, 0], [0, 0, 1]])
    assert pivots == (0, 2)


@given(st.lists(st.lists(fracs, min_size=3, max_size=3), min_size=1, max_size=4))
def test_rref_idempotent(rows):
    reduced, _ = linalg.rref(rows)
    again, _ = linalg.rref(reduced)
    assert again == reduced


def test_det_and_inverse():
    m = mat([[1, 2], [3, 5]])
    assert linalg.det(m) == Fraction(-1)
    inv = linalg.inverse(m)
    assert linalg.matmul(m, inv) == linalg.identity(2)
    with pytest.raises(ValueError):
        linalg.inverse(mat([[1, 2], [2, 4]]))


def test_solve_square_singular_none():
    assert linalg.solve_square(mat([[1, 2], [2, 4]]), (1, 1)) is None
    sol = linalg.solve_square(mat([[2, 0], [0, 4]]), (1, 1))
    assert sol == (Fraction(1, 2), Fraction(1, 4))


def test_nullspace_orthogonal_to_rows():
    m = mat([[1, 1, 0], [0, 1, 1]])
    basis = linalg.nullspace(m, 3)
    assert len(basis) == 1
    assert all(linalg.dot(row, basis[0]) == 0 for row in m)


def test_primitive_integer():
    assert linalg.primitive_integer((Fraction(2, 3), Fraction(-4, 3))) == (1, -2)
    assert linalg.primitive_integer((Fraction(0), Fraction(-6))) == (0, -1)
    with pytest.raises(ValueError):
        linalg.primitive_integer((Fraction(0), Fraction(0)))


def test_sign_canonical():
    assert linalg.sign_canonical((0, -2, 1)) == (0, 2, -1)
    assert linalg.sign_canonical((3, -1)) == (3, -1)


def test_complement_normal_inside_plane():
    sup = mat([[1, 0, 0], [0, 1, 1]])
    sub = mat([[1, 0, 0]])
    u = linalg.complement_normal(sup, sub)
    assert u in ((0, 1, 1), (0, -1, -1))


def test_projection_matrix_idempotent():
    basis = mat([[1, 1, 0]])
    p = linalg.projection_matrix(basis, 3)
    assert linalg.matmul(p, p) == p
    v = linalg.matvec(p, (Fraction(2), Fraction(0), Fraction(7)))
    assert v == (Fraction(1), Fraction(1), Fraction(0))


def test_gram_det_empty_is_one():
    assert linalg.gram_det(()) == 1


def test_affine_dim():
    assert linalg.affine_dim([(0, 0), (1, 0), (2, 0)]) == 1
    assert linalg.affine_dim([(0, 0), (1, 0), (0, 1)]) == 2
    assert linalg.affine_dim([(5, 5)]) == 0
