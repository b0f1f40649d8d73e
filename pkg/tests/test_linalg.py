from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morita_lab.fields import F2, F3, QQ, FieldSpec, field_from_token
from morita_lab import linalg


def test_field_spec_validation():
    with pytest.raises(ValueError):
        FieldSpec("prime", 4)
    with pytest.raises(ValueError):
        FieldSpec("prime", (1 << 31) + 11)
    with pytest.raises(ValueError):
        FieldSpec("weird")
    assert field_from_token("Q") == QQ
    assert field_from_token("3") == F3


def test_rank_empty():
    assert linalg.rank(F3, F3.zeros(0, 0)) == 0


def test_rank_identity_f3():
    assert linalg.rank(F3, F3.eye(3)) == 3


def test_rank_rational():
    # hand row-reduction: second row is twice the first
    m = QQ.asmatrix([[1, 2], [2, 4]])
    assert linalg.rank(QQ, m) == 1


def test_kernel_of_identity():
    assert linalg.kernel_basis(F2, F2.eye(2)).shape == (2, 0)


def test_kernel_of_zero():
    k = linalg.kernel_basis(F3, F3.zeros(2, 2))
    assert F3.equal(k, F3.eye(2))


def test_kernel_f2_line():
    # x + y = 0 over F_2 has the single solution line through (1, 1)
    k = linalg.kernel_basis(F2, F2.asmatrix([[1, 1]]))
    assert F2.equal(k, F2.asmatrix([[1], [1]]))


def test_solve_identity():
    b = F3.asmatrix([[2], [1]])
    assert F3.equal(linalg.solve(F3, F3.eye(2), b), b)


def test_solve_canonical_pivot_choice():
    x = linalg.solve(F2, F2.asmatrix([[1, 1]]), F2.asmatrix([[0]]))
    assert F2.equal(x, F2.zeros(2, 1))


def test_solve_inconsistent():
    assert linalg.solve(F2, F2.zeros(1, 1), F2.asmatrix([[1]])) is None


def test_quotient_by_full_space():
    proj, sect = linalg.quotient(F3, 2, F3.eye(2))
    assert proj.shape == (0, 2)
    assert sect.shape == (2, 0)


def test_quotient_by_zero():
    proj, sect = linalg.quotient(F3, 2, F3.zeros(2, 0))
    assert F3.equal(proj, F3.eye(2))
    assert F3.equal(sect, F3.eye(2))


def test_quotient_line_in_plane():
    sub = F3.asmatrix([[1], [1]])
    proj, sect = linalg.quotient(F3, 2, sub)
    assert proj.shape == (1, 2)
    assert F3.is_zero(F3.matmul(proj, sub))
    assert F3.equal(F3.matmul(proj, sect), F3.eye(1))


def _matrices(field, max_dim=5):
    return st.integers(0, max_dim).flatmap(
        lambda r: st.integers(0, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, 100), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            ).map(lambda rows: field.asmatrix(rows) if r else field.zeros(0, c))
        )
    )


@settings(max_examples=60, deadline=None)
@given(_matrices(F3))
def test_rank_nullity_f3(m):
    assert linalg.rank(F3, m) + linalg.kernel_basis(F3, m).shape[1] == m.shape[1]


@settings(max_examples=40, deadline=None)
@given(_matrices(QQ, max_dim=4))
def test_rank_nullity_rational(m):
    assert linalg.rank(QQ, m) + linalg.kernel_basis(QQ, m).shape[1] == m.shape[1]


@settings(max_examples=60, deadline=None)
@given(_matrices(F3))
def test_kernel_is_annihilated(m):
    k = linalg.kernel_basis(F3, m)
    assert F3.is_zero(F3.matmul(m, k))


@settings(max_examples=60, deadline=None)
@given(_matrices(F3, max_dim=4))
def test_quotient_laws(m):
    ambient = m.shape[0]
    proj, sect = linalg.quotient(F3, ambient, m)
    assert proj.shape[0] == ambient - linalg.rank(F3, m)
    assert F3.is_zero(F3.matmul(proj, m))
    assert F3.equal(F3.matmul(proj, sect), F3.eye(proj.shape[0]))


@settings(max_examples=30, deadline=None)
@given(_matrices(F3))
def test_determinism(m):
    r1, p1 = linalg.rref(F3, m)
    r2, p2 = linalg.rref(F3, np.array(m, copy=True))
    assert p1 == p2 and F3.equal(r1, r2)


@settings(max_examples=40, deadline=None)
@given(_matrices(F3, max_dim=4), _matrices(F3, max_dim=4))
def test_solve_solves(m, b):
    if b.shape[0] != m.shape[0]:
        b = F3.zeros(m.shape[0], 1)
    x = linalg.solve(F3, m, b)
    if x is not None:
        assert F3.equal(F3.matmul(m, x), F3.normalize(b))


def test_solve_rational_fractions():
    m = QQ.asmatrix([["1/2", 1], [0, "1/3"]])
    b = QQ.asmatrix([[1], [1]])
    x = linalg.solve(QQ, m, b)
    assert x is not None
    assert F3.equal if False else QQ.equal(QQ.matmul(m, x), b)
    inv = linalg.invert(QQ, m)
    assert QQ.equal(QQ.matmul(inv, m), QQ.eye(2))


def test_large_prime_object_dtype():
    big = FieldSpec("prime", (1 << 31) - 1)
    m = big.asmatrix([[1, 2], [3, 4]])
    assert m.dtype == object
    assert linalg.rank(big, m) == 2
    assert big.equal(big.matmul(m, linalg.invert(big, m)), big.eye(2))
