import random

import pytest
from hypothesis import given, settings, strategies as st

from ribbonsum import _snf_py
from ribbonsum._snf_backend import int_invariant_factors
from ribbonsum.exact_algebra import (QQ, ZZ, BoundedComplex, ChainMap, HomologySummary, InvalidComplex,
                                     InvalidRing, Matrix, PolynomialRing, PrimeField, cone, homology,
                                     invariant_factors, parse_ring, rank, smith_normal_form)

small_ints = st.integers(-6, 6)


def int_matrices(max_dim=5):
    return st.integers(0, max_dim).flatmap(
        lambda m: st.integers(0, max_dim).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m).map(
                lambda rows: Matrix(ZZ, m, n, rows))))


def test_diagonal_invariant_factors():
    assert invariant_factors(Matrix.from_rows([[2, 0], [0, 3]])) == (1, 6)


def test_two_torsion_in_cokernel():
    C = BoundedComplex({1: 1, 0: 1}, {1: Matrix.from_rows([[2]])})
    h = homology(C)
    assert h.rank(0) == 0 and h.torsion(0) == (2,)
    assert h.render([0, 1]) == "H0=Z/2; H1=0"


def test_identity_cone_is_acyclic():
    C = BoundedComplex({0: 1}, {})
    f = ChainMap(C, C, {0: Matrix.identity(1)})
    assert homology(cone(f)).groups == ()


def test_cone_of_nontrivial_complex_identity():
    C = BoundedComplex({1: 2, 0: 2}, {1: Matrix.from_rows([[2, 0], [0, 0]])})
    f = ChainMap(C, C, {0: Matrix.identity(2), 1: Matrix.identity(2)})
    assert homology(cone(f)).groups == ()


def test_identity_complex_acyclic():
    C = BoundedComplex({1: 1, 0: 1}, {1: Matrix.identity(1)})
    assert homology(C).groups == ()


def test_d_squared_nonzero_rejected():
    with pytest.raises(InvalidComplex):
        BoundedComplex({2: 1, 1: 1, 0: 1}, {2: Matrix.identity(1), 1: Matrix.identity(1)})


def test_shape_mismatch_rejected():
    with pytest.raises(InvalidComplex):
        BoundedComplex({1: 2, 0: 1}, {1: Matrix.identity(2)})


def test_parse_ring():
    assert parse_ring("z") == ZZ
    assert parse_ring("q") == QQ
    assert parse_ring("f5") == PrimeField(5)
    assert parse_ring("q[w]") == PolynomialRing(QQ)
    with pytest.raises(InvalidRing):
        parse_ring("f4")
    with pytest.raises(InvalidRing):
        parse_ring("r")


def test_polynomial_snf():
    R = PolynomialRing(QQ)
    w = R.monomial(1)
    A = Matrix(R, 2, 2, [[w, w], [w, w]])
    piv = invariant_factors(A, R)
    assert len(piv) == 1 and piv[0] == w


def test_field_coefficients_kill_torsion():
    C = BoundedComplex({1: 1, 0: 1}, {1: Matrix.from_rows([[2]])})
    assert homology(C, QQ).groups == ()
    h = homology(C, PrimeField(2))
    assert h.rank(0) == 1 and h.rank(1) == 1


def test_summary_tensor_and_fold():
    h = HomologySummary.from_dict(ZZ, {0: (2, []), 1: (1, [])})
    t = h.tensor_graded({0: 1, 2: 1})
    assert t.as_dict() == {0: (2, ()), 1: (1, ()), 2: (2, ()), 3: (1, ())}
    assert t.folded().as_dict() == {0: (4, ()), 1: (2, ())}


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_smith_form_is_unimodular_factorization(A):
    S = smith_normal_form(A)
    assert S.U @ A @ S.V == S.D
    piv = [S.D[i, i] for i in range(min(A.rows, A.cols)) if S.D[i, i]]
    for a, b in zip(piv, piv[1:]):
        assert b % a == 0
    assert tuple(piv) == invariant_factors(A)


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_rank_over_q_matches(A):
    assert rank(A) == rank(A, QQ)


@settings(max_examples=100, deadline=None)
@given(int_matrices(4), int_matrices(4))
def test_composite_complex_homology_euler(A, B):
    # Euler characteristic of a two-term complex equals the rank difference
    C = BoundedComplex({1: A.cols, 0: A.rows}, {1: A})
    h = homology(C)
    assert h.rank(0) - h.rank(1) == A.rows - A.cols


def test_kernel_backend_matches_pure_python():
    rng = random.Random(7)
    for _ in range(300):
        m, n = rng.randint(0, 6), rng.randint(0, 6)
        flat = [rng.randint(-20, 20) for _ in range(m * n)]
        assert tuple(int_invariant_factors(m, n, flat)) == tuple(_snf_py.int_invariant_factors(m, n, flat))


def test_kernel_overflow_falls_back():
    big = 2 ** 62
    flat = [big, big - 1, big - 3, big + 5]
    assert tuple(int_invariant_factors(2, 2, flat)) == tuple(_snf_py.int_invariant_factors(2, 2, flat))
