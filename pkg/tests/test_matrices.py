from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aschcheck import poly
from aschcheck.errors import (
    EmptyGeneratorList,
    FieldMismatch,
    NormConditionViolated,
    ShapeMismatch,
    SingularMatrix,
)
from aschcheck.finite_field import GaloisAut, make_field
from aschcheck.matrices import (
    Matrix,
    char_poly,
    entrywise_frobenius,
    hilbert90_matrix,
    intertwiner_space,
    kronecker,
    nullspace,
    random_invertible,
    random_matrix,
    rank,
    rref,
    solve_linear,
)

from oracles import all_matrices, det_by_permutations

F2, F3, F4, F5, F9 = make_field(2), make_field(3), make_field(2, 2), make_field(5), make_field(3, 2)


def M(F, rows):
    return Matrix.from_rows(F, rows)


def test_trace_of_identity():
    assert Matrix.identity(F2, 2).trace() == 0
    assert Matrix.identity(F3, 2).trace() == 2


def test_inverse_example():
    A = M(F3, [[0, 1], [2, 0]])
    assert A.inverse() == M(F3, [[0, 2], [1, 0]])
    assert A @ A.inverse() == Matrix.identity(F3, 2)


def test_singular_inverse_and_shape_errors():
    with pytest.raises(SingularMatrix):
        M(F5, [[1, 2], [2, 4]]).inverse()
    with pytest.raises(ShapeMismatch):
        M(F5, [[1, 2]]) @ M(F5, [[1, 2]])
    with pytest.raises(FieldMismatch):
        Matrix.identity(F5, 2) @ Matrix.identity(F3, 2)


def test_det_multiplicative_over_gf2_exhaustive():
    inv = [M(F2, r) for r in all_matrices(F2, 2) if det_by_permutations(r, F2)]
    assert len(inv) == 6
    for A in inv:
        for B in inv:
            assert (A @ B).det() == F2.mul(A.det(), B.det())


@pytest.mark.parametrize("F", [F3, F4, F5, F9])
def test_det_matches_leibniz(F):
    rng = random.Random(3)
    for n in (1, 2, 3, 4):
        for _ in range(10):
            A = random_matrix(F, n, n, rng)
            assert A.det() == det_by_permutations(A.rows(), F)


def test_solve_linear_examples():
    I = Matrix.identity(F5, 2)
    assert len(solve_linear([[(I, I), (-I, I)]], 2, 2)) == 4
    D = Matrix.diag(F5, [1, 2])
    basis = solve_linear([[(I, D), (-D, I)]], 2, 2)
    assert basis == [M(F5, [[1, 0], [0, 0]]), M(F5, [[0, 0], [0, 1]])]
    # X = 2X has only the zero solution
    assert solve_linear([[(I, I), (I.scale(F5.neg(2)), I)]], 2, 2) == []
    with pytest.raises(EmptyGeneratorList):
        solve_linear([], 2, 2)


def test_intertwiner_examples():
    u, l = M(F3, [[1, 1], [0, 1]]), M(F3, [[1, 0], [1, 1]])
    assert intertwiner_space([u, l], [u, l]) == [Matrix.identity(F3, 2)]
    duals = [A.inverse().T for A in (u, l)]
    assert intertwiner_space([u, l], duals) == [M(F3, [[0, 1], [2, 0]])]
    I3 = Matrix.identity(F5, 3)
    assert len(intertwiner_space([I3], [I3])) == 9
    with pytest.raises(EmptyGeneratorList):
        intertwiner_space([], [])


def test_kronecker_examples():
    rng = random.Random(5)
    A = random_matrix(F5, 2, 2, rng)
    I2 = Matrix.identity(F5, 2)
    K = kronecker(I2, A)
    assert K.rows() == [r + [0, 0] for r in A.rows()] + [[0, 0] + r for r in A.rows()]
    P = M(F5, [[0, 1], [1, 0]])
    assert kronecker(P, A).trace() == 0
    for _ in range(10):
        A, B, C, D = (random_matrix(F5, 2, 2, rng) for _ in range(4))
        assert kronecker(A, B) @ kronecker(C, D) == kronecker(A @ C, B @ D)


def test_entrywise_frobenius_examples():
    A = M(F4, [[2, 0], [0, 1]])
    assert entrywise_frobenius(A, GaloisAut(F4, 1)) == M(F4, [[3, 0], [0, 1]])
    assert entrywise_frobenius(A, GaloisAut(F4, 0)) == A
    rng = random.Random(7)
    for _ in range(30):
        X, Y = random_matrix(F4, 2, 2, rng), random_matrix(F4, 2, 2, rng)
        assert (X @ Y).frob(1) == X.frob(1) @ Y.frob(1)
    with pytest.raises(FieldMismatch):
        entrywise_frobenius(A, GaloisAut(F9, 1))


def test_hilbert90_matrix_examples():
    aut = GaloisAut(F4, 1)
    I = Matrix.identity(F4, 2)
    z = hilbert90_matrix(I, aut)
    assert z.frob(aut).inverse() @ z == I
    y = Matrix.scalar(F4, 2, 2)
    z = hilbert90_matrix(y, aut)
    assert z.frob(aut).inverse() @ z == y
    # the scalar solution from the scalar solver also works
    mu = F4.hilbert90(2, 1)
    zs = Matrix.scalar(F4, 2, F4.inv(mu))
    assert zs.frob(aut).inverse() @ zs == y
    with pytest.raises(NormConditionViolated):
        hilbert90_matrix(M(F4, [[0, 1], [1, 1]]), aut)


def test_hilbert90_matrix_round_trip_gf9():
    aut = GaloisAut(F9, 1)
    rng = random.Random(11)
    for seed in range(20):
        z0 = random_invertible(F9, 2, rng)
        y = z0.frob(aut).inverse() @ z0
        z = hilbert90_matrix(y, aut, seed)
        assert z.frob(aut).inverse() @ z == y


def test_rref_is_canonical():
    rows = [[2, 4, 1], [1, 2, 3], [0, 0, 1]]
    R, piv = rref(F5, rows)
    assert piv == [0, 2]
    assert R[0] == [1, 2, 0] and R[1] == [0, 0, 1]


@pytest.mark.parametrize("F", [F3, F4, F5])
def test_char_poly_matches_determinant(F):
    rng = random.Random(13)
    for n in (1, 2, 3, 4):
        for _ in range(5):
            A = random_matrix(F, n, n, rng)
            cp = poly.trim(char_poly(A))
            for t in range(F.q):
                assert poly.evaluate(F, cp, t) == (Matrix.scalar(F, n, t) - A).det()


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([F2, F3, F4, F5, F9]), st.integers(1, 4), st.integers(1, 5), st.integers(0, 10**6))
def test_nullspace_property(F, nrows, ncols, seed):
    rng = random.Random(seed)
    A = random_matrix(F, nrows, ncols, rng)
    basis = nullspace(F, A.rows(), ncols)
    assert len(basis) + rank(F, A.rows()) == ncols
    for v in basis:
        col = Matrix(F, ncols, 1, tuple(v))
        assert (A @ col).is_zero()


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([F2, F3, F4, F5, F9]), st.integers(1, 4), st.integers(0, 10**6))
def test_inverse_property(F, n, seed):
    A = random_invertible(F, n, random.Random(seed))
    assert A @ A.inverse() == Matrix.identity(F, n)
    assert A.inverse() @ A == Matrix.identity(F, n)
    assert (A.T).det() == A.det()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([F3, F4, F5]), st.integers(0, 10**6))
def test_intertwiners_of_conjugates_are_shifted(F, seed):
    rng = random.Random(seed)
    As = [random_invertible(F, 2, rng) for _ in range(2)]
    x = random_invertible(F, 2, rng)
    Bs = [x @ A @ x.inverse() for A in As]
    for X in intertwiner_space(As, Bs):
        for A, B in zip(As, Bs):
            assert X @ A == B @ X
    # x itself lies in the span
    basis = intertwiner_space(As, Bs)
    assert rank(F, [X.data for X in basis] + [x.data]) == len(basis)
