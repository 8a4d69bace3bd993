from __future__ import annotations

import pytest

from aschcheck import constructions as C
from aschcheck.clifford import (
    BlockSystem,
    NotImprimitive,
    absolute_irreducibility,
    block_system,
    endomorphism_algebra,
    extend_scalars,
    homogeneous_components,
    verify_block_system,
)
from aschcheck.errors import NotNormal
from aschcheck.finite_field import make_field
from aschcheck.groups import close_group, kernel_of, perm_action
from aschcheck.matrices import Matrix

F3, F5, F7, F9, F25 = make_field(3), make_field(5), make_field(7), make_field(3, 2), make_field(5, 2)


def sl23():
    return close_group([Matrix.from_rows(F3, [[1, 1], [0, 1]]), Matrix.from_rows(F3, [[1, 0], [1, 1]])])


def d8_with_sign():
    g, ps = C.dihedral(F5, 4)
    G = close_group(g)
    return G, perm_action(G, ps)


def rotation():
    return close_group([Matrix.from_rows(F3, [[0, 2], [1, 0]])])


def test_absolute_irreducibility_examples():
    assert absolute_irreducibility(sl23())
    assert not absolute_irreducibility(rotation())
    assert absolute_irreducibility(close_group([Matrix.from_rows(F5, [[2]])]))


def test_endomorphism_algebra_dimensions():
    G = sl23()
    assert endomorphism_algebra(G, range(G.order)).dim == 1
    assert endomorphism_algebra(G, [0]).dim == 4
    D, psi = d8_with_sign()
    E = endomorphism_algebra(D, kernel_of(psi, D))
    assert E.dim == 2 and all(B.rows()[0][1] == 0 and B.rows()[1][0] == 0 for B in E.basis)


def test_not_normal():
    D, _ = d8_with_sign()
    swap = D.index_of(Matrix.from_rows(F5, [[0, 1], [1, 0]]))
    with pytest.raises(NotNormal):
        endomorphism_algebra(D, [0, swap])


def test_homogeneous_components_examples():
    G = sl23()
    assert homogeneous_components(G, range(G.order)) == [((1, 0), (0, 1))]
    D, psi = d8_with_sign()
    comps = homogeneous_components(D, kernel_of(psi, D))
    assert sorted(comps) == [((0, 1),), ((1, 0),)]
    assert homogeneous_components(G, G.derived_subgroup) == [((1, 0), (0, 1))]


def test_block_system_dihedral():
    D, psi = d8_with_sign()
    bs = block_system(D, kernel_of(psi, D), psi)
    assert isinstance(bs, BlockSystem)
    assert sorted(bs.blocks) == [((0, 1),), ((1, 0),)]
    assert bs.multiplicity == 1
    assert verify_block_system(D, bs, psi)


def test_block_system_refuses_trivial_action():
    G = sl23()
    psi = perm_action(G, [(0,), (0,)])
    assert isinstance(block_system(G, kernel_of(psi, G), psi), NotImprimitive)


def test_a5_is_primitive_over_gf7():
    g, pts = C.a5_degree5(F7)
    G = close_group(g)
    assert G.order == 60 and absolute_irreducibility(G)
    psi = perm_action(G, pts)
    N = kernel_of(psi, G)
    assert N == frozenset({0})
    assert len(homogeneous_components(G, N)) == 1
    assert isinstance(block_system(G, N, psi), NotImprimitive)


def test_extend_scalars():
    G = sl23()
    assert extend_scalars(G, F3) is G
    R = rotation()
    assert len(endomorphism_algebra(R, range(R.order)).basis) == 2
    R9 = extend_scalars(R, F9)
    comps = homogeneous_components(R9, range(R9.order))
    assert len(comps) == 2 and all(len(S) == 1 for S in comps)
    # each component is an eigenline of the rotation
    A = R9.generators[0]
    for S in comps:
        v = Matrix(F9, 2, 1, S[0])
        w = A @ v
        lam = F9.div(w.data[0], v.data[0]) if v.data[0] else F9.div(w.data[1], v.data[1])
        assert w == v.scale(lam) and F9.mul(lam, lam) == F9.neg(1)


def test_extension_keeps_dihedral_blocks():
    D, psi = d8_with_sign()
    E = extend_scalars(D, F25)
    bs = block_system(E, kernel_of(psi, E), psi)
    assert isinstance(bs, BlockSystem) and sorted(bs.blocks) == [((0, 1),), ((1, 0),)]


def test_singer_normalizer_needs_the_extension():
    g, ps = C.singer_normalizer(F3)
    G = close_group(g)
    psi = perm_action(G, ps)
    N = kernel_of(psi, G)
    assert isinstance(block_system(G, N, psi), NotImprimitive)
    E = extend_scalars(G, F9)
    bs = block_system(E, N, psi)
    assert isinstance(bs, BlockSystem) and verify_block_system(E, bs, psi)


def test_components_independent_of_seed():
    D, psi = d8_with_sign()
    N = kernel_of(psi, D)
    assert homogeneous_components(D, N, 0) == homogeneous_components(D, N, 99)
