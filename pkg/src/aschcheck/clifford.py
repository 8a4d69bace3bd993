"""Restriction to normal subgroups: commutants, homogeneous components, block systems.

The homogeneous components of ``V`` restricted to a normal subgroup ``N`` are
the images of the primitive central idempotents of ``End_KN(V)``.  We find them
by splitting the center with minimal polynomials of random central elements;
the restriction is semisimple (Clifford), so the center is a product of
fields and the recursion stops once each piece is a field.

This module also serves as the brute-force oracle for imprimitivity.
"""

from __future__ import annotations

import math
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from . import poly
from .errors import NotNormal, RetriesExhausted
from .finite_field import GF
from .groups import MatRep, PermAction, generating_subset, is_normal
from .matrices import Matrix, intertwiner_space, nullspace, rank, row_space

SPLIT_RETRIES = 64

Subspace = tuple[tuple[int, ...], ...]


def absolute_irreducibility(rep: MatRep) -> bool:
    """Schur test: the commutant of the generators is exactly the scalars."""
    gens = list(rep.generators)
    return len(intertwiner_space(gens, gens)) == 1


@dataclass(frozen=True)
class EndAlgebra:
    basis: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def endomorphism_algebra(rep: MatRep, N: Iterable[int]) -> EndAlgebra:
    N = frozenset(N)
    if 0 not in N or not is_normal(rep, N):
        raise NotNormal("subset is not a normal subgroup")
    gens = [rep.elements[i] for i in generating_subset(rep, N)]
    if not gens:
        n = rep.degree
        F = rep.field
        basis = []
        for i in range(n * n):
            data = [0] * (n * n)
            data[i] = 1
            basis.append(Matrix(F, n, n, tuple(data)))
        return EndAlgebra(tuple(basis))
    return EndAlgebra(tuple(intertwiner_space(gens, gens)))


def center(F: GF, basis: Sequence[Matrix]) -> list[Matrix]:
    """Basis of the center of the algebra spanned by ``basis``."""
    m = len(basis)
    if m == 0:
        return []
    size = len(basis[0].data)
    rows = []
    for j in range(m):
        comms = [(Bi @ basis[j] - basis[j] @ Bi).data for Bi in basis]
        for t in range(size):
            row = [comms[i][t] for i in range(m)]
            if any(row):
                rows.append(row)
    coeffs = nullspace(F, rows, m)
    out = []
    for c in coeffs:
        z = Matrix.zeros(F, basis[0].nrows, basis[0].ncols)
        for ci, Bi in zip(c, basis):
            if ci:
                z = z + Bi.scale(ci)
        out.append(z)
    return out


def _span_basis(F: GF, mats: Sequence[Matrix]) -> list[Matrix]:
    if not mats:
        return []
    n, m = mats[0].nrows, mats[0].ncols
    return [Matrix(F, n, m, v) for v in row_space(F, [x.data for x in mats])]


def minimal_polynomial(F: GF, c: Matrix, unit: Matrix) -> list[int]:
    """Monic minimal polynomial of ``c`` in an algebra with identity ``unit``."""
    powers = [unit.data]
    x = unit
    while True:
        x = x @ c
        powers.append(x.data)
        rows = [[p[t] for p in powers] for t in range(len(unit.data))]
        ker = nullspace(F, [r for r in rows if any(r)], len(powers))
        if ker:
            rel = list(ker[0])
            return poly.monic(F, poly.trim(rel))


def _eval_poly(F: GF, f: list[int], c: Matrix, unit: Matrix) -> Matrix:
    acc = Matrix.zeros(F, c.nrows, c.ncols)
    for coef in reversed(f):
        acc = acc @ c + unit.scale(coef)
    return acc


def primitive_idempotents(F: GF, Z: Sequence[Matrix], rng: random.Random, retries: int = SPLIT_RETRIES):
    """Primitive idempotents of a commutative semisimple matrix algebra with basis ``Z``."""
    n = Z[0].nrows
    stack = [Matrix.identity(F, n)]
    out = []
    while stack:
        e = stack.pop()
        eZ = _span_basis(F, [e @ z for z in Z])
        d = len(eZ)
        if d == 1:
            out.append(e)
            continue
        for _ in range(retries):
            c = Matrix.zeros(F, n, n)
            for b in eZ:
                r = rng.randrange(F.q)
                if r:
                    c = c + b.scale(r)
            m = minimal_polynomial(F, c, e)
            facs = poly.factor(F, m, rng)
            if len(facs) >= 2:
                for f, mult in facs:
                    fm = [1]
                    for _ in range(mult):
                        fm = poly.mul(F, fm, f)
                    g = poly.divmod_(F, m, fm)[0]
                    u = poly.mul(F, g, poly.inverse_mod(F, g, fm))
                    stack.append(_eval_poly(F, poly.mod(F, u, m), c, e))
                break
            if poly.degree(facs[0][0]) == d and facs[0][1] == 1:
                out.append(e)
                break
        else:
            raise RetriesExhausted(f"could not split the center after {retries} attempts")
    return out


def _subspace_key(F: GF, S: Subspace):
    return tuple(tuple(F.order_key(x) for x in v) for v in S)


def image_of(A: Matrix, S: Subspace) -> Subspace:
    """Canonical basis of ``A . S`` (vectors are columns)."""
    F = A.field
    imgs = []
    for v in S:
        col = Matrix(F, len(v), 1, tuple(v))
        imgs.append((A @ col).data)
    return row_space(F, imgs)


def homogeneous_components(rep: MatRep, N: Iterable[int], seed: int | random.Random = 0) -> list[Subspace]:
    """Homogeneous components of the restriction to ``N``, in canonical order."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    F = rep.field
    N = frozenset(N)
    E = endomorphism_algebra(rep, N)
    Z = center(F, E.basis)
    idems = primitive_idempotents(F, Z, rng)
    comps = []
    for e in idems:
        cols = [tuple(e.column(j)) for j in range(e.ncols)]
        comps.append(row_space(F, cols))
    comps.sort(key=lambda S: _subspace_key(F, S))
    _check_components(rep, N, comps)
    return comps


def _check_components(rep: MatRep, N: frozenset[int], comps: list[Subspace]) -> None:
    F, n = rep.field, rep.degree
    assert sum(len(S) for S in comps) == n, "component dimensions do not sum to n"
    assert rank(F, [v for S in comps for v in S]) == n, "components are not independent"
    assert len({len(S) for S in comps}) == 1, "components of unequal dimension"
    for i in generating_subset(rep, N):
        A = rep.elements[i]
        for S in comps:
            assert image_of(A, S) == S, "component is not N-invariant"


@dataclass(frozen=True)
class BlockSystem:
    """Blocks labelled so that generator ``j`` maps ``blocks[i]`` onto ``blocks[gen_perms[j][i]]``."""

    field: GF
    blocks: tuple[Subspace, ...]
    gen_perms: tuple[tuple[int, ...], ...]
    multiplicity: int

    @property
    def count(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class NotImprimitive:
    reason: str


def _match_labels(perms: Sequence[tuple[int, ...]], targets: Sequence[tuple[int, ...]], k: int):
    """Bijection phi with phi(perms[j][i]) == targets[j][phi(i)], or None."""
    for start in range(k):
        phi = [-1] * k
        phi[0] = start
        queue = [0]
        ok = True
        while queue and ok:
            i = queue.pop()
            for P, T in zip(perms, targets):
                a, b = P[i], T[phi[i]]
                if phi[a] < 0:
                    phi[a] = b
                    queue.append(a)
                elif phi[a] != b:
                    ok = False
                    break
        if ok and -1 not in phi and len(set(phi)) == k:
            return phi
    return None


def block_system(
    rep: MatRep, N: Iterable[int], psi: PermAction, seed: int | random.Random = 0
) -> BlockSystem | NotImprimitive:
    N = frozenset(N)
    comps = homogeneous_components(rep, N, seed)
    k = len(comps)
    if k == 1:
        return NotImprimitive("single homogeneous component")
    if k != psi.degree:
        return NotImprimitive(f"{k} homogeneous components but psi has degree {psi.degree}")
    index = {S: i for i, S in enumerate(comps)}
    perms = []
    for g in rep.generators:
        perm = []
        for S in comps:
            T = image_of(g, S)
            if T not in index:
                return NotImprimitive("generator does not permute the components")
            perm.append(index[T])
        perms.append(tuple(perm))
    phi = _match_labels(perms, psi.gen_images, k)
    if phi is None:
        return NotImprimitive("induced action on components is not conjugate to psi")
    blocks = [None] * k
    for i, S in enumerate(comps):
        blocks[phi[i]] = S
    F = rep.field
    E = endomorphism_algebra(rep, N)
    Z = center(F, E.basis)
    e = math.isqrt(E.dim // len(Z))
    return BlockSystem(F, tuple(blocks), tuple(psi.gen_images), e)  # type: ignore[arg-type]


def verify_block_system(rep: MatRep, bs: BlockSystem, psi: PermAction) -> bool:
    F, n = rep.field, rep.degree
    if bs.field != F or bs.count != psi.degree:
        return False
    if sum(len(S) for S in bs.blocks) != n or rank(F, [v for S in bs.blocks for v in S]) != n:
        return False
    if len({len(S) for S in bs.blocks}) != 1:
        return False
    for g, perm in zip(rep.generators, psi.gen_images):
        for i, S in enumerate(bs.blocks):
            if image_of(g, S) != bs.blocks[perm[i]]:
                return False
    return psi.transitive


def extend_scalars(rep: MatRep, target: GF) -> MatRep:
    """The same group with entries embedded in ``target``; tables are reused."""
    if target == rep.field:
        return rep
    elements = [m.embed(target) for m in rep.elements]
    gens = [g.embed(target) for g in rep.generators]
    return MatRep(gens, elements, rep.words, rep.right, rep.left, rep.inverse)
