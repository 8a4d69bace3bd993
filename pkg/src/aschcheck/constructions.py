"""Generator lists for the group families used by the corpus and the tests.

Every function returns plain generator matrices (and, where relevant, the
permutation images of a block action as 0-based tuples).  Nothing here decides
anything; these are inputs.
"""

from __future__ import annotations

import random
from collections.abc import Sequence

from .finite_field import GF, embedding, make_field
from .groups import primitive_root_of_unity
from .matrices import Matrix, kronecker, random_invertible


def _m(F: GF, rows) -> Matrix:
    return Matrix.from_rows(F, rows)


def sl2(F: GF) -> list[Matrix]:
    """Generators of SL(2, q): a split torus element, a transvection and the Weyl element."""
    gens = [_m(F, [[1, 1], [0, 1]]), _m(F, [[0, 1], [F.neg(1), 0]])]
    if F.q > 3:
        w = F.primitive
        gens.insert(0, Matrix.diag(F, [w, F.inv(w)]))
    return gens


def gl2(F: GF) -> list[Matrix]:
    return sl2(F) + [Matrix.diag(F, [F.primitive, 1])] if F.q > 2 else sl2(F)


def gl3_2() -> list[Matrix]:
    F = make_field(2)
    return [_m(F, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]), _m(F, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])]


def dihedral(F: GF, m: int) -> tuple[list[Matrix], list[tuple[int, ...]]]:
    """D_2m as <swap, diag(z, z^-1)> with z of order m, and the sign block action."""
    z = primitive_root_of_unity(F, m)
    gens = [_m(F, [[0, 1], [1, 0]]), Matrix.diag(F, [z, F.inv(z)])]
    return gens, [(1, 0), (0, 1)]


def dihedral_instances() -> list[tuple[GF, int]]:
    """(field, m) pairs with m >= 3 so that z and z^-1 differ."""
    out = []
    for q in (5, 7, 9, 11, 13, 16, 17, 19, 25, 27, 29, 31, 37):
        p = next(r for r in range(2, q + 1) if q % r == 0)
        k = 0
        t = q
        while t > 1:
            t //= p
            k += 1
        F = make_field(p, k)
        for m in range(3, q):
            if (q - 1) % m == 0:
                out.append((F, m))
    return out


def monomial_cyclic(F: GF, m: int, a: int) -> tuple[list[Matrix], list[tuple[int, ...]]]:
    """C_m x| C_3 in degree 3: diag(z, z^a, z^(a^2)) and the cyclic permutation matrix.

    Needs ``a^3 = 1 mod m``; the block action is the 3-cycle.
    """
    z = primitive_root_of_unity(F, m)
    d = Matrix.diag(F, [z, F.pow(z, a), F.pow(z, a * a)])
    c = _m(F, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    return [d, c], [(0, 1, 2), (1, 2, 0)]


def monomial_s3(F: GF, m: int) -> tuple[list[Matrix], list[tuple[int, ...]]]:
    """Monomial group of degree 3 with block image S_3 (solvable, not cyclic)."""
    z = primitive_root_of_unity(F, m)
    d = Matrix.diag(F, [z, F.inv(z), 1])
    c = _m(F, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    t = _m(F, [[0, 1, 0], [1, 0, 0], [0, 0, F.neg(1)]])
    return [d, c, t], [(0, 1, 2), (1, 2, 0), (1, 0, 2)]


def singer_normalizer(F: GF, m: int | None = None) -> tuple[list[Matrix], list[tuple[int, ...]]]:
    """<s, f> in GL(2, q): s multiplies GF(q^2) by an element of order m, f is x -> x^q.

    Irreducible over GF(q) but the block system only appears over GF(q^2).
    """
    E = make_field(F.p, 2 * F.k)
    emb = embedding(F, E)
    back = {emb(a): a for a in range(F.q)}
    b = E.primitive
    t = back[E.add(b, E.frob(b, F.k))]
    nrm = back[E.mul(b, E.frob(b, F.k))]
    # basis (1, b): b^2 = t b - nrm
    s = _m(F, [[0, F.neg(nrm)], [1, t]])
    if m is not None:
        s = s ** ((E.q - 1) // m)
    f = _m(F, [[1, t], [0, F.neg(1)]])
    return [s, f], [(0, 1), (1, 0)]


def a5_points() -> list[tuple[int, ...]]:
    """A5 on 5 points: (1 2)(3 4) and (1 3 5), 0-based."""
    return [(1, 0, 3, 2, 4), (2, 1, 4, 3, 0)]


def _perm_apply(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    # apply b first, then a
    return tuple(a[b[i]] for i in range(len(b)))


def _sylow5_action(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Action of A5 on its six Sylow 5-subgroups by conjugation."""
    ident = tuple(range(5))
    H = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _perm_apply(x, g)
                if y not in H:
                    H.add(y)
                    nxt.append(y)
        frontier = nxt
    fives = [x for x in H if x != ident and _order(x) == 5]
    subs = []
    for x in sorted(fives):
        P = frozenset(_powers(x))
        if P not in subs:
            subs.append(P)
    out = []
    for g in gens:
        gi = tuple(sorted(range(5), key=lambda i: g[i]))
        img = []
        for P in subs:
            Q = frozenset(_perm_apply(_perm_apply(g, x), gi) for x in P)
            img.append(subs.index(Q))
        out.append(tuple(img))
    return out


def _order(x) -> int:
    y, k = x, 1
    ident = tuple(range(len(x)))
    while y != ident:
        y = _perm_apply(y, x)
        k += 1
    return k


def _powers(x):
    ident = tuple(range(len(x)))
    out = [ident]
    y = x
    while y != ident:
        out.append(y)
        y = _perm_apply(y, x)
    return out


def a5_degree5(F: GF) -> tuple[list[Matrix], list[tuple[int, ...]]]:
    """Irreducible degree-5 representation of A5 (6-point permutation module minus the trivial part).

    Basis e_i - e_6 of the sum-zero submodule; the second return value is the
    natural action of the generators on 5 points.
    """
    pts = a5_points()
    six = _sylow5_action(pts)
    gens = []
    for perm in six:
        # column i holds the image of e_i - e_5 (0-based index 5 is the last point)
        cols = []
        for i in range(5):
            v = [0] * 6
            v[perm[i]] = F.add(v[perm[i]], 1)
            v[perm[5]] = F.sub(v[perm[5]], 1)
            # rewrite in basis e_j - e_5: coordinates are the first five entries
            cols.append(v[:5])
        gens.append(Matrix.from_rows(F, [[cols[j][i] for j in range(5)] for i in range(5)]))
    return gens, pts


def scalar_twist(gens: Sequence[Matrix], scalars: Sequence[int]) -> list[Matrix]:
    return [A.scale(c) for A, c in zip(gens, scalars)]


def conjugate(gens: Sequence[Matrix], z: Matrix) -> list[Matrix]:
    zi = z.inverse()
    return [z @ A @ zi for A in gens]


def random_conjugate(gens: Sequence[Matrix], rng: random.Random) -> tuple[list[Matrix], Matrix]:
    z = random_invertible(gens[0].field, gens[0].nrows, rng)
    return conjugate(gens, z), z


def kronecker_gens(G: Sequence[Matrix], H: Sequence[Matrix]) -> list[Matrix]:
    """Generators of the image of G x H acting on the tensor product."""
    F = G[0].field
    I_g = Matrix.identity(F, G[0].nrows)
    I_h = Matrix.identity(F, H[0].nrows)
    return [kronecker(A, I_h) for A in G] + [kronecker(I_g, B) for B in H]


def embed_gens(gens: Sequence[Matrix], target: GF) -> list[Matrix]:
    return [A.embed(target) for A in gens]


def subfield_positive(
    K: GF, d: int, base: Sequence[Matrix], rng: random.Random
) -> list[Matrix]:
    """``z0^-1 (lambda_g X_g) z0`` with X_g over the degree-``d`` subfield and random units lambda_g."""
    X = [A if A.field == K else A.embed(K) for A in base]
    if not all(x.in_subfield(d) for x in X):
        raise ValueError("base generators are not over the subfield")
    units = list(range(1, K.q))
    lam = [rng.choice(units) for _ in X]
    z0 = random_invertible(K, X[0].nrows, rng)
    z0i = z0.inverse()
    return [z0i @ x.scale(c) @ z0 for x, c in zip(X, lam)]


FORM_CORPUS_MAX_ORDER = 2000


def form_corpus(seed: int = 0) -> list[tuple[str, list[Matrix]]]:
    """Labelled generator lists for the form-criterion cross-check.

    Degrees 2 to 4 over q in {2, 3, 4, 5, 7, 9, 25}: SL and GL in degree 2,
    monomial groups, scalar twists, tensor products, field extensions and random
    conjugates.  Callers filter by order and absolute irreducibility.
    """
    rng = random.Random(seed)
    F = {q: make_field(*pk) for q, pk in {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 9: (3, 2), 25: (5, 2)}.items()}
    out: list[tuple[str, list[Matrix]]] = []
    for q in (2, 3, 4, 5, 7, 9):
        out.append((f"sl2-{q}", sl2(F[q])))
    for q in (3, 4, 5):
        out.append((f"gl2-{q}", gl2(F[q])))
    out.append(("gl3-2", gl3_2()))
    out.append(("gl2-2-in-4", embed_gens(gl2(F[2]), F[4])))
    out.append(("sl2-3-in-9", embed_gens(sl2(F[3]), F[9])))
    out.append(("sl2-5-in-25", embed_gens(sl2(F[5]), F[25])))
    out.append(("sl2-2-in-4-tw", scalar_twist(embed_gens(sl2(F[2]), F[4]), [2, 1])))
    for q, m in ((5, 4), (7, 3), (7, 6), (9, 4), (9, 8), (25, 3), (25, 6), (25, 8), (4, 3)):
        gens, _ = dihedral(F[q], m)
        out.append((f"dihedral-{2 * m}-{q}", gens))
    for q, m in ((4, 3), (7, 3), (5, 4), (9, 4), (25, 4)):
        gens, _ = monomial_s3(F[q], m)
        out.append((f"monomial-s3-{q}-{m}", gens))
    D8 = dihedral(F[5], 4)[0]
    out.append(("d8-tensor-d8-5", kronecker_gens(D8, D8)))
    out.append(("sl2-3-tensor-sl2-3", kronecker_gens(sl2(F[3]), sl2(F[3]))))
    out.append(("d8-tensor-d6-25", kronecker_gens(dihedral(F[25], 4)[0], dihedral(F[25], 3)[0])))
    out.append(("sl2-2-tensor-d6-4", kronecker_gens(embed_gens(sl2(F[2]), F[4]), dihedral(F[4], 3)[0])))
    for q in (3, 5, 7, 9, 25):
        base = sl2(F[q]) if q != 25 else embed_gens(sl2(F[5]), F[25])
        units = list(range(1, F[q].q))
        out.append((f"sl2-{q}-twisted", scalar_twist(base, [rng.choice(units) for _ in base])))
    base = list(out)
    for label, gens in base:
        conj, _ = random_conjugate(gens, rng)
        out.append((label + "-conj", conj))
    return out


SUBFIELD_PAIRS = ((2, 1, 2), (3, 1, 2), (5, 1, 2), (2, 1, 3), (2, 2, 4))


def subfield_bases() -> list[tuple[str, int, int, list[Matrix]]]:
    """(label, d, k, generators over GF(p^d)) for the C5 construct-then-verify family."""
    out = []
    for p, d, k in SUBFIELD_PAIRS:
        F = make_field(p, d)
        cands = [("sl2", sl2(F)), ("gl2", gl2(F))]
        if F.q == 2:
            cands.append(("gl3", gl3_2()))
        if F.q >= 5:
            cands.append(("dihedral", dihedral(F, 4 if F.q == 5 else F.q - 1)[0]))
        for name, gens in cands:
            out.append((f"{name}-{F.q}", d, k, gens))
    return out


def subfield_controls(seed: int = 0) -> list[tuple[str, int, list[Matrix]]]:
    """Groups with no twisted Galois symmetry of the character: (label, d, generators)."""
    rng = random.Random(seed)
    F4, F8, F9, F16 = make_field(2, 2), make_field(2, 3), make_field(3, 2), make_field(2, 4)
    base = [
        ("sl2-4", 1, sl2(F4)),
        ("gl2-4", 1, gl2(F4)),
        ("sl2-8", 1, sl2(F8)),
        ("sl2-9", 1, sl2(F9)),
        ("gl2-9-tw", 1, scalar_twist(sl2(F9), [F9.primitive, 1, 1])),
        ("sl2-4-in-16", 1, embed_gens(sl2(F4), F16)),
    ]
    out = list(base)
    for label, d, gens in base:
        for i in range(3):
            conj, _ = random_conjugate(gens, rng)
            out.append((f"{label}-conj{i}", d, conj))
    return out
