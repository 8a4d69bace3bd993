"""Dense exact linear algebra over :class:`~aschcheck.finite_field.GF`.

Matrices are immutable and hashable; entries are field-element integers in
row-major order.  Row reduction always pivots on the first nonzero entry in
column order, so identical inputs give bit-identical echelon forms and kernel
bases.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import (
    EmptyGeneratorList,
    FieldMismatch,
    NormConditionViolated,
    RetriesExhausted,
    ShapeMismatch,
    SingularMatrix,
)
from .finite_field import GF, GaloisAut, embedding

HILBERT90_RETRIES = 64


@dataclass(frozen=True)
class Matrix:
    field: GF
    nrows: int
    ncols: int
    data: tuple[int, ...]

    # constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, field: GF, rows: Sequence[Sequence[int]]) -> Matrix:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeMismatch("matrices must have positive dimensions")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        return cls(field, len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, field: GF, n: int) -> Matrix:
        return cls.scalar(field, n, 1)

    @classmethod
    def scalar(cls, field: GF, n: int, c: int) -> Matrix:
        data = [0] * (n * n)
        for i in range(n):
            data[i * n + i] = c
        return cls(field, n, n, tuple(data))

    @classmethod
    def zeros(cls, field: GF, nrows: int, ncols: int) -> Matrix:
        return cls(field, nrows, ncols, (0,) * (nrows * ncols))

    @classmethod
    def diag(cls, field: GF, entries: Sequence[int]) -> Matrix:
        n = len(entries)
        data = [0] * (n * n)
        for i, c in enumerate(entries):
            data[i * n + i] = c
        return cls(field, n, n, tuple(data))

    # access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def rows(self) -> list[list[int]]:
        c = self.ncols
        return [list(self.data[i * c:(i + 1) * c]) for i in range(self.nrows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i * self.ncols + j]

    def column(self, j: int) -> list[int]:
        return [self.data[i * self.ncols + j] for i in range(self.nrows)]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return not any(self.data)

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.field, self.nrows) if self.is_square() else False

    def is_scalar(self) -> bool:
        if not self.is_square():
            return False
        return self == Matrix.scalar(self.field, self.nrows, self.data[0])

    def _check(self, other: Matrix) -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        add = self.field.add
        return Matrix(self.field, self.nrows, self.ncols, tuple(map(add, self.data, other.data)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        sub = self.field.sub
        return Matrix(self.field, self.nrows, self.ncols, tuple(map(sub, self.data, other.data)))

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.nrows, self.ncols, tuple(map(self.field.neg, self.data)))

    def scale(self, c: int) -> Matrix:
        mul = self.field.mul
        return Matrix(self.field, self.nrows, self.ncols, tuple(mul(c, x) for x in self.data))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        n, m, l = self.nrows, self.ncols, other.ncols
        if m != other.nrows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        a, b = self.data, other.data
        F = self.field
        out = []
        if F.k == 1:
            p = F.p
            cols = [b[j::l] for j in range(l)]
            for i in range(n):
                row = a[i * m:(i + 1) * m]
                for col in cols:
                    out.append(sum(x * y for x, y in zip(row, col)) % p)
        else:
            add, mul = F.add, F.mul
            for i in range(n):
                row = a[i * m:(i + 1) * m]
                for j in range(l):
                    acc = 0
                    for t in range(m):
                        x = row[t]
                        if x:
                            y = b[t * l + j]
                            if y:
                                acc = add(acc, mul(x, y))
                    out.append(acc)
        return Matrix(F, n, l, tuple(out))

    @property
    def T(self) -> Matrix:
        r, c = self.nrows, self.ncols
        return Matrix(self.field, c, r, tuple(self.data[i * c + j] for j in range(c) for i in range(r)))

    def trace(self) -> int:
        if not self.is_square():
            raise ShapeMismatch("trace of a non-square matrix")
        add = self.field.add
        acc = 0
        for i in range(self.nrows):
            acc = add(acc, self.data[i * self.ncols + i])
        return acc

    def det(self) -> int:
        if not self.is_square():
            raise ShapeMismatch("determinant of a non-square matrix")
        F = self.field
        rows = self.rows()
        n = self.nrows
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if rows[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                d = F.neg(d)
            d = F.mul(d, rows[c][c])
            inv = F.inv(rows[c][c])
            for r in range(c + 1, n):
                f = rows[r][c]
                if f:
                    f = F.mul(f, inv)
                    rows[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[r], rows[c])]
        return d

    def is_invertible(self) -> bool:
        return self.is_square() and self.det() != 0

    def inverse(self) -> Matrix:
        if not self.is_square():
            raise ShapeMismatch("inverse of a non-square matrix")
        F = self.field
        n = self.nrows
        aug = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.rows())]
        R, pivots = rref(F, aug)
        if pivots[:n] != list(range(n)):
            raise SingularMatrix("matrix is singular")
        return Matrix.from_rows(F, [r[n:] for r in R[:n]])

    def __pow__(self, e: int) -> Matrix:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = Matrix.identity(self.field, self.nrows)
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def frob(self, aut: GaloisAut | int) -> Matrix:
        return entrywise_frobenius(self, aut)

    def embed(self, target: GF) -> Matrix:
        emb = embedding(self.field, target)
        return Matrix(target, self.nrows, self.ncols, tuple(emb(x) for x in self.data))

    def in_subfield(self, d: int) -> bool:
        F = self.field
        return all(F.in_subfield(x, d) for x in self.data)

    def order(self) -> int:
        """Multiplicative order (the matrix must be invertible)."""
        ident = Matrix.identity(self.field, self.nrows)
        x = self
        m = 1
        while x != ident:
            x = x @ self
            m += 1
        return m

    def format(self) -> str:
        F = self.field
        return "[" + ", ".join("[" + ", ".join(F.format(x) for x in r) + "]" for r in self.rows()) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self.format()} over {self.field!r})"


def kronecker(A: Matrix, B: Matrix) -> Matrix:
    A._check(B)
    F = A.field
    mul = F.mul
    rows = []
    for i in range(A.nrows):
        for k in range(B.nrows):
            row = []
            for j in range(A.ncols):
                a = A[i, j]
                row.extend(mul(a, B[k, l]) for l in range(B.ncols))
            rows.append(row)
    return Matrix.from_rows(F, rows)


def char_poly(A: Matrix) -> list[int]:
    """Coefficients of ``det(x I - A)``, constant term first (length n + 1)."""
    if not A.is_square():
        raise ShapeMismatch("characteristic polynomial of a non-square matrix")
    from . import poly

    F = A.field
    n = A.nrows
    H = A.rows()
    # similarity reduction to upper Hessenberg form
    for c in range(n - 2):
        piv = next((r for r in range(c + 1, n) if H[r][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            H[c + 1], H[piv] = H[piv], H[c + 1]
            for row in H:
                row[c + 1], row[piv] = row[piv], row[c + 1]
        inv = F.inv(H[c + 1][c])
        for r in range(c + 2, n):
            f = F.mul(H[r][c], inv)
            if not f:
                continue
            H[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(H[r], H[c + 1])]
            for row in H:
                row[c + 1] = F.add(row[c + 1], F.mul(f, row[r]))
    # p_m = (x - h_mm) p_{m-1} - sum_i h_im (prod_j h_{j,j-1}) p_{i-1}
    ps: list[list[int]] = [[1]]
    for m in range(n):
        pm = poly.mul(F, [F.neg(H[m][m]), 1], ps[m])
        prod = 1
        for i in range(m - 1, -1, -1):
            prod = F.mul(prod, H[i + 1][i])
            if not prod:
                break
            pm = poly.sub(F, pm, poly.scale(F, ps[i], F.mul(H[i][m], prod)))
        ps.append(pm)
    out = ps[n]
    return out + [0] * (n + 1 - len(out))


def entrywise_frobenius(A: Matrix, aut: GaloisAut | int) -> Matrix:
    if isinstance(aut, GaloisAut):
        if aut.field != A.field:
            raise FieldMismatch("automorphism of a different field")
        e = aut.exponent
    else:
        e = aut
    F = A.field
    if e % F.k == 0:
        return A
    return Matrix(F, A.nrows, A.ncols, tuple(F.frob(x, e) for x in A.data))


# row reduction ---------------------------------------------------------------


def rref(F: GF, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form (in place on a copy) and the pivot columns."""
    R = [list(r) for r in rows]
    if not R:
        return R, []
    ncols = len(R[0])
    pivots: list[int] = []
    prow = 0
    prime = F.k == 1
    p = F.p
    for c in range(ncols):
        if prow == len(R):
            break
        piv = next((r for r in range(prow, len(R)) if R[r][c]), None)
        if piv is None:
            continue
        R[prow], R[piv] = R[piv], R[prow]
        inv = F.inv(R[prow][c])
        if prime:
            R[prow] = [(x * inv) % p for x in R[prow]]
        else:
            R[prow] = [F.mul(x, inv) for x in R[prow]]
        prow_vals = R[prow]
        for r in range(len(R)):
            if r != prow:
                f = R[r][c]
                if f:
                    if prime:
                        R[r] = [(x - f * y) % p for x, y in zip(R[r], prow_vals)]
                    else:
                        R[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[r], prow_vals)]
        pivots.append(c)
        prow += 1
    return R, pivots


def row_space(F: GF, vectors: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Canonical basis (nonzero RREF rows) of the span of ``vectors``."""
    if not vectors:
        return ()
    R, pivots = rref(F, [list(v) for v in vectors])
    return tuple(tuple(r) for r in R[: len(pivots)])


def rank(F: GF, vectors: Sequence[Sequence[int]]) -> int:
    return len(row_space(F, vectors))


def nullspace(F: GF, rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Canonical (RREF) basis of ``{v : rows . v = 0}``."""
    if not rows:
        basis = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
        return [tuple(v) for v in basis]
    R, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in enumerate(pivots):
            if R[r][f]:
                v[pc] = F.neg(R[r][f])
        basis.append(v)
    return list(row_space(F, basis))


def solve_linear(
    equations: Sequence[Sequence[tuple[Matrix, Matrix]]], nrows: int, ncols: int
) -> list[Matrix]:
    """Basis of the matrices X (nrows x ncols) with ``sum(L @ X @ R) == 0`` for every equation.

    Each equation is a list of ``(L, R)`` terms.  X is vectorized row-major.
    """
    if not equations or not any(equations):
        raise EmptyGeneratorList("no equations given")
    F = next(t for eq in equations for t in eq)[0].field
    nvars = nrows * ncols
    system: list[list[int]] = []
    for eq in equations:
        L0, R0 = eq[0]
        out_r, out_c = L0.nrows, R0.ncols
        block = [[0] * nvars for _ in range(out_r * out_c)]
        for L, R in eq:
            if L.field != F or R.field != F:
                raise FieldMismatch("equations over different fields")
            if L.ncols != nrows or R.nrows != ncols or L.nrows != out_r or R.ncols != out_c:
                raise ShapeMismatch("inconsistent equation shapes")
            for i in range(out_r):
                for r in range(nrows):
                    lv = L[i, r]
                    if not lv:
                        continue
                    for c in range(ncols):
                        for j in range(out_c):
                            rv = R[c, j]
                            if rv:
                                row = block[i * out_c + j]
                                idx = r * ncols + c
                                row[idx] = F.add(row[idx], F.mul(lv, rv))
        system.extend(row for row in block if any(row))
    basis = nullspace(F, system, nvars)
    return [Matrix(F, nrows, ncols, v) for v in basis]


def intertwiner_space(A_list: Sequence[Matrix], B_list: Sequence[Matrix]) -> list[Matrix]:
    """Basis of ``{X : X @ A_i == B_i @ X for all i}``."""
    if not A_list:
        raise EmptyGeneratorList("intertwiner space of an empty generator list")
    if len(A_list) != len(B_list):
        raise ShapeMismatch("generator lists of different lengths")
    n = A_list[0].nrows
    for A, B in zip(A_list, B_list):
        if not (A.is_square() and B.is_square() and A.nrows == n and B.nrows == n):
            raise ShapeMismatch("intertwiners need square matrices of one size")
    F = A_list[0].field
    I = Matrix.identity(F, n)
    eqs = [[(I, A), (-B, I)] for A, B in zip(A_list, B_list)]
    basis = solve_linear(eqs, n, n)
    for X in basis:
        for A, B in zip(A_list, B_list):
            assert X @ A == B @ X, "intertwiner re-verification failed"
    return basis


# Hilbert 90 for matrices -------------------------------------------------------


def _as_rng(seed: int | random.Random) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_matrix(F: GF, nrows: int, ncols: int, rng: random.Random) -> Matrix:
    return Matrix(F, nrows, ncols, tuple(rng.randrange(F.q) for _ in range(nrows * ncols)))


def random_invertible(F: GF, n: int, rng: random.Random) -> Matrix:
    while True:
        m = random_matrix(F, n, n, rng)
        if m.det():
            return m


def hilbert90_matrix(
    y: Matrix, aut: GaloisAut, seed: int | random.Random = 0, retries: int = HILBERT90_RETRIES
) -> Matrix:
    """Return invertible ``z`` with ``y == aut(z)^-1 @ z``.

    Requires the norm condition ``aut^(l-1)(y) ... aut(y) @ y == I`` where
    ``l`` is the order of ``aut``.  ``z`` is the twisted average
    ``sum_i aut^i(c) @ y_i`` of a random ``c``, with ``y_0 = I`` and
    ``y_{i+1} = aut(y_i) @ y``; singular averages are retried.
    """
    if aut.field != y.field:
        raise FieldMismatch("automorphism of a different field")
    if not y.is_invertible():
        raise SingularMatrix("y must be invertible")
    n = y.nrows
    F = y.field
    ell = aut.order
    partial = [Matrix.identity(F, n)]
    for _ in range(ell):
        partial.append(partial[-1].frob(aut) @ y)
    if not partial[ell].is_identity():
        raise NormConditionViolated("twisted norm of y is not the identity")
    rng = _as_rng(seed)
    for _ in range(retries):
        c = random_matrix(F, n, n, rng)
        z = Matrix.zeros(F, n, n)
        ci = c
        for i in range(ell):
            z = z + ci @ partial[i]
            ci = ci.frob(aut)
        if z.is_invertible():
            assert z.frob(aut).inverse() @ z == y
            return z
    raise RetriesExhausted(f"no invertible z after {retries} attempts")
