"""Univariate polynomials over a finite field.

Polynomials are plain lists of field-element integers, constant term first,
with no trailing zeros (the zero polynomial is ``[]``).  Every function takes
the coefficient field ``F`` explicitly.
"""

from __future__ import annotations

import random
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .finite_field import GF

Poly = list[int]


def trim(f: Poly) -> Poly:
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Poly) -> int:
    return len(f) - 1


def add(F: GF, f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(out)


def sub(F: GF, f: Poly, g: Poly) -> Poly:
    return add(F, f, [F.neg(c) for c in g])


def scale(F: GF, f: Poly, c: int) -> Poly:
    if c == 0:
        return []
    return [F.mul(a, c) for a in f]


def mul(F: GF, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def divmod_(F: GF, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    lead_inv = F.inv(g[-1])
    if len(r) <= dg:
        return [], trim(r)
    quo = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = F.mul(c, lead_inv)
        quo[i - dg] = c
        for j in range(dg + 1):
            r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, g[j]))
    return trim(quo), trim(r[:dg])


def mod(F: GF, f: Poly, g: Poly) -> Poly:
    return divmod_(F, f, g)[1]


def monic(F: GF, f: Poly) -> Poly:
    if not f:
        return []
    return scale(F, f, F.inv(f[-1]))


def gcd(F: GF, f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def powmod(F: GF, f: Poly, e: int, m: Poly) -> Poly:
    result: Poly = [1]
    base = mod(F, f, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        base = mod(F, mul(F, base, base), m)
        e >>= 1
    return mod(F, result, m)


def derivative(F: GF, f: Poly) -> Poly:
    return trim([F.mul(F.from_int(i), c) for i, c in enumerate(f)][1:])


def evaluate(F: GF, f: Poly, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def is_irreducible(F: GF, f: Poly) -> bool:
    """Ben-Or test: ``gcd(f, x^(q^i) - x) = 1`` for ``1 <= i <= deg f / 2``."""
    d = degree(f)
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = powmod(F, h, F.q, f)
        if degree(gcd(F, f, sub(F, h, x))) > 0:
            return False
    return True


def _pth_root(F: GF, f: Poly) -> Poly:
    # f has only exponents divisible by p; invert Frobenius on coefficients
    p = F.p
    return [F.pow(f[i], F.q // p) for i in range(0, len(f), p)]


def squarefree_decomposition(F: GF, f: Poly) -> list[tuple[Poly, int]]:
    """Return ``[(g, e), ...]`` with ``f`` monic equal to the product of ``g**e``."""
    f = monic(F, f)
    if degree(f) < 1:
        return []
    out: list[tuple[Poly, int]] = []
    fp = derivative(F, f)
    if not fp:
        return [(g, e * F.p) for g, e in squarefree_decomposition(F, _pth_root(F, f))]
    c = gcd(F, f, fp)
    w = divmod_(F, f, c)[0]
    i = 1
    while degree(w) > 0:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if degree(z) > 0:
            out.append((monic(F, z), i))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if degree(c) > 0:
        out.extend((g, e * F.p) for g, e in squarefree_decomposition(F, _pth_root(F, c)))
    return out


def distinct_degree(F: GF, f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree ``f`` into products of equal-degree irreducibles."""
    out = []
    x = [0, 1]
    h = x
    i = 1
    f = monic(F, f)
    while degree(f) >= 2 * i:
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, x))
        if degree(g) > 0:
            out.append((g, i))
            f = divmod_(F, f, g)[0]
            h = mod(F, h, f)
        i += 1
    if degree(f) > 0:
        out.append((f, degree(f)))
    return out


def _split_element(F: GF, g: Poly, d: int, rng: random.Random) -> Poly:
    n = degree(g)
    a = trim([rng.randrange(F.q) for _ in range(n)])
    if F.p == 2:
        # absolute trace map into GF(2)
        t = a
        acc = a
        for _ in range(F.k * d - 1):
            t = mod(F, mul(F, t, t), g)
            acc = add(F, acc, t)
        return acc
    b = powmod(F, a, (F.q ** d - 1) // 2, g)
    return sub(F, b, [1])


def equal_degree(F: GF, g: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of ``g`` (monic, all factors of degree ``d``)."""
    if degree(g) == d:
        return [g]
    while True:
        b = _split_element(F, g, d, rng)
        h = gcd(F, g, b)
        if 0 < degree(h) < degree(g):
            return equal_degree(F, h, d, rng) + equal_degree(F, divmod_(F, g, h)[0], d, rng)


def factor(F: GF, f: Poly, rng: random.Random | None = None) -> list[tuple[Poly, int]]:
    """Complete factorization into monic irreducibles with multiplicities.

    Output is sorted by (degree, coefficients) so it does not depend on the
    random choices made during equal-degree splitting.
    """
    rng = rng if rng is not None else random.Random(0)
    out = []
    for g, e in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            out.extend((irr, e) for irr in equal_degree(F, h, d, rng))
    out.sort(key=lambda t: (degree(t[0]), [F.order_key(c) for c in t[0]], t[1]))
    return out


def inverse_mod(F: GF, a: Poly, m: Poly) -> Poly:
    """``a^-1 mod m`` for ``gcd(a, m) == 1``."""
    r0, r1 = list(m), mod(F, a, m)
    s0, s1 = [], [1]
    while r1:
        qt, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, qt, s1))
    if degree(r0) != 0:
        raise ValueError("polynomials are not coprime")
    return mod(F, scale(F, s0, F.inv(r0[0])), m)
