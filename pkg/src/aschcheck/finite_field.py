"""Exact arithmetic in GF(p^k).

Elements are encoded as integers ``0 <= a < q``: the base-``p`` digits of ``a``
are the coefficients of the polynomial representative, constant term in the
least significant digit.  With this encoding ``0`` and ``1`` are the zero and
one of every field and the prime subfield is ``range(p)``.

The *element order* used wherever a deterministic "least" element is needed
compares coefficient vectors lexicographically with the constant term most
significant (see :meth:`GF.order_key`).  It coincides with integer order only
for prime fields.

:class:`GF` works on raw integers for speed; :class:`FieldElem` and the module
level functions wrap them for callers that prefer typed values.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

from . import poly
from .errors import (
    CompositeCharacteristic,
    FieldMismatch,
    NoEmbedding,
    NonDivisorDegree,
    NormNotOne,
    ReducibleModulus,
)

_ADD_TABLE_LIMIT = 729


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class GF:
    """The field GF(p^k) = GF(p)[x] / (modulus).

    Use :func:`make_field` rather than calling the constructor; it validates
    the modulus and caches instances.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        if k == 1:
            self._init_prime()
        else:
            self._init_extension()
        self.elements_in_order: tuple[int, ...] = tuple(sorted(range(self.q), key=self.order_key))
        self.units_in_order: tuple[int, ...] = self.elements_in_order[1:]

    # construction -----------------------------------------------------
    def _init_prime(self) -> None:
        p = self.p
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.neg = lambda a: (-a) % p
        self.mul = lambda a, b: (a * b) % p
        g = next(c for c in range(1, p) if self._has_full_order(c)) if p > 2 else 1
        self.primitive = g
        self._build_logs()

    def _has_full_order(self, c: int) -> bool:
        n = self.q - 1
        return all(self._slow_pow(c, n // r) != 1 for r in prime_factors(n))

    def _slow_pow(self, a: int, e: int) -> int:
        if self.k == 1:
            return pow(a, e, self.p)
        result = [1]
        base = self.coeffs(a)
        while e:
            if e & 1:
                result = self._polymulmod(result, base)
            base = self._polymulmod(base, base)
            e >>= 1
        return self.from_coeffs(result)

    def _polymulmod(self, f: list[int], g: list[int]) -> list[int]:
        p, k, m = self.p, self.k, self.modulus
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] = (out[i + j] + a * b) % p
        for i in range(len(out) - 1, k - 1, -1):
            c = out[i]
            if c:
                for j in range(k):
                    out[i - k + j] = (out[i - k + j] - c * m[j]) % p
        return out[:k]

    def _build_logs(self) -> None:
        n = self.q - 1
        exp = [0] * (2 * n)
        log = [0] * self.q
        x = 1
        if self.k == 1:
            for i in range(n):
                exp[i] = x
                log[x] = i
                x = (x * self.primitive) % self.p
        else:
            g = self.coeffs(self.primitive)
            xc = [1]
            for i in range(n):
                x = self.from_coeffs(xc)
                exp[i] = x
                log[x] = i
                xc = self._polymulmod(xc, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log

    def _init_extension(self) -> None:
        p, q = self.p, self.q
        self.primitive = next(
            c for c in sorted(range(2, q), key=self.order_key) if self._has_full_order(c)
        )
        self._build_logs()
        exp, log = self._exp, self._log
        n = q - 1

        def mul(a: int, b: int) -> int:
            if a == 0 or b == 0:
                return 0
            return exp[log[a] + log[b]]

        self.mul = mul
        if p == 2:
            self.add = self.sub = lambda a, b: a ^ b
            self.neg = lambda a: a
            return
        digits_add = self._digits_add
        neg_tab = [self.from_coeffs([(-c) % p for c in self.coeffs(a)]) for a in range(q)]
        self.neg = neg_tab.__getitem__
        if q <= _ADD_TABLE_LIMIT:
            tab = [[digits_add(a, b) for b in range(q)] for a in range(q)]
            self.add = lambda a, b: tab[a][b]
            self.sub = lambda a, b: tab[a][neg_tab[b]]
            return
        # Zech logarithms: 1 + g^i = g^zech[i]
        zech = [-1] * n
        for i in range(n):
            s = digits_add(1, exp[i])
            zech[i] = log[s] if s else -1

        def add(a: int, b: int) -> int:
            if a == 0:
                return b
            if b == 0:
                return a
            la = log[a]
            z = zech[(log[b] - la) % n]
            return 0 if z < 0 else exp[la + z]

        self.add = add
        self.sub = lambda a, b: add(a, neg_tab[b])

    def _digits_add(self, a: int, b: int) -> int:
        return self.from_coeffs([(x + y) % self.p for x, y in zip(self.coeffs(a), self.coeffs(b))])

    # encoding ---------------------------------------------------------
    def coeffs(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.k:
            raise ValueError(f"too many coefficients for GF({self.q})")
        a = 0
        for c in reversed(cs):
            a = a * self.p + (c % self.p)
        return a

    def from_int(self, n: int) -> int:
        return n % self.p

    def order_key(self, a: int) -> tuple[int, ...]:
        return tuple(self.coeffs(a))

    # arithmetic -------------------------------------------------------
    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.q - 1)]

    def mult_order(self, a: int) -> int:
        n = self.q - 1
        return n // math.gcd(n, self._log[a])

    def frob(self, a: int, i: int = 1) -> int:
        """``a ** (p ** i)``."""
        i %= self.k
        if i == 0 or a == 0:
            return a
        return self.pow(a, self.p**i)

    def norm(self, a: int, d: int) -> int:
        """Norm from this field down to its degree-``d`` subfield."""
        if d <= 0 or self.k % d:
            raise NonDivisorDegree(f"{d} does not divide {self.k}")
        return self.pow(a, (self.q - 1) // (self.p**d - 1))

    def in_subfield(self, a: int, d: int) -> bool:
        return self.frob(a, d) == a

    def roots_of_unity(self, m: int) -> list[int]:
        """Units ``u`` with ``u**m == 1``, in element order."""
        return [u for u in self.units_in_order if self.pow(u, m) == 1]

    def hilbert90(self, lam: int, exponent: int) -> int:
        """Least unit ``mu`` with ``frob(mu, exponent) / mu == lam``."""
        ell = self.k // math.gcd(exponent % self.k or self.k, self.k)
        nrm = 1
        x = lam
        for _ in range(ell):
            nrm = self.mul(nrm, x)
            x = self.frob(x, exponent)
        if nrm != 1:
            raise NormNotOne(f"norm of {self.format(lam)} over the fixed field is not 1")
        for mu in self.units_in_order:
            if self.div(self.frob(mu, exponent), mu) == lam:
                return mu
        raise AssertionError("Hilbert 90 scan found no solution")  # pragma: no cover

    # misc ---------------------------------------------------------------
    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.coeffs(a)):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and mono else f"{c}{mono}")
        return "+".join(terms) or "0"

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF):
            return NotImplemented
        return self.p == other.p and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``k`` over GF(p), constant term compared first."""
    if k == 1:
        return (0, 1)
    Fp = make_field(p, 1)
    for low in itertools.product(range(p), repeat=k):
        if low[0] == 0:
            continue
        cand = list(low) + [1]
        if poly.is_irreducible(Fp, cand):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def _build_field(p: int, k: int, modulus: tuple[int, ...]) -> GF:
    return GF(p, k, modulus)


def make_field(p: int, k: int = 1, modulus=None) -> GF:
    """Return GF(p^k), defined by ``modulus`` (constant-first coefficients).

    Without a modulus the least monic irreducible of degree ``k`` is used.
    """
    if not is_prime(p):
        raise CompositeCharacteristic(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be at least 1")
    if modulus is None:
        modulus = least_irreducible(p, k)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {k}: {list(modulus)}")
        if k == 1:
            modulus = (0, 1)
        elif not poly.is_irreducible(make_field(p, 1), list(modulus)):
            raise ReducibleModulus(f"{list(modulus)} is reducible over GF({p})")
    return _build_field(p, k, modulus)


@dataclass(frozen=True)
class FieldElem:
    field: GF
    value: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElem({self.field.format(self.value)} in {self.field!r})"


@dataclass(frozen=True)
class GaloisAut:
    """The automorphism ``x -> x**(p**exponent)`` of ``field``."""

    field: GF
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.field.k)

    @property
    def order(self) -> int:
        return self.field.k // math.gcd(self.exponent, self.field.k)

    @property
    def fixed_degree(self) -> int:
        """Degree over GF(p) of the fixed field."""
        return math.gcd(self.exponent, self.field.k)

    def __call__(self, a: int) -> int:
        return self.field.frob(a, self.exponent)

    def __mul__(self, other: GaloisAut) -> GaloisAut:
        if other.field != self.field:
            raise FieldMismatch("automorphisms of different fields")
        return GaloisAut(self.field, self.exponent + other.exponent)

    def power(self, m: int) -> GaloisAut:
        return GaloisAut(self.field, self.exponent * m)


def frobenius(x: FieldElem, aut: GaloisAut) -> FieldElem:
    if x.field != aut.field:
        raise FieldMismatch("element and automorphism live in different fields")
    return FieldElem(x.field, aut(x.value))


def norm_to_subfield(x: FieldElem, d: int) -> FieldElem:
    return FieldElem(x.field, x.field.norm(x.value, d))


def hilbert90_scalar(lam: FieldElem, aut: GaloisAut) -> FieldElem:
    """Least ``mu`` with ``lam == aut(mu) / mu``; needs norm(lam) == 1."""
    if lam.field != aut.field:
        raise FieldMismatch("element and automorphism live in different fields")
    return FieldElem(lam.field, lam.field.hilbert90(lam.value, aut.exponent))


class Embedding:
    """Ring embedding GF(p^a) -> GF(p^b) sending x to the least root of the source modulus."""

    def __init__(self, source: GF, target: GF):
        if source.p != target.p or target.k % source.k:
            raise NoEmbedding(f"{source} does not embed in {target}")
        self.source = source
        self.target = target
        T = target
        if source.k == 1:
            self.root = None
            self.table = tuple(T.from_int(i) for i in range(source.q))
            return
        mod_t = [T.from_int(c) for c in source.modulus]
        self.root = next(r for r in T.elements_in_order if poly.evaluate(T, mod_t, r) == 0)
        powers = [1]
        for _ in range(source.k - 1):
            powers.append(T.mul(powers[-1], self.root))
        table = []
        for a in range(source.q):
            acc = 0
            for c, rp in zip(source.coeffs(a), powers):
                if c:
                    acc = T.add(acc, T.mul(T.from_int(c), rp))
            table.append(acc)
        self.table = tuple(table)

    def __call__(self, a: int) -> int:
        return self.table[a]


@functools.lru_cache(maxsize=None)
def embedding(source: GF, target: GF) -> Embedding:
    return Embedding(source, target)


def embed(x: FieldElem, target: GF) -> FieldElem:
    return FieldElem(target, embedding(x.field, target)(x.value))
