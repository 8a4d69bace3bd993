"""Finite matrix groups given by generators.

:func:`close_group` enumerates the group breadth-first and records, for every
element, the lexicographically least shortest word in the generators together
with left/right multiplication tables by the generators.  Everything else
(classes, derived subgroup, linear characters, permutation actions) works on
element indices through those tables and never multiplies matrices again.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    EmptyGeneratorList,
    FieldMismatch,
    NotAHomomorphism,
    NotPrimeOrder,
    OrderCapExceeded,
    RootsOfUnityMissing,
    ShapeMismatch,
    SingularGenerator,
)
from .finite_field import GF, is_prime, prime_factors
from .matrices import Matrix

DEFAULT_ORDER_CAP = 100_000

Perm = tuple[int, ...]


def _inverse_perm(t: Sequence[int]) -> list[int]:
    out = [0] * len(t)
    for i, j in enumerate(t):
        out[j] = i
    return out


class MatRep:
    """A closed finite matrix group with its generator words and tables.

    ``right[j][i]`` is the index of ``elements[i] @ generators[j]`` and
    ``left[j][i]`` that of ``generators[j] @ elements[i]``.  Index 0 is the
    identity.
    """

    def __init__(self, generators, elements, words, right, left, inverse):
        self.generators: tuple[Matrix, ...] = tuple(generators)
        self.field: GF = self.generators[0].field
        self.degree: int = self.generators[0].nrows
        self.elements: list[Matrix] = elements
        self.words: list[tuple[int, ...]] = words
        self.right: list[list[int]] = right
        self.left: list[list[int]] = left
        self.inverse: list[int] = inverse
        self._index = {m.data: i for i, m in enumerate(elements)}
        self._right_inv = [_inverse_perm(r) for r in right]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"<MatRep degree={self.degree} order={self.order} over {self.field!r}>"

    def index_of(self, m: Matrix) -> int:
        return self._index[m.data]

    def contains(self, m: Matrix) -> bool:
        return m.data in self._index

    def mul(self, a: int, b: int) -> int:
        """Index of ``elements[a] @ elements[b]``."""
        right = self.right
        for j in self.words[b]:
            a = right[j][a]
        return a

    def conjugate(self, x: int, j: int) -> int:
        """Index of ``g_j @ x @ g_j^-1``."""
        return self._right_inv[j][self.left[j][x]]

    def conjugate_by(self, x: int, g: int) -> int:
        """Index of ``g x g^-1`` for an arbitrary element ``g``."""
        return self.mul(self.mul(g, x), self.inverse[g])

    def power(self, a: int, e: int) -> int:
        e %= self.element_order(a)
        r = 0
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def element_order(self, a: int) -> int:
        x = a
        m = 1
        while x != 0:
            x = self.mul(x, a)
            m += 1
        return m

    def generator_index(self, j: int) -> int:
        return self.right[j][0]

    def evaluate_word(self, word: Iterable[int], images: Sequence[Matrix]) -> Matrix:
        m = Matrix.identity(images[0].field, images[0].nrows)
        for j in word:
            m = m @ images[j]
        return m

    def images_on_elements(self, images: Sequence[Matrix]) -> list[Matrix]:
        """Extend generator images to every element, checking they define a homomorphism."""
        if len(images) != self.ngens:
            raise ShapeMismatch("need one image per generator")
        out: list[Matrix | None] = [None] * self.order
        out[0] = Matrix.identity(images[0].field, images[0].nrows)
        for i in range(self.order):
            for j in range(self.ngens):
                t = self.right[j][i]
                val = out[i] @ images[j]
                if out[t] is None:
                    out[t] = val
                elif out[t] != val:
                    raise NotAHomomorphism("generator images do not define a homomorphism")
        return out  # type: ignore[return-value]

    @cached_property
    def classes(self) -> ConjClassTable:
        return conjugacy_classes(self)

    @cached_property
    def derived_subgroup(self) -> frozenset[int]:
        comms = []
        for a, b in itertools.combinations(range(self.ngens), 2):
            ga, gb = self.generator_index(a), self.generator_index(b)
            c = self.mul(self.mul(self.inverse[ga], self.inverse[gb]), self.mul(ga, gb))
            comms.append(c)
        return normal_closure(self, comms)


def close_group(generators: Sequence[Matrix], cap: int = DEFAULT_ORDER_CAP) -> MatRep:
    """Breadth-first closure of the group generated by ``generators``."""
    gens = list(generators)
    if not gens:
        raise EmptyGeneratorList("a group needs at least one generator")
    F, n = gens[0].field, gens[0].nrows
    for g in gens:
        if g.field != F:
            raise FieldMismatch("generators over different fields")
        if g.shape != (n, n):
            raise ShapeMismatch("generators of different sizes")
        if not g.det():
            raise SingularGenerator(f"singular generator {g.format()}")
    ident = Matrix.identity(F, n)
    elements = [ident]
    words: list[tuple[int, ...]] = [()]
    index = {ident.data: 0}
    right: list[list[int]] = [[] for _ in gens]
    i = 0
    while i < len(elements):
        x = elements[i]
        for j, g in enumerate(gens):
            y = x @ g
            t = index.get(y.data)
            if t is None:
                t = len(elements)
                if t >= cap:
                    raise OrderCapExceeded(f"group order exceeds cap {cap}")
                index[y.data] = t
                elements.append(y)
                words.append(words[i] + (j,))
            right[j].append(t)
        i += 1
    left = [[index[(g @ x).data] for x in elements] for g in gens]
    left_inv = [_inverse_perm(t) for t in left]
    inverse = [0] * len(elements)
    for i in range(len(elements)):
        for j in range(len(gens)):
            # (x g)^-1 = g^-1 x^-1
            inverse[right[j][i]] = left_inv[j][inverse[i]]
    return MatRep(gens, elements, words, right, left, inverse)


# conjugacy classes ---------------------------------------------------------------


@dataclass(frozen=True)
class ConjClassTable:
    representatives: tuple[int, ...]
    class_of: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.members)

    def __len__(self) -> int:
        return len(self.representatives)


def conjugacy_classes(rep: MatRep) -> ConjClassTable:
    """Orbits under conjugation by the generators; representatives are least indices."""
    class_of = [-1] * rep.order
    reps, members = [], []
    for start in range(rep.order):
        if class_of[start] >= 0:
            continue
        c = len(reps)
        class_of[start] = c
        orbit = [start]
        k = 0
        while k < len(orbit):
            x = orbit[k]
            for j in range(rep.ngens):
                y = rep.conjugate(x, j)
                if class_of[y] < 0:
                    class_of[y] = c
                    orbit.append(y)
            k += 1
        reps.append(start)
        members.append(tuple(sorted(orbit)))
    return ConjClassTable(tuple(reps), tuple(class_of), tuple(members))


# subgroups -------------------------------------------------------------------------


def subgroup_closure(rep: MatRep, gens: Iterable[int]) -> frozenset[int]:
    gens = list(gens)
    seen = {0}
    queue = [0]
    while queue:
        x = queue.pop()
        for g in gens:
            y = rep.mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def normal_closure(rep: MatRep, gens: Iterable[int]) -> frozenset[int]:
    gens = list(gens)
    H = subgroup_closure(rep, gens)
    pending = list(gens)
    while pending:
        t = pending.pop()
        for j in range(rep.ngens):
            c = rep.conjugate(t, j)
            if c not in H:
                gens.append(c)
                pending.append(c)
                H = subgroup_closure(rep, gens)
    return H


def is_normal(rep: MatRep, subset: Iterable[int]) -> bool:
    S = set(subset)
    return all(rep.conjugate(x, j) in S for x in S for j in range(rep.ngens))


def generating_subset(rep: MatRep, subset: Iterable[int]) -> list[int]:
    """A small generating set of the subgroup ``subset``, chosen greedily in index order."""
    S = sorted(set(subset))
    gens: list[int] = []
    H = frozenset({0})
    for x in S:
        if x not in H:
            gens.append(x)
            H = subgroup_closure(rep, gens)
            if len(H) == len(S):
                break
    return gens


# abelianization and linear characters -------------------------------------------


@dataclass(frozen=True)
class Abelianization:
    coset_of: tuple[int, ...]
    coset_reps: tuple[int, ...]
    gen_cosets: tuple[int, ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.coset_reps)


def abelianization(rep: MatRep) -> Abelianization:
    D = sorted(rep.derived_subgroup)
    coset_of = [-1] * rep.order
    reps = []
    for x in range(rep.order):
        if coset_of[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        for d in D:
            coset_of[rep.mul(x, d)] = c
    right = tuple(tuple(coset_of[rep.right[j][r]] for r in reps) for j in range(rep.ngens))
    gen_cosets = tuple(coset_of[rep.generator_index(j)] for j in range(rep.ngens))
    return Abelianization(tuple(coset_of), tuple(reps), gen_cosets, right)


def abelian_invariants(rep: MatRep) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ...`` of G/[G, G]."""
    Q = abelianization(rep)
    m = Q.order
    if m == 1:
        return []
    # multiplication of cosets via representatives
    def qmul(a: int, b: int) -> int:
        return Q.coset_of[rep.mul(Q.coset_reps[a], Q.coset_reps[b])]

    def qpow(a: int, e: int) -> int:
        r = 0
        for _ in range(e):
            r = qmul(r, a)
        return r

    elementary: dict[int, list[int]] = {}
    for r in prime_factors(m):
        top = 0
        while m % r ** (top + 1) == 0:
            top += 1
        counts = [1]
        for j in range(1, top + 1):
            counts.append(sum(1 for a in range(m) if qpow(a, r**j) == 0))
        ge = [round(math.log(counts[j] // counts[j - 1], r)) for j in range(1, top + 1)]
        exps = []
        for j in range(top, 0, -1):
            more = ge[j - 1] - (ge[j] if j < top else 0)
            exps.extend([j] * more)
        elementary[r] = sorted(exps, reverse=True)
    width = max(len(v) for v in elementary.values())
    inv = []
    for i in range(width):
        d = 1
        for r, exps in elementary.items():
            if i < len(exps):
                d *= r ** exps[i]
        inv.append(d)
    return sorted(inv)


@dataclass(frozen=True)
class LinearCharacter:
    """A homomorphism G -> K*, stored by its values on generators and on all elements."""

    field: GF
    gen_values: tuple[int, ...]
    values: tuple[int, ...] = field(repr=False, compare=False)

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.gen_values)

    @property
    def order(self) -> int:
        F = self.field
        return math.lcm(*(F.mult_order(v) for v in self.gen_values)) if self.gen_values else 1

    def __mul__(self, other: LinearCharacter) -> LinearCharacter:
        mul = self.field.mul
        return LinearCharacter(
            self.field,
            tuple(map(mul, self.gen_values, other.gen_values)),
            tuple(map(mul, self.values, other.values)),
        )

    def inverse(self) -> LinearCharacter:
        inv = self.field.inv
        return LinearCharacter(self.field, tuple(map(inv, self.gen_values)), tuple(map(inv, self.values)))

    def frob(self, e: int) -> LinearCharacter:
        F = self.field
        return LinearCharacter(
            F, tuple(F.frob(v, e) for v in self.gen_values), tuple(F.frob(v, e) for v in self.values)
        )

    def power(self, m: int) -> LinearCharacter:
        F = self.field
        return LinearCharacter(
            F, tuple(F.pow(v, m) for v in self.gen_values), tuple(F.pow(v, m) for v in self.values)
        )


def trivial_character(rep: MatRep, F: GF | None = None) -> LinearCharacter:
    F = F or rep.field
    return LinearCharacter(F, (1,) * rep.ngens, (1,) * rep.order)


def linear_characters(rep: MatRep, F: GF | None = None) -> list[LinearCharacter]:
    """All of Hom(G, F*), ordered by generator values in element order.

    A candidate assignment of roots of unity to the generators is accepted iff
    it propagates consistently over the Cayley graph of G/[G, G].
    """
    F = F or rep.field
    Q = abelianization(rep)
    m = Q.order

    def qorder(c: int) -> int:
        x, k = c, 1
        while x != 0:
            x = Q.coset_of[rep.mul(Q.coset_reps[x], Q.coset_reps[c])]
            k += 1
        return k

    choices = [F.roots_of_unity(math.gcd(qorder(c), F.q - 1)) for c in Q.gen_cosets]
    out = []
    for assignment in itertools.product(*choices):
        val: list[int | None] = [None] * m
        val[0] = 1
        ok = True
        for c in range(m):
            if not ok:
                break
            vc = val[c]
            for j in range(rep.ngens):
                t = Q.right[j][c]
                w = F.mul(vc, assignment[j])
                if val[t] is None:
                    val[t] = w
                elif val[t] != w:
                    ok = False
                    break
        if ok:
            values = tuple(val[Q.coset_of[i]] for i in range(rep.order))
            out.append(LinearCharacter(F, tuple(assignment), values))  # type: ignore[arg-type]
    return out


def is_multiplicative(rep: MatRep, sigma: LinearCharacter) -> bool:
    """Exhaustive check over all |G|^2 pairs."""
    mul = sigma.field.mul
    return all(
        sigma(rep.mul(a, b)) == mul(sigma(a), sigma(b)) for a in range(rep.order) for b in range(rep.order)
    )


# permutation actions --------------------------------------------------------------


def perm_compose(a: Perm, b: Perm) -> Perm:
    """``a o b`` (apply ``b`` first)."""
    return tuple(a[i] for i in b)


def perm_inverse(a: Perm) -> Perm:
    return tuple(_inverse_perm(a))


def perm_identity(k: int) -> Perm:
    return tuple(range(k))


def perm_order(a: Perm) -> int:
    seen, out = set(), 1
    for s in range(len(a)):
        if s in seen:
            continue
        length, x = 0, s
        while x not in seen:
            seen.add(x)
            x = a[x]
            length += 1
        out = math.lcm(out, length)
    return out


def is_fixed_point_free(a: Perm) -> bool:
    return all(a[i] != i for i in range(len(a)))


def perm_group_closure(gens: Iterable[Perm], k: int) -> frozenset[Perm]:
    gens = list(gens)
    e = perm_identity(k)
    seen = {e}
    queue = [e]
    while queue:
        x = queue.pop()
        for g in gens:
            y = perm_compose(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def perm_derived_subgroup(H: frozenset[Perm], k: int) -> frozenset[Perm]:
    comms = {
        perm_compose(perm_compose(perm_inverse(a), perm_inverse(b)), perm_compose(a, b)) for a in H for b in H
    }
    return perm_group_closure(sorted(comms), k)


def is_solvable_perm_group(H: frozenset[Perm], k: int) -> bool:
    while len(H) > 1:
        D = perm_derived_subgroup(H, k)
        if len(D) == len(H):
            return False
        H = D
    return True


def is_cyclic_perm_group(H: frozenset[Perm]) -> bool:
    return any(perm_order(a) == len(H) for a in H)


def is_transitive(gens: Sequence[Perm], k: int) -> bool:
    orbit = {0}
    queue = [0]
    while queue:
        x = queue.pop()
        for g in gens:
            if g[x] not in orbit:
                orbit.add(g[x])
                queue.append(g[x])
    return len(orbit) == k


@dataclass(frozen=True)
class PermAction:
    """A homomorphism psi: G -> Sym_k, given on generators and on every element."""

    degree: int
    gen_images: tuple[Perm, ...]
    element_images: tuple[Perm, ...] = field(repr=False, compare=False)

    def __call__(self, i: int) -> Perm:
        return self.element_images[i]

    @cached_property
    def image(self) -> frozenset[Perm]:
        return frozenset(self.element_images)

    @property
    def transitive(self) -> bool:
        return is_transitive(self.gen_images, self.degree)


def perm_action(rep: MatRep, gen_images: Sequence[Sequence[int]]) -> PermAction:
    """Extend permutation images of the generators to G, verifying the homomorphism property."""
    gen_images = tuple(tuple(int(x) for x in g) for g in gen_images)
    if len(gen_images) != rep.ngens:
        raise ShapeMismatch(f"expected {rep.ngens} permutation images, got {len(gen_images)}")
    k = len(gen_images[0]) if gen_images else 0
    for g in gen_images:
        if len(g) != k or sorted(g) != list(range(k)):
            raise NotAHomomorphism(f"not a permutation of {k} points: {g}")
    imgs: list[Perm | None] = [None] * rep.order
    imgs[0] = perm_identity(k)
    for i in range(rep.order):
        for j in range(rep.ngens):
            t = rep.right[j][i]
            val = perm_compose(imgs[i], gen_images[j])
            if imgs[t] is None:
                imgs[t] = val
            elif imgs[t] != val:
                raise NotAHomomorphism("permutation images do not define a homomorphism")
    return PermAction(k, gen_images, tuple(imgs))  # type: ignore[arg-type]


def kernel_of(action: PermAction, rep: MatRep) -> frozenset[int]:
    e = perm_identity(action.degree)
    return frozenset(i for i in range(rep.order) if action(i) == e)


def primitive_root_of_unity(F: GF, p: int) -> int:
    """Least element of multiplicative order exactly ``p``."""
    for u in F.units_in_order:
        if F.mult_order(u) == p:
            return u
    raise RootsOfUnityMissing(f"{F} has no primitive {p}-th root of unity")


def perm_action_from_character(sigma: LinearCharacter, rep: MatRep) -> PermAction:
    """psi(g) = c^j where sigma(g) = zeta^j and c is the p-cycle 0 -> 1 -> ... -> p-1 -> 0."""
    p = sigma.order
    if not is_prime(p):
        raise NotPrimeOrder(f"linear character has order {p}, not a prime")
    F = sigma.field
    zeta = primitive_root_of_unity(F, p)
    dlog = {F.pow(zeta, j): j for j in range(p)}

    def cycle_power(j: int) -> Perm:
        return tuple((i + j) % p for i in range(p))

    imgs = []
    for v in sigma.gen_values:
        if v not in dlog:
            raise RootsOfUnityMissing("character value is not a power of the chosen root")
        imgs.append(cycle_power(dlog[v]))
    return perm_action(rep, imgs)
