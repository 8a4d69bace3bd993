"""Characters and the action of Omega(G, K) on them.

An :class:`OmegaElement` is written in the normal form ``(gamma, alpha, sigma)``
and acts on a character by first inverting the argument (if ``gamma``), then
applying the Galois automorphism ``x -> x**(p**alpha)``, then multiplying by the
linear character ``sigma``::

    (w . chi)(g) = sigma(g) * alpha(chi(g^-1 if gamma else g))

With this convention the group law is the semidirect product rule
``(c1, s1)(c2, s2) = (c1 c2, s1 * c1(s2))``, where ``c`` acts on linear
characters by ``alpha(s(g))`` and ``s(g^-1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import FieldMismatch, NotAbsolutelyIrreducible
from .finite_field import is_prime
from .groups import LinearCharacter, MatRep, linear_characters, trivial_character
from .matrices import Matrix


@dataclass(frozen=True)
class Character:
    rep: MatRep
    values: tuple[int, ...]
    degree: int

    def __call__(self, i: int) -> int:
        """Value at element index ``i``."""
        return self.values[self.rep.classes.class_of[i]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.rep is other.rep and self.values == other.values

    def __hash__(self) -> int:
        return hash((id(self.rep), self.values))


def character_of(rep: MatRep) -> Character:
    cls = rep.classes
    vals = tuple(rep.elements[r].trace() for r in cls.representatives)
    return Character(rep, vals, rep.degree)


def character_of_images(rep: MatRep, images) -> Character:
    """Character of the representation of G sending generator j to ``images[j]``."""
    cls = rep.classes
    vals = tuple(rep.evaluate_word(rep.words[r], images).trace() for r in cls.representatives)
    return Character(rep, vals, images[0].nrows)


@dataclass(frozen=True)
class OmegaElement:
    gamma: bool
    alpha: int
    sigma: LinearCharacter

    @property
    def field(self):
        return self.sigma.field

    def twist(self, s: LinearCharacter) -> LinearCharacter:
        """Action of the (gamma, alpha) part on a linear character."""
        if self.gamma:
            s = s.inverse()
        return s.frob(self.alpha)

    def __mul__(self, other: OmegaElement) -> OmegaElement:
        if other.field != self.field:
            raise FieldMismatch("Omega elements over different fields")
        k = self.field.k
        return OmegaElement(
            self.gamma != other.gamma, (self.alpha + other.alpha) % k, self.sigma * self.twist(other.sigma)
        )

    def is_identity(self) -> bool:
        return not self.gamma and self.alpha == 0 and self.sigma.is_trivial

    def order(self) -> int:
        x, m = self, 1
        while not x.is_identity():
            x = x * self
            m += 1
        return m

    def inverse(self) -> OmegaElement:
        x = self
        for _ in range(self.order() - 2):
            x = x * self
        return x if self.order() > 1 else self

    def apply_to_images(self, rep: MatRep, images) -> list[Matrix]:
        """Generator images of the representation whose character is ``self . chi``."""
        out = []
        for j, A in enumerate(images):
            B = A.inverse().T if self.gamma else A
            B = B.frob(self.alpha)
            out.append(B.scale(self.sigma(rep.generator_index(j))))
        return out

    def key(self) -> tuple:
        return (int(self.gamma), self.alpha, tuple(self.sigma.field.order_key(v) for v in self.sigma.gen_values))


def omega_identity(rep: MatRep) -> OmegaElement:
    return OmegaElement(False, 0, trivial_character(rep))


def omega_elements(rep: MatRep) -> list[OmegaElement]:
    """All of Omega(G, K) in the fixed candidate order (gamma, alpha, sigma)."""
    homs = linear_characters(rep)
    return [
        OmegaElement(bool(g), a, s)
        for g, a, s in itertools.product((0, 1), range(rep.field.k), homs)
    ]


def omega_act(w: OmegaElement, chi: Character) -> Character:
    rep = chi.rep
    F = rep.field
    if w.field != F:
        raise FieldMismatch("Omega element and character over different fields")
    cls = rep.classes
    out = []
    for r in cls.representatives:
        src = cls.class_of[rep.inverse[r]] if w.gamma else cls.class_of[r]
        v = F.frob(chi.values[src], w.alpha)
        out.append(F.mul(w.sigma(r), v))
    return Character(rep, tuple(out), chi.degree)


def omega_stabilizer(chi: Character, check_irreducible: bool = True) -> list[OmegaElement]:
    """Exhaustive scan of Omega(G, K) for the elements fixing ``chi``."""
    if check_irreducible:
        from .clifford import absolute_irreducibility

        if not absolute_irreducibility(chi.rep):
            raise NotAbsolutelyIrreducible("stabilizer theory needs an absolutely irreducible character")
    return [w for w in omega_elements(chi.rep) if omega_act(w, chi) == chi]


def is_subgroup(elements: list[OmegaElement]) -> bool:
    keys = {w.key() for w in elements}
    return all((a * b).key() in keys for a in elements for b in elements) and all(
        w.inverse().key() in keys for w in elements
    )


def prime_order_elements(stab: list[OmegaElement]) -> list[tuple[OmegaElement, int]]:
    out = []
    for w in stab:
        m = w.order()
        if is_prime(m):
            out.append((w, m))
    return out
