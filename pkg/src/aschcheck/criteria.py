"""Character criteria for Aschbacher classes C2, C5 and C8, with witnesses.

Each check decides membership from the character alone and then builds an
explicit witness (a form, a conjugator into a subfield group, or a block
system), which is re-verified before it is returned.  The ``*_oracle``
functions answer the same questions by direct linear algebra on the matrices,
without looking at the character.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Sequence
from dataclasses import dataclass, field

from .characters import (
    Character,
    OmegaElement,
    character_of,
    character_of_images,
    omega_act,
)
from .clifford import (
    BlockSystem,
    NotImprimitive,
    absolute_irreducibility,
    block_system,
    extend_scalars,
    verify_block_system,
)
from .errors import (
    CharactersDiffer,
    CharacteristicTwo,
    InvariantViolation,
    NoOrderTwoAutomorphism,
    NonDivisorDegree,
    NonPrimeDegree,
    NotAbsolutelyIrreducible,
    NotInStabilizer,
    NotPrimeOrder,
    NotTransitive,
)
from .finite_field import GF, GaloisAut, is_prime, make_field
from .groups import (
    LinearCharacter,
    MatRep,
    PermAction,
    is_cyclic_perm_group,
    is_fixed_point_free,
    is_solvable_perm_group,
    kernel_of,
    linear_characters,
    perm_action_from_character,
    trivial_character,
)
from .matrices import Matrix, char_poly, hilbert90_matrix, intertwiner_space

# Largest field we are willing to build when searching for a splitting field.
EXTENSION_FIELD_CAP = 20_000


def _require_abs_irr(rep: MatRep) -> None:
    if not absolute_irreducibility(rep):
        raise NotAbsolutelyIrreducible("the representation is not absolutely irreducible")


# equivalence ---------------------------------------------------------------------


def find_equivalence(rep1: MatRep, rep2: MatRep | Sequence[Matrix]) -> Matrix:
    """Invertible ``x`` with ``x @ D1(g) @ x^-1 == D2(g)`` for every generator.

    ``rep2`` is either a :class:`MatRep` on the same generator words or just
    the list of generator images.
    """
    images = list(rep2.generators if isinstance(rep2, MatRep) else rep2)
    gens = list(rep1.generators)
    if not absolute_irreducibility(rep1):
        raise NotAbsolutelyIrreducible("first representation is not absolutely irreducible")
    if character_of_images(rep1, images).values != character_of(rep1).values:
        raise CharactersDiffer("the two representations have different characters")
    basis = intertwiner_space(gens, images)
    if len(basis) != 1 or not basis[0].is_invertible():
        raise InvariantViolation("equal absolutely irreducible characters without a unique intertwiner")
    x = basis[0]
    xi = x.inverse()
    for A, B in zip(gens, images):
        if x @ A @ xi != B:
            raise InvariantViolation("equivalence re-verification failed")
    return x


# forms (C8) --------------------------------------------------------------------


@dataclass(frozen=True)
class FormWitness:
    y: Matrix
    sigma: LinearCharacter
    kind: str  # "symmetric" | "alternating" | "hermitian"


@dataclass(frozen=True)
class FormResult:
    witnesses: tuple[FormWitness, ...]

    @property
    def exact(self) -> bool:
        """True if a witness with trivial sigma exists (no scalars needed)."""
        return any(w.sigma.is_trivial for w in self.witnesses)

    def __bool__(self) -> bool:
        return bool(self.witnesses)


def _twisted_dual(rep: MatRep, sigma: LinearCharacter, alpha: int) -> list[Matrix]:
    return [
        A.inverse().T.frob(alpha).scale(sigma(rep.generator_index(j)))
        for j, A in enumerate(rep.generators)
    ]


def _form_matrix(rep: MatRep, sigma: LinearCharacter, alpha: int) -> Matrix:
    basis = intertwiner_space(list(rep.generators), _twisted_dual(rep, sigma, alpha))
    if len(basis) != 1 or not basis[0].is_invertible():
        raise InvariantViolation("character test passed but no unique invertible form exists")
    return basis[0]


def verify_form_witness(rep: MatRep, w: FormWitness) -> bool:
    y = w.y
    F = rep.field
    if not y.is_invertible():
        return False
    alpha = F.k // 2 if w.kind == "hermitian" else 0
    for j, A in enumerate(rep.generators):
        if A.frob(alpha).T @ y @ A != y.scale(w.sigma(rep.generator_index(j))):
            return False
    if w.kind == "symmetric":
        return y.T == y
    if w.kind == "alternating":
        return y.T == -y and all(y[i, i] == 0 for i in range(y.nrows))
    if w.kind == "hermitian":
        return y.frob(alpha).T == y
    return False


def bilinear_form_for(rep: MatRep, sigma: LinearCharacter) -> FormWitness:
    F = rep.field
    y = _form_matrix(rep, sigma, 0)
    if y.T == y:
        kind = "symmetric"
    elif y.T == -y:
        kind = "alternating"
    else:
        raise InvariantViolation("invariant form is neither symmetric nor alternating")
    if F.p == 2 and kind == "symmetric" and all(y[i, i] == 0 for i in range(y.nrows)):
        kind = "alternating"
    w = FormWitness(y, sigma, kind)
    if not verify_form_witness(rep, w):
        raise InvariantViolation("bilinear form witness failed re-verification")
    return w


def check_bilinear_form(rep: MatRep, sigmas: Sequence[LinearCharacter] | None = None) -> FormResult:
    """All sigma with ``sigma * gamma . chi == chi``, each with its invariant form."""
    F = rep.field
    if F.p == 2:
        raise CharacteristicTwo("the bilinear-form criterion needs odd characteristic")
    _require_abs_irr(rep)
    chi = character_of(rep)
    out = []
    for sigma in linear_characters(rep) if sigmas is None else sigmas:
        if omega_act(OmegaElement(True, 0, sigma), chi) == chi:
            out.append(bilinear_form_for(rep, sigma))
    return FormResult(tuple(out))


def hermitian_form_for(rep: MatRep, sigma: LinearCharacter) -> FormWitness:
    F = rep.field
    h = F.k // 2
    y = _form_matrix(rep, sigma, h)
    ya = y.frob(h).T
    pos = next(t for t, v in enumerate(ya.data) if v)
    lam = F.div(y.data[pos], ya.data[pos])
    if ya.scale(lam) != y:
        raise InvariantViolation("form is not a scalar multiple of its conjugate transpose")
    mu = F.hilbert90(lam, h)
    w = FormWitness(y.scale(mu), sigma, "hermitian")
    if not verify_form_witness(rep, w):
        raise InvariantViolation("hermitian form witness failed re-verification")
    return w


def check_hermitian_form(rep: MatRep, sigmas: Sequence[LinearCharacter] | None = None) -> FormResult:
    """All sigma with ``sigma * alpha * gamma . chi == chi`` for the involution alpha."""
    F = rep.field
    if F.k % 2:
        raise NoOrderTwoAutomorphism(f"{F} has no automorphism of order 2")
    _require_abs_irr(rep)
    chi = character_of(rep)
    h = F.k // 2
    out = []
    for sigma in linear_characters(rep) if sigmas is None else sigmas:
        if omega_act(OmegaElement(True, h, sigma), chi) == chi:
            out.append(hermitian_form_for(rep, sigma))
    return FormResult(tuple(out))


def form_oracle(rep: MatRep, sigma: LinearCharacter, hermitian: bool = False) -> bool:
    """Direct solve: is there an invertible y with alpha(D(g))^T y D(g) = sigma(g) y?"""
    alpha = rep.field.k // 2 if hermitian else 0
    basis = intertwiner_space(list(rep.generators), _twisted_dual(rep, sigma, alpha))
    return bool(basis) and basis[0].is_invertible()


# subfields (C5) --------------------------------------------------------------------


@dataclass(frozen=True)
class SubfieldWitness:
    """``z @ D(g_j) @ z^-1 == lambdas[j] * X[j]`` with every ``X[j]`` over the degree-``d`` subfield."""

    d: int
    aut_exponent: int
    z: Matrix
    sigma: LinearCharacter
    lambdas: tuple[int, ...]
    X: tuple[Matrix, ...]


def _subfield_setup(rep: MatRep, d: int, aut_exponent: int | None) -> int:
    k = rep.field.k
    if d <= 0 or d >= k or k % d:
        raise NonDivisorDegree(f"{d} is not a proper divisor of {k}")
    e = d if aut_exponent is None else aut_exponent % k
    if math.gcd(e, k) != d:
        raise NonDivisorDegree(f"x -> x^(p^{e}) does not generate Gal(K/F) for the degree-{d} subfield")
    return e


def subfield_sigmas(rep: MatRep, d: int, aut_exponent: int | None = None) -> list[LinearCharacter]:
    """All sigma in Hom(G, ker N_{K/F}) with ``alpha . chi == sigma . chi``."""
    e = _subfield_setup(rep, d, aut_exponent)
    F = rep.field
    chi = character_of(rep)
    triv = trivial_character(rep)
    lhs = omega_act(OmegaElement(False, e, triv), chi)
    out = []
    for sigma in linear_characters(rep):
        if all(F.norm(v, d) == 1 for v in sigma.gen_values):
            if omega_act(OmegaElement(False, 0, sigma), chi) == lhs:
                out.append(sigma)
    return out


def subfield_witness_for(
    rep: MatRep, d: int, sigma: LinearCharacter, aut_exponent: int | None = None, seed: int | random.Random = 0
) -> SubfieldWitness:
    e = _subfield_setup(rep, d, aut_exponent)
    F = rep.field
    aut = GaloisAut(F, e)
    ell = aut.order
    gens = list(rep.generators)
    twisted = [A.scale(sigma(rep.generator_index(j))) for j, A in enumerate(gens)]
    conj = [A.frob(e) for A in gens]
    # y (sigma D) y^-1 = alpha(D)
    basis = intertwiner_space(twisted, conj)
    if len(basis) != 1 or not basis[0].is_invertible():
        raise InvariantViolation("character test passed but sigma.D and alpha(D) are not equivalent")
    y = basis[0]
    P = y
    for _ in range(ell - 1):
        P = P.frob(e) @ y
    if not P.is_scalar():
        raise InvariantViolation("twisted norm of the intertwiner is not scalar")
    lam = P.data[0]
    if not F.in_subfield(lam, d):
        raise InvariantViolation("twisted norm scalar is not in the subfield")
    target = F.inv(lam)
    eta = next(u for u in F.units_in_order if F.norm(u, d) == target)
    y = y.scale(eta)
    z = hilbert90_matrix(y, aut, seed)
    zi = z.inverse()
    lambdas, X = [], []
    for j, A in enumerate(gens):
        lam_g = F.hilbert90(sigma(rep.generator_index(j)), e)
        Xg = (z @ A @ zi).scale(F.inv(lam_g))
        lambdas.append(lam_g)
        X.append(Xg)
    w = SubfieldWitness(d, e, z, sigma, tuple(lambdas), tuple(X))
    if not verify_subfield_witness(rep, w):
        raise InvariantViolation("subfield witness failed re-verification")
    return w


def check_subfield(
    rep: MatRep,
    d: int,
    aut_exponent: int | None = None,
    sigma: LinearCharacter | None = None,
    seed: int | random.Random = 0,
) -> SubfieldWitness | None:
    """Witness that the image lies in GL(n, F)K* up to conjugacy, F of degree ``d``; else None.

    With ``sigma`` given only that twist is tried (it must satisfy the criterion).
    """
    _subfield_setup(rep, d, aut_exponent)
    _require_abs_irr(rep)
    candidates = subfield_sigmas(rep, d, aut_exponent)
    if sigma is not None:
        candidates = [s for s in candidates if s == sigma]
    if not candidates:
        return None
    return subfield_witness_for(rep, d, candidates[0], aut_exponent, seed)


def verify_subfield_witness(rep: MatRep, w: SubfieldWitness) -> bool:
    F = rep.field
    z = w.z
    if not z.is_invertible():
        return False
    zi = z.inverse()
    for j, A in enumerate(rep.generators):
        s = w.sigma(rep.generator_index(j))
        if F.norm(s, w.d) != 1:
            return False
        if F.div(F.frob(w.lambdas[j], w.aut_exponent), w.lambdas[j]) != s:
            return False
        if not w.X[j].in_subfield(w.d):
            return False
        if z @ A @ zi != w.X[j].scale(w.lambdas[j]):
            return False
    return True


def _projective_obstruction(rep: MatRep, d: int) -> bool:
    """True if some char-poly invariant c_i(g)^n / det(g)^i leaves the subfield.

    Those ratios are unchanged by scalars and conjugation, so they must lie in
    F for every element of a group conjugate into GL(n, F)K*.
    """
    F = rep.field
    n = rep.degree
    for r in rep.classes.representatives:
        A = rep.elements[r]
        cp = char_poly(A)
        det = A.det()
        for i in range(1, n + 1):
            c = cp[n - i]
            ratio = F.div(F.pow(c, n), F.pow(det, i))
            if not F.in_subfield(ratio, d):
                return True
    return False


BRUTE_FORCE_LIMIT = 70_000


def subfield_oracle(rep: MatRep, d: int) -> bool | None:
    """Independent answer to the C5 question, or None when too large to decide.

    Negative answers come from the projective char-poly obstruction; a full
    search over conjugators z in GL(n, K) is run when |K|^(n^2) is small.
    """
    F = rep.field
    n = rep.degree
    if _projective_obstruction(rep, d):
        return False
    if F.q ** (n * n) > BRUTE_FORCE_LIMIT:
        return None
    gens = list(rep.generators)
    for data in itertools.product(range(F.q), repeat=n * n):
        z = Matrix(F, n, n, data)
        if not z.det():
            continue
        zi = z.inverse()
        if all(_is_scaled_subfield(z @ A @ zi, d) for A in gens):
            return True
    return False


def _is_scaled_subfield(M: Matrix, d: int) -> bool:
    F = M.field
    lead = next(v for v in M.data if v)
    return M.scale(F.inv(lead)).in_subfield(d)


# imprimitivity (C2) ----------------------------------------------------------------

IMPRIMITIVE_K = "imprimitive-over-K"
IMPRIMITIVE_EXT = "imprimitive-over-extension"
NECESSARY_FAILS = "necessary-condition-fails"
HYPOTHESES_NOT_MET = "hypotheses-not-met"


@dataclass(frozen=True)
class C2Verdict:
    status: str
    psi: PermAction
    necessary_holds: bool
    violations: tuple[int, ...] = ()  # class indices with psi(g) fixed-point free and chi(g) != 0
    block_system: BlockSystem | None = None
    extension_degree: int | None = None
    reason: str = ""

    @property
    def imprimitive(self) -> bool:
        return self.status in (IMPRIMITIVE_K, IMPRIMITIVE_EXT)


def vanishing_violations(chi: Character, psi: PermAction) -> list[int]:
    """Classes where psi(g) has no fixed point but chi(g) != 0."""
    rep = chi.rep
    return [
        c
        for c, r in enumerate(rep.classes.representatives)
        if is_fixed_point_free(psi(r)) and chi.values[c] != 0
    ]


def extension_field(F: GF, d: int) -> GF:
    return F if d == 1 else make_field(F.p, F.k * d)


def check_imprimitivity(rep: MatRep, psi: PermAction, seed: int | random.Random = 0) -> C2Verdict:
    p = psi.degree
    if not is_prime(p):
        raise NonPrimeDegree(f"block count {p} is not prime")
    if not psi.transitive:
        raise NotTransitive("psi is not transitive")
    _require_abs_irr(rep)
    chi = character_of(rep)
    bad = vanishing_violations(chi, psi)
    if bad:
        return C2Verdict(NECESSARY_FAILS, psi, False, tuple(bad), reason="chi does not vanish where psi is fixed-point free")
    H = psi.image
    solvable = is_solvable_perm_group(H, p)
    cyclic = is_cyclic_perm_group(H)
    n = rep.degree
    N = kernel_of(psi, rep)
    if solvable and n == p and not cyclic:
        bs = block_system(rep, N, psi, seed)
        if isinstance(bs, NotImprimitive):
            raise InvariantViolation(f"degree-p criterion holds but no block system over K: {bs.reason}")
        return C2Verdict(IMPRIMITIVE_K, psi, True, block_system=bs, extension_degree=1)
    if solvable and math.gcd(n, p - 1) == 1:
        reasons = []
        for d in (1, p):
            E = extension_field(rep.field, d)
            if E.q > EXTENSION_FIELD_CAP:
                reasons.append(f"extension of degree {d} exceeds field cap")
                continue
            ext = extend_scalars(rep, E)
            bs = block_system(ext, N, psi, seed)
            if isinstance(bs, BlockSystem):
                status = IMPRIMITIVE_K if d == 1 else IMPRIMITIVE_EXT
                return C2Verdict(status, psi, True, block_system=bs, extension_degree=d)
            reasons.append(f"degree {d}: {bs.reason}")
        if any("cap" in r for r in reasons):
            return C2Verdict(HYPOTHESES_NOT_MET, psi, True, reason="; ".join(reasons))
        raise InvariantViolation("criterion holds but no block system over a splitting field: " + "; ".join(reasons))
    why = []
    if not solvable:
        why.append("image of psi is not solvable")
    if math.gcd(n, p - 1) != 1:
        why.append(f"gcd(n, p-1) = {math.gcd(n, p - 1)}")
    return C2Verdict(HYPOTHESES_NOT_MET, psi, True, reason="; ".join(why))


def verify_c2_verdict(rep: MatRep, v: C2Verdict) -> bool:
    if not v.imprimitive:
        return v.block_system is None
    E = extension_field(rep.field, v.extension_degree or 1)
    return verify_block_system(extend_scalars(rep, E), v.block_system, v.psi)


def c2_oracle(rep: MatRep, psi: PermAction, seed: int | random.Random = 0) -> dict[int, bool]:
    """Clifford decomposition over K and over the degree-p extension, ignoring the criterion."""
    N = kernel_of(psi, rep)
    out = {}
    for d in (1, psi.degree):
        E = extension_field(rep.field, d)
        if E.q > EXTENSION_FIELD_CAP:
            continue
        bs = block_system(extend_scalars(rep, E), N, psi, seed)
        out[d] = isinstance(bs, BlockSystem)
    return out


# Omega stabilizer classification ---------------------------------------------------


@dataclass
class StabilizerClassification:
    rho: OmegaElement
    order: int
    case: int
    modulo_scalars: bool | None
    witness: object = None
    excluded: str | None = None
    details: dict = field(default_factory=dict)


def classify_stabilizer_element(
    rho: OmegaElement, rep: MatRep, seed: int | random.Random = 0
) -> StabilizerClassification:
    chi = character_of(rep)
    if omega_act(rho, chi) != chi:
        raise NotInStabilizer("rho does not fix the character")
    m = rho.order()
    if not is_prime(m):
        raise NotPrimeOrder(f"rho has order {m}")
    F = rep.field
    scalars = not rho.sigma.is_trivial
    if not rho.gamma and rho.alpha == 0:
        psi = perm_action_from_character(rho.sigma, rep)
        verdict = check_imprimitivity(rep, psi, seed)
        return StabilizerClassification(rho, m, 1, None, verdict)
    if not rho.gamma:
        d = math.gcd(rho.alpha, F.k)
        w = check_subfield(rep, d, aut_exponent=rho.alpha, sigma=rho.sigma.inverse(), seed=seed)
        if w is None:
            raise InvariantViolation("stabilizer element gives no subfield witness")
        return StabilizerClassification(rho, m, 2, scalars, w)
    if rho.alpha == 0:
        if F.p == 2:
            raise CharacteristicTwo("case 3 of the stabilizer theorem assumes odd characteristic")
        return StabilizerClassification(rho, m, 3, scalars, bilinear_form_for(rep, rho.sigma))
    return StabilizerClassification(rho, m, 4, scalars, hermitian_form_for(rep, rho.sigma))


def verify_classification(rep: MatRep, c: StabilizerClassification) -> bool:
    if c.witness is None:
        return False
    if c.case == 1:
        return isinstance(c.witness, C2Verdict) and c.witness.imprimitive and verify_c2_verdict(rep, c.witness)
    if c.case == 2:
        return verify_subfield_witness(rep, c.witness)
    return verify_form_witness(rep, c.witness) and c.witness.sigma == c.rho.sigma


def stabilizer_oracle(rep: MatRep, w: OmegaElement) -> bool:
    """Does w.D set up an equivalent representation? (Independent of characters.)"""
    gens = list(rep.generators)
    basis = intertwiner_space(gens, w.apply_to_images(rep, gens))
    return bool(basis) and basis[0].is_invertible()
