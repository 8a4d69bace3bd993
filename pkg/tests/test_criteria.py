from __future__ import annotations

import random

import pytest

from aschcheck import constructions as C
from aschcheck.characters import OmegaElement, character_of, omega_stabilizer, prime_order_elements
from aschcheck.criteria import (
    HYPOTHESES_NOT_MET,
    IMPRIMITIVE_EXT,
    IMPRIMITIVE_K,
    NECESSARY_FAILS,
    c2_oracle,
    check_bilinear_form,
    check_hermitian_form,
    check_imprimitivity,
    check_subfield,
    classify_stabilizer_element,
    find_equivalence,
    form_oracle,
    stabilizer_oracle,
    subfield_oracle,
    vanishing_violations,
    verify_c2_verdict,
    verify_classification,
    verify_form_witness,
    verify_subfield_witness,
)
from aschcheck.errors import (
    CharactersDiffer,
    CharacteristicTwo,
    NoOrderTwoAutomorphism,
    NonDivisorDegree,
    NonPrimeDegree,
    NotAbsolutelyIrreducible,
    NotInStabilizer,
    NotPrimeOrder,
    NotTransitive,
)
from aschcheck.finite_field import make_field
from aschcheck.groups import close_group, linear_characters, perm_action, trivial_character
from aschcheck.matrices import Matrix

F2, F3, F4, F5, F7, F9 = (make_field(2), make_field(3), make_field(2, 2), make_field(5), make_field(7), make_field(3, 2))


def M(F, rows):
    return Matrix.from_rows(F, rows)


def sl23():
    return close_group([M(F3, [[1, 1], [0, 1]]), M(F3, [[1, 0], [1, 1]])])


def gl22_in_4():
    return close_group(C.embed_gens(C.gl2(F2), F4))


def d8():
    g, ps = C.dihedral(F5, 4)
    G = close_group(g)
    return G, perm_action(G, ps)


# equivalence


def test_find_equivalence_examples():
    G = sl23()
    x = find_equivalence(G, G)
    assert x.is_scalar()
    u = M(F3, [[1, 1], [0, 1]])
    images = C.conjugate(G.generators, u)
    x = find_equivalence(G, images)
    for A, B in zip(G.generators, images):
        assert x @ A @ x.inverse() == B
    dual = [A.inverse().T.scale(2) for A in G.generators]  # a different character: -chi
    with pytest.raises(CharactersDiffer):
        find_equivalence(G, dual)


def test_find_equivalence_requires_absolute_irreducibility():
    R = close_group([M(F3, [[0, 2], [1, 0]])])
    with pytest.raises(NotAbsolutelyIrreducible):
        find_equivalence(R, R)


# forms


def test_bilinear_examples():
    res = check_bilinear_form(sl23())
    assert [(w.kind, w.y, w.sigma.is_trivial) for w in res.witnesses] == [
        ("alternating", M(F3, [[0, 1], [2, 0]]), True)
    ]
    assert res.exact
    D, _ = d8()
    res = check_bilinear_form(D)
    first = res.witnesses[0]
    assert first.kind == "symmetric" and first.y == M(F5, [[0, 1], [1, 0]]) and first.sigma.is_trivial
    with pytest.raises(CharacteristicTwo):
        check_bilinear_form(gl22_in_4())


def test_bilinear_none_agrees_with_oracle():
    g, _ = C.monomial_cyclic(make_field(43), 7, 2)
    G = close_group(g)
    assert not check_bilinear_form(G)
    assert not any(form_oracle(G, s) for s in linear_characters(G))


def test_hermitian_examples():
    G = gl22_in_4()
    res = check_hermitian_form(G)
    assert [(w.y, w.sigma.is_trivial) for w in res.witnesses] == [(M(F4, [[0, 1], [1, 0]]), True)]
    assert verify_form_witness(G, res.witnesses[0])
    with pytest.raises(NoOrderTwoAutomorphism):
        check_hermitian_form(sl23())
    H = close_group(C.embed_gens(C.sl2(F3), F9))
    found = {w.sigma.gen_values for w in check_hermitian_form(H).witnesses}
    for s in linear_characters(H):
        assert form_oracle(H, s, hermitian=True) == (s.gen_values in found)


def test_form_dichotomy_and_witnesses_verify():
    for gens in (C.sl2(F5), C.gl2(F5), C.dihedral(F7, 3)[0], C.sl2(F7)):
        G = close_group(gens)
        for w in check_bilinear_form(G).witnesses:
            assert verify_form_witness(G, w)
            assert (w.y.T == w.y) != (w.y.T == -w.y)


# subfields


def test_subfield_examples():
    G = gl22_in_4()
    w = check_subfield(G, 1)
    assert w is not None and w.sigma.is_trivial and verify_subfield_witness(G, w)
    H = close_group(C.scalar_twist(G.generators, [2, 2]))
    w = check_subfield(H, 1)
    assert w is not None and not w.sigma.is_trivial
    assert verify_subfield_witness(H, w)
    for X in w.X:
        assert X.in_subfield(1)
    with pytest.raises(NonDivisorDegree):
        check_subfield(sl23(), 1)


def test_subfield_controls_and_oracle():
    G = close_group(C.sl2(F4))
    assert check_subfield(G, 1) is None
    assert subfield_oracle(G, 1) is False
    H = gl22_in_4()
    assert subfield_oracle(H, 1) is True


def test_subfield_round_trip_degree_two_subfield():
    rng = random.Random(4)
    F16 = make_field(2, 4)
    gens = C.subfield_positive(F16, 2, C.embed_gens(C.sl2(F4), F16), rng)
    G = close_group(gens)
    w = check_subfield(G, 2, seed=1)
    assert w is not None and verify_subfield_witness(G, w)
    assert check_subfield(G, 1) is None


# imprimitivity


def test_imprimitivity_dihedral():
    D, psi = d8()
    v = check_imprimitivity(D, psi)
    assert v.status == IMPRIMITIVE_K and v.necessary_holds
    assert sorted(v.block_system.blocks) == [((0, 1),), ((1, 0),)]
    assert verify_c2_verdict(D, v)
    assert c2_oracle(D, psi)[1]


def test_a5_hypotheses_not_met_but_vanishing_holds():
    g, pts = C.a5_degree5(F7)
    G = close_group(g)
    psi = perm_action(G, pts)
    v = check_imprimitivity(G, psi)
    assert v.status == HYPOTHESES_NOT_MET and v.necessary_holds
    assert "not solvable" in v.reason
    assert c2_oracle(G, psi) == {1: False, 5: False}


def test_monomial_and_extension_verdicts():
    for gens, ps in (C.monomial_cyclic(make_field(43), 7, 2), C.monomial_s3(F7, 3)):
        G = close_group(gens)
        v = check_imprimitivity(G, perm_action(G, ps))
        assert v.status == IMPRIMITIVE_K and verify_c2_verdict(G, v)
    g, ps = C.singer_normalizer(F3)
    G = close_group(g)
    v = check_imprimitivity(G, perm_action(G, ps))
    assert v.status == IMPRIMITIVE_EXT and v.extension_degree == 2 and verify_c2_verdict(G, v)


def test_necessary_condition_failure():
    # SL(2,3) with psi through its order-3 quotient: chi(g) = -1 != 0 on elements of order 3
    G = sl23()
    # the unipotent generators map to inverse 3-cycles under G -> G/Q8
    psi = perm_action(G, [(1, 2, 0), (2, 0, 1)])
    assert psi.transitive
    v = check_imprimitivity(G, psi)
    assert v.status == NECESSARY_FAILS and v.violations
    assert vanishing_violations(character_of(G), psi) == list(v.violations)
    assert not any(c2_oracle(G, psi).values())


def test_imprimitivity_errors():
    D, _ = d8()
    with pytest.raises(NonPrimeDegree):
        check_imprimitivity(D, perm_action(D, [(1, 0, 3, 2), (0, 1, 2, 3)]))
    with pytest.raises(NotTransitive):
        check_imprimitivity(D, perm_action(D, [(1, 0, 2), (0, 1, 2)]))


# stabilizer classification


def test_classification_examples():
    G = sl23()
    gamma = OmegaElement(True, 0, trivial_character(G))
    c = classify_stabilizer_element(gamma, G)
    assert c.case == 3 and c.modulo_scalars is False and c.witness.kind == "alternating"
    H = gl22_in_4()
    alpha = OmegaElement(False, 1, trivial_character(H))
    c = classify_stabilizer_element(alpha, H)
    assert c.case == 2 and c.modulo_scalars is False and c.witness.d == 1 and verify_classification(H, c)
    D, _ = d8()
    sign = next(s for s in linear_characters(D) if s.gen_values == (4, 1))
    c = classify_stabilizer_element(OmegaElement(False, 0, sign), D)
    assert c.case == 1 and c.witness.imprimitive and verify_classification(D, c)
    herm = OmegaElement(True, 1, trivial_character(H))
    c = classify_stabilizer_element(herm, H)
    assert c.case == 4 and c.witness.kind == "hermitian"


def test_classification_errors():
    G = sl23()
    with pytest.raises(NotPrimeOrder):
        classify_stabilizer_element(OmegaElement(False, 0, trivial_character(G)), G)
    g, _ = C.monomial_cyclic(make_field(43), 7, 2)
    Mn = close_group(g)
    with pytest.raises(NotInStabilizer):
        classify_stabilizer_element(OmegaElement(True, 0, trivial_character(Mn)), Mn)
    H = gl22_in_4()
    with pytest.raises(CharacteristicTwo):
        classify_stabilizer_element(OmegaElement(True, 0, trivial_character(H)), H)


@pytest.mark.parametrize(
    "gens",
    [C.sl2(F3), C.dihedral(F5, 4)[0], C.embed_gens(C.gl2(F2), F4), C.embed_gens(C.sl2(F3), F9), C.singer_normalizer(F3)[0]],
    ids=["sl2-3", "d8", "gl2-2-in-4", "sl2-3-in-9", "singer-3"],
)
def test_stabilizer_matches_oracle_and_classifies(gens):
    from aschcheck.characters import omega_elements

    G = close_group(gens)
    chi = character_of(G)
    stab = {w.key() for w in omega_stabilizer(chi)}
    for w in omega_elements(G):
        assert stabilizer_oracle(G, w) == (w.key() in stab)
    for rho, _ in prime_order_elements(omega_stabilizer(chi)):
        try:
            c = classify_stabilizer_element(rho, G)
        except CharacteristicTwo:
            continue
        assert verify_classification(G, c)
