"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import itertools
import random
import time

import pytest

from aschcheck import constructions as C
from aschcheck.characters import character_of, omega_act, omega_elements, omega_stabilizer, prime_order_elements
from aschcheck.cli import selftest_report
from aschcheck.clifford import absolute_irreducibility, homogeneous_components
from aschcheck.corpus import packaged_corpus
from aschcheck.criteria import (
    HYPOTHESES_NOT_MET,
    IMPRIMITIVE_K,
    check_bilinear_form,
    check_hermitian_form,
    check_imprimitivity,
    check_subfield,
    classify_stabilizer_element,
    find_equivalence,
    form_oracle,
    subfield_sigmas,
    vanishing_violations,
    verify_c2_verdict,
    verify_classification,
    verify_form_witness,
    verify_subfield_witness,
)
from aschcheck.errors import CharacteristicTwo, NoOrderTwoAutomorphism, OrderCapExceeded
from aschcheck.finite_field import GaloisAut, make_field
from aschcheck.groups import close_group, kernel_of, linear_characters, perm_action
from aschcheck.jobs import dumps, parse_job
from aschcheck.matrices import HILBERT90_RETRIES, hilbert90_matrix, random_invertible

from oracles import naive_add, naive_mul


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} {detail}")

    return emit


def _corpus_groups(entries, max_order):
    out = []
    for label, gens in entries:
        try:
            G = close_group(gens, max_order)
        except OrderCapExceeded:
            continue
        if absolute_irreducibility(G):
            out.append((label, G))
    return out


def test_criterion_1_form_oracle_equivalence(report):
    t0 = time.perf_counter()
    groups = _corpus_groups(C.form_corpus(0), C.FORM_CORPUS_MAX_ORDER)
    checked = disagreements = bad_witness = 0
    for label, G in groups:
        for hermitian in (False, True):
            try:
                res = (check_hermitian_form if hermitian else check_bilinear_form)(G)
            except (CharacteristicTwo, NoOrderTwoAutomorphism):
                continue
            found = {w.sigma.gen_values for w in res.witnesses}
            for s in linear_characters(G):
                checked += 1
                if form_oracle(G, s, hermitian) != (s.gen_values in found):
                    disagreements += 1
            bad_witness += sum(not verify_form_witness(G, w) for w in res.witnesses)
    elapsed = time.perf_counter() - t0
    degrees = {G.degree for _, G in groups}
    fields = {G.field.q for _, G in groups}
    ok = (
        len(groups) >= 50
        and degrees <= {2, 3, 4}
        and fields <= {2, 3, 4, 5, 7, 9, 25}
        and disagreements == 0
        and bad_witness == 0
        and elapsed < 60
    )
    report(1, ok, f"groups={len(groups)} sigma-checks={checked} disagreements={disagreements} bad-witnesses={bad_witness} {elapsed:.1f}s")
    assert ok


def test_criterion_2_subfield_construct_then_verify(report):
    t0 = time.perf_counter()
    rng = random.Random(2)
    positives = verified = 0
    for label, d, k, base in C.subfield_bases():
        K = make_field(base[0].field.p, k)
        for _ in range(2):
            G = close_group(C.subfield_positive(K, d, C.embed_gens(base, K), rng))
            w = check_subfield(G, d, seed=rng.randrange(2**32))
            positives += 1
            if w is not None and verify_subfield_witness(G, w) and all(X.in_subfield(d) for X in w.X):
                verified += 1
    controls = control_none = 0
    for label, d, gens in C.subfield_controls(0):
        G = close_group(gens)
        controls += 1
        if not subfield_sigmas(G, d) and check_subfield(G, d) is None:
            control_none += 1
    elapsed = time.perf_counter() - t0
    ok = positives >= 20 and verified == positives and controls >= 20 and control_none == controls and elapsed < 60
    report(2, ok, f"positives={verified}/{positives} controls-none={control_none}/{controls} {elapsed:.1f}s")
    assert ok


def test_criterion_3_imprimitivity_pipeline(report):
    t0 = time.perf_counter()
    instances = C.dihedral_instances()
    good = 0
    for F, m in instances:
        gens, ps = C.dihedral(F, m)
        G = close_group(gens)
        psi = perm_action(G, ps)
        v = check_imprimitivity(G, psi)
        if (
            v.status == IMPRIMITIVE_K
            and verify_c2_verdict(G, v)
            and v.necessary_holds
            and not vanishing_violations(character_of(G), psi)
        ):
            good += 1
    g, pts = C.a5_degree5(make_field(7))
    A5 = close_group(g)
    psi = perm_action(A5, pts)
    v = check_imprimitivity(A5, psi)
    comps = homogeneous_components(A5, kernel_of(psi, A5))
    a5_ok = A5.order == 60 and v.status == HYPOTHESES_NOT_MET and len(comps) == 1
    elapsed = time.perf_counter() - t0
    ok = len(instances) >= 10 and good == len(instances) and a5_ok and elapsed < 60
    report(3, ok, f"dihedral={good}/{len(instances)} a5={v.status} components={len(comps)} {elapsed:.1f}s")
    assert ok


def test_criterion_4_stabilizer_all_cases(report):
    t0 = time.perf_counter()
    groups = [("corpus:" + name, close_group(parse_job(text).generators)) for name, text in packaged_corpus()]
    groups += _corpus_groups(C.form_corpus(0), C.FORM_CORPUS_MAX_ORDER)
    cases: set[int] = set()
    total = verified = excluded = 0
    for label, G in groups:
        if not absolute_irreducibility(G):
            continue
        for rho, _ in prime_order_elements(omega_stabilizer(character_of(G), check_irreducible=False)):
            total += 1
            try:
                c = classify_stabilizer_element(rho, G)
            except CharacteristicTwo:
                excluded += 1
                continue
            cases.add(c.case)
            verified += verify_classification(G, c)
    elapsed = time.perf_counter() - t0
    classified = total - excluded
    ok = cases == {1, 2, 3, 4} and verified == classified and classified > 0 and elapsed < 120
    report(4, ok, f"cases={sorted(cases)} verified={verified}/{classified} char2-excluded={excluded} {elapsed:.1f}s")
    assert ok


def test_criterion_5_hilbert90_round_trips(report):
    t0 = time.perf_counter()
    rng = random.Random(5)
    scalar_ok = scalar_total = 0
    for p in (2, 3, 5):
        F = make_field(p, 2)
        for _ in range(100):
            mu0 = rng.randrange(1, F.q)
            lam = F.div(F.frob(mu0, 1), mu0)
            mu = F.hilbert90(lam, 1)
            scalar_total += 1
            scalar_ok += mu != 0 and F.div(F.frob(mu, 1), mu) == lam
    matrix_ok = matrix_total = 0
    fields = [make_field(2, 2), make_field(3, 2), make_field(5, 2), make_field(2, 3)]
    for n in (2, 3):
        for i in range(100):
            F = fields[i % len(fields)]
            aut = GaloisAut(F, 1)
            z0 = random_invertible(F, n, rng)
            y = z0.frob(aut).inverse() @ z0
            z = hilbert90_matrix(y, aut, rng.randrange(2**32), HILBERT90_RETRIES)
            matrix_total += 1
            matrix_ok += z.is_invertible() and z.frob(aut).inverse() @ z == y
    elapsed = time.perf_counter() - t0
    ok = scalar_ok == scalar_total == 300 and matrix_ok == matrix_total == 200 and elapsed < 10
    report(5, ok, f"scalar={scalar_ok}/{scalar_total} matrix={matrix_ok}/{matrix_total} retries<={HILBERT90_RETRIES} {elapsed:.1f}s")
    assert ok


def test_criterion_6_equivalence_finder(report):
    t0 = time.perf_counter()
    rng = random.Random(6)
    bases = [C.sl2(make_field(q)) for q in (3, 5, 7)]
    bases += [C.sl2(make_field(2, 2)), C.gl3_2(), C.dihedral(make_field(5), 4)[0]]
    reps = [close_group(g) for g in bases]
    good = 0
    for i in range(50):
        G = reps[i % len(reps)]
        images, _ = C.random_conjugate(G.generators, rng)
        x = find_equivalence(G, images)
        good += all(x @ A @ x.inverse() == B for A, B in zip(G.generators, images))
    elapsed = time.perf_counter() - t0
    ok = good == 50 and elapsed < 10
    report(6, ok, f"pairs={good}/50 {elapsed:.1f}s")
    assert ok


def test_criterion_7_algebraic_substrate(report):
    t0 = time.perf_counter()
    axiom_fields = [make_field(p, k) for p, k in ((2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4))]
    axiom_failures = 0
    for F in axiom_fields:
        q = F.q
        els = range(q)
        for a in els:
            axiom_failures += F.add(a, 0) != a or F.mul(a, 1) != a or F.add(a, F.neg(a)) != 0
            if a:
                axiom_failures += F.mul(a, F.inv(a)) != 1
            for b in els:
                axiom_failures += F.add(a, b) != F.add(b, a) or F.mul(a, b) != F.mul(b, a)
                axiom_failures += F.add(a, b) != naive_add(a, b, F.p, F.k)
                axiom_failures += F.mul(a, b) != naive_mul(a, b, F.p, F.modulus)
                ab_sum, ab = F.add(a, b), F.mul(a, b)
                for c in els:
                    axiom_failures += F.add(ab_sum, c) != F.add(a, F.add(b, c))
                    axiom_failures += F.mul(ab, c) != F.mul(a, F.mul(b, c))
                    axiom_failures += F.mul(a, F.add(b, c)) != F.add(ab, F.mul(a, c))
    norm_fields = [make_field(p, k) for p, k in ((2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (7, 2), (3, 3), (3, 4))]
    norm_failures = 0
    for F in norm_fields:
        for d in (d for d in range(1, F.k) if F.k % d == 0):
            nrm = [F.norm(a, d) for a in range(F.q)]
            for a in range(F.q):
                norm_failures += not F.in_subfield(nrm[a], d)
                for b in range(F.q):
                    norm_failures += nrm[F.mul(a, b)] != F.mul(nrm[a], nrm[b])
    rng = random.Random(7)
    F2, F4, F5, F9, F25 = make_field(2), make_field(2, 2), make_field(5), make_field(3, 2), make_field(5, 2)
    omegas = []
    for gens in (C.dihedral(F5, 4)[0], C.embed_gens(C.gl2(F2), F4), C.embed_gens(C.sl2(make_field(3)), F9), C.dihedral(F25, 4)[0]):
        G = close_group(gens)
        omegas.append((character_of(G), omega_elements(G)))
    assoc_failures = 0
    for i in range(1000):
        chi, omega = omegas[i % len(omegas)]
        a, b, c = (rng.choice(omega) for _ in range(3))
        assoc_failures += ((a * b) * c).key() != (a * (b * c)).key()
        assoc_failures += omega_act(a * b, chi) != omega_act(a, omega_act(b, chi))
    elapsed = time.perf_counter() - t0
    ok = axiom_failures == 0 and norm_failures == 0 and assoc_failures == 0 and elapsed < 10
    report(
        7,
        ok,
        f"field-axiom-failures={axiom_failures} norm-failures={norm_failures} omega-failures={assoc_failures}/1000 {elapsed:.1f}s",
    )
    assert ok


def test_criterion_8_selftest_is_byte_identical(report):
    first = dumps(selftest_report(0))
    second = dumps(selftest_report(0))
    ok = first == second and len(first) > 0
    report(8, ok, f"bytes={len(first)} identical={first == second}")
    assert ok
