"""Job documents in, JSON reports out.

A job document is a JSON object::

    {
      "name": "sl2-3",
      "field": {"p": 3, "k": 1, "modulus": [2, 1]},      # k, modulus optional
      "degree": 2,                                        # optional, checked if given
      "generators": [[[[1], [1]], [[0], [1]]], ...],      # rows of coefficient arrays
      "psi": ["(1,2)", [1, 2]],                           # optional, cycles or 1-based images
      "checks": ["c8-bilinear", "c8-hermitian", "c5", "c2", "stabilizer"],  # or "all"
      "seed": 0,
      "cap": 100000,
      "oracle": false
    }

Field elements are coefficient arrays, constant term first.  A bare integer
``c`` is accepted as shorthand for the prime-field element ``c mod p``.

Reports are plain dicts with only JSON types, serialized with sorted keys so
that identical inputs give identical bytes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .characters import Character, OmegaElement, character_of, omega_elements, omega_stabilizer, prime_order_elements
from .clifford import BlockSystem, absolute_irreducibility
from .criteria import (
    C2Verdict,
    FormResult,
    FormWitness,
    StabilizerClassification,
    SubfieldWitness,
    c2_oracle,
    check_bilinear_form,
    check_hermitian_form,
    check_imprimitivity,
    check_subfield,
    classify_stabilizer_element,
    form_oracle,
    stabilizer_oracle,
    subfield_oracle,
    subfield_sigmas,
    verify_c2_verdict,
    verify_classification,
    verify_form_witness,
    verify_subfield_witness,
)
from .errors import (
    AschError,
    CharacteristicTwo,
    InvariantViolation,
    NoOrderTwoAutomorphism,
    NonDivisorDegree,
    NonPrimeDegree,
    ParseError,
    ValidationError,
)
from .finite_field import GF, is_prime, make_field
from .groups import DEFAULT_ORDER_CAP, LinearCharacter, MatRep, PermAction, close_group, linear_characters, perm_action
from .matrices import Matrix

SCHEMA_VERSION = 1
ALL_CHECKS = ("c8-bilinear", "c8-hermitian", "c5", "c2", "stabilizer")
CHECK_ALIASES = {
    "all": ALL_CHECKS,
    "c8": ("c8-bilinear", "c8-hermitian"),
    "stab": ("stabilizer",),
    "c2": ("c2",),
    "c5": ("c5",),
    "c8-bilinear": ("c8-bilinear",),
    "c8-hermitian": ("c8-hermitian",),
    "stabilizer": ("stabilizer",),
}
# outcomes that mean "this question does not apply to this input"
NOT_APPLICABLE = (CharacteristicTwo, NoOrderTwoAutomorphism, NonDivisorDegree)


class OracleDisagreement(AschError):
    """A criterion verdict differs from the independent brute-force answer."""


@dataclass
class JobSpec:
    name: str
    field: GF
    degree: int
    generators: list[Matrix]
    psi: list[tuple[int, ...]] | None = None
    checks: tuple[str, ...] = ALL_CHECKS
    seed: int = 0
    cap: int = DEFAULT_ORDER_CAP
    oracle: bool = False
    extra: dict = field(default_factory=dict)


# parsing -----------------------------------------------------------------------


def normalize_checks(raw) -> tuple[str, ...]:
    if isinstance(raw, str):
        raw = [s for s in raw.split(",") if s.strip()]
    out: list[str] = []
    for name in raw:
        key = str(name).strip().lower()
        if key not in CHECK_ALIASES:
            raise ValidationError(f"unknown check {name!r}; expected one of {sorted(CHECK_ALIASES)}")
        for c in CHECK_ALIASES[key]:
            if c not in out:
                out.append(c)
    return tuple(c for c in ALL_CHECKS if c in out)


def _int(doc: dict, key: str, where: str, default=None) -> int:
    v = doc.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}.{key}: expected an integer, got {v!r}")
    return v


def parse_field(doc) -> GF:
    if not isinstance(doc, dict):
        raise ParseError("field: expected an object with p, k and optional modulus")
    p = _int(doc, "p", "field")
    k = _int(doc, "k", "field", 1)
    modulus = doc.get("modulus")
    if modulus is not None and (not isinstance(modulus, list) or not all(isinstance(c, int) for c in modulus)):
        raise ParseError("field.modulus: expected a list of integers, constant term first")
    try:
        return make_field(p, k, modulus)
    except AschError as e:
        raise ValidationError(f"field: {e}") from e


def parse_element(F: GF, raw, where: str) -> int:
    if isinstance(raw, bool):
        raise ParseError(f"{where}: expected a coefficient array, got {raw!r}")
    if isinstance(raw, int):
        return raw % F.p
    if isinstance(raw, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in raw):
        if len(raw) > F.k:
            raise ValidationError(f"{where}: {len(raw)} coefficients for a degree-{F.k} field")
        return F.from_coeffs([c % F.p for c in raw])
    raise ParseError(f"{where}: expected a coefficient array, got {raw!r}")


def parse_matrix(F: GF, raw, where: str, n: int | None = None) -> Matrix:
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise ParseError(f"{where}: expected a non-empty list of rows")
    rows = [[parse_element(F, x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(raw)]
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ValidationError(f"{where}: matrix is not square")
    if n is not None and size != n:
        raise ValidationError(f"{where}: expected a {n}x{n} matrix, got {size}x{size}")
    M = Matrix.from_rows(F, rows)
    if not M.is_invertible():
        raise ValidationError(f"{where}: generator is singular")
    return M


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(raw, degree: int | None, where: str) -> tuple[int, ...]:
    """1-based image list ``[2, 1, 3]`` or cycle string ``"(1,2)(3,4)"``; returns 0-based images."""
    if isinstance(raw, list):
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in raw):
            raise ParseError(f"{where}: image list must contain integers")
        img = tuple(x - 1 for x in raw)
        if sorted(img) != list(range(len(img))):
            raise ValidationError(f"{where}: {raw} is not a permutation of 1..{len(raw)}")
        if degree is not None and len(img) != degree:
            raise ValidationError(f"{where}: expected {degree} points, got {len(img)}")
        return img
    if isinstance(raw, str):
        if degree is None:
            raise ValidationError(f"{where}: cycle notation needs a known degree (give psi_degree)")
        text = raw.replace(" ", "")
        if text in ("", "()", "1", "id"):
            return tuple(range(degree))
        if _CYCLE.sub("", text):
            raise ParseError(f"{where}: cannot parse cycle notation {raw!r}")
        img = list(range(degree))
        seen: set[int] = set()
        for body in _CYCLE.findall(text):
            try:
                pts = [int(x) - 1 for x in body.split(",") if x]
            except ValueError as e:
                raise ParseError(f"{where}: bad point in {raw!r}") from e
            for a in pts:
                if not 0 <= a < degree or a in seen:
                    raise ValidationError(f"{where}: bad or repeated point {a + 1} in {raw!r}")
                seen.add(a)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return tuple(img)
    raise ParseError(f"{where}: expected an image list or a cycle string, got {raw!r}")


def parse_job(text: str | dict) -> JobSpec:
    if isinstance(text, dict):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise ParseError("job document must be a JSON object")
    F = parse_field(doc.get("field"))
    gens_raw = doc.get("generators")
    if not isinstance(gens_raw, list) or not gens_raw:
        raise ParseError("generators: expected a non-empty list of matrices")
    n = doc.get("degree")
    if n is not None:
        n = _int(doc, "degree", "job")
    gens = []
    for j, g in enumerate(gens_raw):
        M = parse_matrix(F, g, f"generators[{j}]", n)
        n = M.nrows
        gens.append(M)
    psi = None
    if doc.get("psi") is not None:
        raw_psi = doc["psi"]
        if not isinstance(raw_psi, list) or len(raw_psi) != len(gens):
            raise ValidationError(f"psi: expected one permutation per generator ({len(gens)})")
        k = doc.get("psi_degree")
        if k is None:
            k = next((len(x) for x in raw_psi if isinstance(x, list)), None)
        psi = [parse_permutation(x, k, f"psi[{j}]") for j, x in enumerate(raw_psi)]
        if not is_prime(len(psi[0])):
            raise ValidationError(f"psi: {NonPrimeDegree.__name__}: block count {len(psi[0])} is not prime")
    checks = normalize_checks(doc.get("checks", "all"))
    seed = _int(doc, "seed", "job", 0)
    cap = _int(doc, "cap", "job", DEFAULT_ORDER_CAP)
    oracle = doc.get("oracle", False)
    if not isinstance(oracle, bool):
        raise ParseError("oracle: expected true or false")
    name = doc.get("name", "job")
    if not isinstance(name, str):
        raise ParseError("name: expected a string")
    return JobSpec(name, F, n, gens, psi, checks, seed, cap, oracle)


# serialization -------------------------------------------------------------------


def element_json(F: GF, a: int) -> list[int]:
    return F.coeffs(a)


def matrix_json(M: Matrix) -> list:
    F = M.field
    return [[element_json(F, x) for x in row] for row in M.rows()]


def sigma_json(s: LinearCharacter) -> list:
    return [element_json(s.field, v) for v in s.gen_values]


def word_json(word) -> list[int]:
    return [j + 1 for j in word]


def omega_json(w: OmegaElement) -> dict:
    return {"gamma": int(w.gamma), "alpha_exp": w.alpha, "sigma_values_on_generators": sigma_json(w.sigma)}


def character_json(chi: Character) -> list[dict]:
    rep = chi.rep
    F = rep.field
    cls = rep.classes
    return [
        {"class_rep_word": word_json(rep.words[r]), "class_size": size, "value": element_json(F, v)}
        for r, size, v in zip(cls.representatives, cls.sizes, chi.values)
    ]


def block_system_json(bs: BlockSystem) -> dict:
    F = bs.field
    return {
        "field": field_json(F),
        "blocks": [[[element_json(F, x) for x in v] for v in S] for S in bs.blocks],
        "generator_permutations": [[i + 1 for i in perm] for perm in bs.gen_perms],
        "multiplicity": bs.multiplicity,
    }


def field_json(F: GF) -> dict:
    return {"p": F.p, "k": F.k, "modulus": list(F.modulus)}


def form_witness_json(w: FormWitness) -> dict:
    return {"kind": w.kind, "sigma": sigma_json(w.sigma), "sigma_trivial": w.sigma.is_trivial, "y": matrix_json(w.y)}


def subfield_witness_json(w: SubfieldWitness) -> dict:
    F = w.z.field
    return {
        "d": w.d,
        "alpha_exp": w.aut_exponent,
        "sigma": sigma_json(w.sigma),
        "z": matrix_json(w.z),
        "lambdas": [element_json(F, x) for x in w.lambdas],
        "X": [matrix_json(x) for x in w.X],
    }


def c2_json(v: C2Verdict) -> dict:
    out: dict[str, Any] = {
        "status": v.status,
        "necessary_condition_holds": v.necessary_holds,
        "violating_classes": list(v.violations),
        "psi": [[i + 1 for i in perm] for perm in v.psi.gen_images],
        "reason": v.reason,
        "extension_degree": v.extension_degree,
        "block_system": block_system_json(v.block_system) if v.block_system is not None else None,
    }
    return out


def error_json(e: Exception) -> dict:
    return {"type": type(e).__name__, "message": str(e)}


# running ---------------------------------------------------------------------------


def _run_forms(rep: MatRep, hermitian: bool, oracle: bool) -> dict:
    res: FormResult = check_hermitian_form(rep) if hermitian else check_bilinear_form(rep)
    for w in res.witnesses:
        if not verify_form_witness(rep, w):
            raise InvariantViolation("form witness failed re-verification before emission")
    out: dict[str, Any] = {
        "status": "found" if res else "none",
        "exact": res.exact,
        "witnesses": [form_witness_json(w) for w in res.witnesses],
    }
    if oracle:
        found = {w.sigma.gen_values for w in res.witnesses}
        for s in linear_characters(rep):
            if form_oracle(rep, s, hermitian) != (s.gen_values in found):
                raise OracleDisagreement(f"form criterion and direct solve disagree at sigma = {sigma_json(s)}")
        out["oracle_agrees"] = True
    return out


def _run_c5(rep: MatRep, seed: int, oracle: bool) -> dict:
    k = rep.field.k
    degrees = [d for d in range(1, k) if k % d == 0]
    if not degrees:
        return {"status": "not-applicable", "reason": "prime field has no proper subfield", "subfields": []}
    rows = []
    for d in degrees:
        sigmas = subfield_sigmas(rep, d)
        w = check_subfield(rep, d, seed=seed)
        if w is not None and not verify_subfield_witness(rep, w):
            raise InvariantViolation("subfield witness failed re-verification before emission")
        row: dict[str, Any] = {
            "d": d,
            "status": "found" if w is not None else "none",
            "sigmas": [sigma_json(s) for s in sigmas],
            "witness": subfield_witness_json(w) if w is not None else None,
        }
        if oracle:
            o = subfield_oracle(rep, d)
            if o is not None and o != (w is not None):
                raise OracleDisagreement(f"subfield criterion and conjugator search disagree for d = {d}")
            row["oracle"] = "inconclusive" if o is None else o
            row["oracle_agrees"] = True
        rows.append(row)
    status = "found" if any(r["status"] == "found" for r in rows) else "none"
    return {"status": status, "subfields": rows}


def _run_c2(rep: MatRep, psi_images, seed: int, oracle: bool) -> dict:
    if psi_images is None:
        return {"status": "skipped", "reason": "no psi given"}
    psi = perm_action(rep, psi_images)
    v = check_imprimitivity(rep, psi, seed)
    if not verify_c2_verdict(rep, v):
        raise InvariantViolation("block system failed re-verification before emission")
    out = c2_json(v)
    if oracle:
        o = c2_oracle(rep, psi, seed)
        over_k = o.get(1, False)
        over_ext = any(o.values())
        if v.status == "imprimitive-over-K" and not over_k:
            raise OracleDisagreement("criterion claims blocks over K but the Clifford decomposition finds none")
        if v.status == "imprimitive-over-extension" and (over_k or not over_ext):
            raise OracleDisagreement("extension verdict does not match the Clifford decomposition")
        if v.status == "necessary-condition-fails" and over_ext:
            raise OracleDisagreement("vanishing condition fails yet a block system exists")
        out["oracle"] = {f"degree_{d}": ok for d, ok in sorted(o.items())}
        out["oracle_agrees"] = True
    return out


def _run_stabilizer(rep: MatRep, chi: Character, seed: int, oracle: bool) -> dict:
    stab = omega_stabilizer(chi, check_irreducible=False)
    classified = []
    for rho, m in prime_order_elements(stab):
        entry: dict[str, Any] = {"rho": omega_json(rho), "order": m}
        try:
            c = classify_stabilizer_element(rho, rep, seed)
        except CharacteristicTwo as e:
            entry.update({"case": 3, "excluded": "characteristic-2", "reason": str(e), "witness": None})
            classified.append(entry)
            continue
        if not verify_classification(rep, c):
            raise InvariantViolation("stabilizer witness failed re-verification before emission")
        entry.update({"case": c.case, "modulo_scalars": c.modulo_scalars, "witness": _classification_witness(c)})
        classified.append(entry)
    out: dict[str, Any] = {
        "order": len(stab),
        "elements": [omega_json(w) for w in stab],
        "prime_order": classified,
    }
    if oracle:
        keys = {w.key() for w in stab}
        for w in omega_elements(rep):
            if stabilizer_oracle(rep, w) != (w.key() in keys):
                raise OracleDisagreement(f"stabilizer scan and equivalence test disagree at {omega_json(w)}")
        out["oracle_agrees"] = True
    return out


def _classification_witness(c: StabilizerClassification) -> dict:
    w = c.witness
    if isinstance(w, C2Verdict):
        return {"type": "block-system", **c2_json(w)}
    if isinstance(w, SubfieldWitness):
        return {"type": "subfield", **subfield_witness_json(w)}
    return {"type": "form", **form_witness_json(w)}


def run_job(job: JobSpec, oracle: bool | None = None, timing: bool = False) -> dict:
    """Close the group and run every requested check; the report is JSON-ready."""
    import time

    oracle = job.oracle if oracle is None else oracle
    t0 = time.perf_counter()
    rep = close_group(job.generators, job.cap)
    chi = character_of(rep)
    report: dict[str, Any] = {
        "tool": {"name": "aschcheck", "version": __version__, "schema_version": SCHEMA_VERSION},
        "name": job.name,
        "seed": job.seed,
        "oracle": oracle,
        "field": field_json(job.field),
        "degree": job.degree,
        "group_order": rep.order,
        "class_count": len(rep.classes),
        "character": character_json(chi),
        "linear_character_count": len(linear_characters(rep)),
        "absolutely_irreducible": absolute_irreducibility(rep),
    }
    checks: dict[str, Any] = {}
    timings: dict[str, float] = {}
    for name in job.checks:
        t = time.perf_counter()
        try:
            if not report["absolutely_irreducible"]:
                checks[name] = {"status": "error", "error": {"type": "NotAbsolutelyIrreducible", "message": "commutant is larger than the scalars"}}
                continue
            if name == "c8-bilinear":
                checks[name] = _run_forms(rep, False, oracle)
            elif name == "c8-hermitian":
                checks[name] = _run_forms(rep, True, oracle)
            elif name == "c5":
                checks[name] = _run_c5(rep, job.seed, oracle)
            elif name == "c2":
                checks[name] = _run_c2(rep, job.psi, job.seed, oracle)
            elif name == "stabilizer":
                checks[name] = _run_stabilizer(rep, chi, job.seed, oracle)
        except (InvariantViolation, OracleDisagreement):
            raise
        except NOT_APPLICABLE as e:
            checks[name] = {"status": "not-applicable", "reason": str(e), "error": error_json(e)}
        except AschError as e:
            checks[name] = {"status": "error", "error": error_json(e)}
        timings[name] = round(time.perf_counter() - t, 6)
    report["checks"] = checks
    if timing:
        report["timing_seconds"] = {"total": round(time.perf_counter() - t0, 6), **timings}
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# job documents from matrices -------------------------------------------------------


def job_document(
    name: str,
    generators: list[Matrix],
    psi: list[tuple[int, ...]] | None = None,
    checks=ALL_CHECKS,
    seed: int = 0,
    description: str = "",
) -> dict:
    F = generators[0].field
    doc: dict[str, Any] = {
        "name": name,
        "field": field_json(F),
        "degree": generators[0].nrows,
        "generators": [matrix_json(g) for g in generators],
        "checks": list(checks),
        "seed": seed,
    }
    if description:
        doc["description"] = description
    if psi is not None:
        doc["psi"] = [[i + 1 for i in perm] for perm in psi]
    return doc
