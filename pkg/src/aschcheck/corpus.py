"""The packaged job corpus used by ``aschcheck selftest``.

The JSON files under ``corpus/`` are generated by :func:`build_corpus`; the
tests check that the packaged copies are current.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from . import constructions as C
from .finite_field import make_field
from .jobs import dumps, job_document
from .matrices import Matrix


def build_corpus() -> list[dict]:
    F2, F3, F4, F5, F7, F9 = (make_field(2), make_field(3), make_field(2, 2), make_field(5), make_field(7), make_field(3, 2))
    docs = []

    docs.append(job_document("sl2-3-gf3", C.sl2(F3), description="SL(2,3): alternating form, prime field"))

    d8, sign = C.dihedral(F5, 4)
    docs.append(job_document("dihedral8-gf5-sign", d8, sign, description="D8 with the sign block action"))

    gl22 = C.embed_gens(C.gl2(F2), F4)
    docs.append(job_document("gl2-2-in-gf4", gl22, description="GL(2,2) inside GL(2,4): subfield and Hermitian"))
    docs.append(
        job_document(
            "omega-gl2-2-in-gf4", C.scalar_twist(gl22, [2, 2]), description="GL(2,2) generators times a cube root of unity"
        )
    )

    a5, nat = C.a5_degree5(F7)
    docs.append(
        job_document(
            "a5-degree5-gf7", a5, nat, checks=("c2", "c8-bilinear", "stabilizer"), description="A5 in degree 5, natural action on 5 points"
        )
    )

    mono, cyc = C.monomial_cyclic(make_field(43), 7, 2)
    docs.append(job_document("monomial-c7c3-gf43", mono, cyc, checks=("c2", "c8-bilinear", "stabilizer"), description="C7 x| C3 monomial group"))

    mono8, cyc8 = C.monomial_cyclic(make_field(2, 3), 7, 2)
    docs.append(job_document("monomial-c7c3-gf8", mono8, cyc8, description="C7 x| C3 monomial group in characteristic 2"))

    s3, s3psi = C.monomial_s3(F7, 3)
    docs.append(job_document("monomial-s3-gf7", s3, s3psi, description="monomial group with block image S3"))

    sing, sing_psi = C.singer_normalizer(F3)
    docs.append(job_document("singer-normalizer-gf3", sing, sing_psi, description="blocks only over GF(9)"))

    docs.append(job_document("sl2-3-in-gf9", C.embed_gens(C.sl2(F3), F9), description="SL(2,3) with scalars extended to GF(9)"))

    u = Matrix.from_rows(F3, [[1, 1], [0, 1]])
    docs.append(job_document("sl2-3-conjugated-gf3", C.conjugate(C.sl2(F3), u), description="SL(2,3) conjugated by a transvection"))

    docs.append(job_document("gl3-2", C.gl3_2(), description="GL(3,2) natural module"))
    docs.append(job_document("sl2-4", C.sl2(F4), description="SL(2,4): no subfield structure"))
    docs.append(job_document("sl2-5-gf5", C.sl2(F5), description="SL(2,5): alternating form"))
    docs.append(job_document("gl2-5-gf5", C.gl2(F5), description="GL(2,5): form only modulo scalars"))
    docs.append(
        job_document(
            "sl2-3-tensor-sl2-3", C.kronecker_gens(C.sl2(F3), C.sl2(F3)), checks=("c8-bilinear", "stabilizer"), description="tensor square of SL(2,3)"
        )
    )
    d14, sign14 = C.dihedral(F7, 3)
    docs.append(job_document("dihedral6-gf7-sign", d14, sign14, description="S3 as a dihedral group"))
    d10, sign10 = C.dihedral(make_field(11), 5)
    docs.append(job_document("dihedral10-gf11-sign", d10, sign10, description="D10 over GF(11)"))
    return docs


def corpus_files() -> dict[str, str]:
    return {doc["name"] + ".json": dumps(doc) for doc in build_corpus()}


def write_corpus(out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for fname, text in corpus_files().items():
        path = out / fname
        path.write_text(text)
        paths.append(path)
    return paths


def packaged_corpus() -> list[tuple[str, str]]:
    """(file name, text) for every packaged job, sorted by name."""
    root = resources.files("aschcheck") / "corpus"
    items = [(p.name, p.read_text()) for p in root.iterdir() if p.name.endswith(".json")]
    return sorted(items)


def load_packaged(name: str) -> dict:
    for fname, text in packaged_corpus():
        if fname == name or fname == name + ".json":
            return json.loads(text)
    raise KeyError(name)
