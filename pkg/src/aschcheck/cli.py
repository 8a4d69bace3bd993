"""Command line entry point: ``aschcheck analyze | selftest | corpus``.

Exit codes: 0 success, 1 input error, 2 a witness failed re-verification,
3 a criterion disagreed with its oracle.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .corpus import packaged_corpus, write_corpus
from .errors import AschError, InvariantViolation, OrderCapExceeded, ParseError, ValidationError
from .jobs import OracleDisagreement, dumps, normalize_checks, parse_job, run_job

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_ORACLE = 0, 1, 2, 3


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fail(code: int, msg: str) -> int:
    print(f"aschcheck: {msg}", file=sys.stderr)
    return code


def cmd_analyze(args) -> int:
    try:
        text = Path(args.job).read_text()
    except OSError as e:
        return _fail(EXIT_INPUT, f"cannot read {args.job}: {e}")
    try:
        job = parse_job(text)
        if args.checks:
            job.checks = normalize_checks(args.checks)
        if args.seed is not None:
            job.seed = args.seed
        if args.cap is not None:
            job.cap = args.cap
        report = run_job(job, oracle=args.oracle or job.oracle, timing=args.timing)
    except (ParseError, ValidationError, OrderCapExceeded) as e:
        return _fail(EXIT_INPUT, f"{type(e).__name__}: {e}")
    except InvariantViolation as e:
        return _fail(EXIT_INVARIANT, f"invariant violation: {e}")
    except OracleDisagreement as e:
        return _fail(EXIT_ORACLE, f"oracle disagreement: {e}")
    except AschError as e:
        return _fail(EXIT_INPUT, f"{type(e).__name__}: {e}")
    _emit(dumps(report), args.out)
    return EXIT_OK


def selftest_report(seed: int = 0) -> dict:
    reports = []
    for _, text in packaged_corpus():
        job = parse_job(text)
        job.seed = seed
        reports.append(run_job(job, oracle=True))
    return {
        "tool": {"name": "aschcheck", "version": __version__},
        "seed": seed,
        "job_count": len(reports),
        "jobs": reports,
    }


def cmd_selftest(args) -> int:
    try:
        report = selftest_report(args.seed)
    except InvariantViolation as e:
        return _fail(EXIT_INVARIANT, f"invariant violation: {e}")
    except OracleDisagreement as e:
        return _fail(EXIT_ORACLE, f"oracle disagreement: {e}")
    _emit(dumps(report), args.out)
    if args.out:
        print(f"selftest: {report['job_count']} jobs, all oracles agree", file=sys.stderr)
    return EXIT_OK


def cmd_corpus(args) -> int:
    paths = write_corpus(args.out)
    for p in paths:
        print(p)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aschcheck", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"aschcheck {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the checks on one job document")
    a.add_argument("job", help="path to a job JSON file")
    a.add_argument("--checks", help="comma separated subset of c2,c5,c8,c8-bilinear,c8-hermitian,stab,all")
    a.add_argument("--seed", type=int)
    a.add_argument("--cap", type=int, help="group order cap for the closure")
    a.add_argument("--oracle", action="store_true", help="cross-check every verdict by brute force")
    a.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identical output)")
    a.add_argument("--out", help="write the report here instead of stdout")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("selftest", help="run the packaged corpus with oracles")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_selftest)

    c = sub.add_parser("corpus", help="write the packaged corpus job files to a directory")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
