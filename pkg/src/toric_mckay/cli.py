"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import random
import sys

from .census import CensusError
from .corpus import cyclic_corpus, full_corpus, sl_corpus, two_generator_corpus
from .groups import DEFAULT_GROUP_CAP, GroupSpecError
from .report import DEFAULT_CUTOFF, JobSpec, dumps, run_pipeline, run_report
from .sod import LocalCaseOneModel, random_case_one_model, verify_case1_sod
from .terminalize import STRATEGIES, MMPError, TerminalizationError
from .verify import FAULTS, format_table, verify_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

CORPORA = {
    "cyclic": lambda: cyclic_corpus(),
    "two-generator": lambda: two_generator_corpus(),
    "sl": lambda: sl_corpus(),
    "all": lambda: full_corpus(),
}


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _orders(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return out


def _ids(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated criterion ids, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toric-mckay",
                                description="Terminalizations and semi-orthogonal censuses of C^n/G.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, group=True):
        if group:
            sp.add_argument("group", nargs="?", help='group spec, e.g. "3; 1/4,1/4,1/4" '
                            '(generators separated by newlines or "|")')
        sp.add_argument("--json", metavar="PATH", help="write the JSON document to PATH")
        sp.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF,
                        help=f"Hom grading cutoff (default {DEFAULT_CUTOFF})")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
        sp.add_argument("--group-cap", type=int, default=DEFAULT_GROUP_CAP,
                        help=f"maximum group order (default {DEFAULT_GROUP_CAP})")
        sp.add_argument("--mmp-cap", type=int, default=None,
                        help="MMP iteration cap (default 10 x number of candidate rays)")
        sp.add_argument("--strategy", choices=STRATEGIES, default="pulling")

    for name, text in (("analyze", "full report: group, lattice, terminalization, census"),
                       ("terminalize", "maximal terminalization and its MMP steps"),
                       ("census", "semi-orthogonal census (or --corpus table)")):
        sp = sub.add_parser(name, help=text)
        common(sp)
        if name == "census":
            sp.add_argument("--corpus", choices=sorted(CORPORA),
                            help="run the regression corpus and print a pass/fail table")

    sp = sub.add_parser("sod-verify", help="case-1 local certificate")
    common(sp, group=False)
    sp.add_argument("r", nargs="?", type=_orders, help="source orders, e.g. 5,2")
    sp.add_argument("s", nargs="?", type=_orders, help="target orders, e.g. 2,2")
    sp.add_argument("--random", type=int, default=0, metavar="N",
                    help="verify N random models instead (uses --seed)")
    sp.add_argument("--radius", type=int, default=2, help="twist grid radius (default 2)")

    sp = sub.add_parser("verify", help="run the acceptance criteria")
    common(sp, group=False)
    sp.add_argument("--only", type=_ids, default=None, metavar="IDS",
                    help="comma-separated criterion ids (empty string: none)")
    sp.add_argument("--inject-fault", choices=FAULTS, default=None,
                    help="deliberately corrupt a computed value")
    return p


def _cmd_report(args) -> int:
    if not args.group:
        raise GroupSpecError("a group spec is required")
    spec = JobSpec(args.group, args.command, args.cutoff, args.group_cap, args.mmp_cap, args.strategy)
    _emit(dumps(run_report(spec)), args.json)
    return EXIT_OK


def _cmd_corpus(args) -> int:
    rows = []
    failures = 0
    for e in CORPORA[args.corpus]():
        try:
            p = run_pipeline(e.group, args.strategy, args.mmp_cap)
            ok = p.census.consistent and all(s.monotone for s in p.result.steps)
            detail = f"|G|={e.order} y_rank={p.census.y_rank} components={len(p.census.components)}"
        except (CensusError, MMPError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        failures += not ok
        rows.append({"group": e.label, "status": "pass" if ok else "FAIL", "detail": detail})
    lines = [f"{r['status']:4}  {r['group']:40}  {r['detail']}" for r in rows]
    lines.append(f"{len(rows) - failures}/{len(rows)} passed")
    print("\n".join(lines))
    if args.json:
        _emit(dumps({"corpus": args.corpus, "rows": rows, "failures": failures}), args.json)
    return EXIT_FAIL if failures else EXIT_OK


def _cmd_sod(args) -> int:
    if args.cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    if args.random:
        rng = random.Random(args.seed)
        models = [random_case_one_model(rng) for _ in range(args.random)]
    else:
        if args.r is None or args.s is None:
            raise ValueError("give source and target orders, or --random N")
        models = [LocalCaseOneModel(len(args.r), args.r, args.s)]
    certs = [verify_case1_sod(m, args.cutoff, args.radius) for m in models]
    doc = certs[0].to_json() if len(certs) == 1 else {"certificates": [c.to_json() for c in certs]}
    _emit(dumps(doc), args.json)
    return EXIT_OK if all(c.passed for c in certs) else EXIT_FAIL


def _cmd_verify(args) -> int:
    ids = args.only
    rows = verify_suite(ids, seed=args.seed, fault=args.inject_fault)
    print(format_table(rows))
    if args.json:
        _emit(dumps({"criteria": [r.row() for r in rows]}), args.json)
    return EXIT_OK if all(r.ok for r in rows) else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("analyze", "terminalize"):
            return _cmd_report(args)
        if args.command == "census":
            return _cmd_corpus(args) if args.corpus else _cmd_report(args)
        if args.command == "sod-verify":
            return _cmd_sod(args)
        return _cmd_verify(args)
    except (GroupSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CensusError, MMPError, TerminalizationError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
