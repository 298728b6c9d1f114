"""Command-line front end.

Exit codes: 0 all checks pass, 1 input error, 2 unsupported case,
3 theorem disagreement, 4 resource cap hit (partial report).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from .arrangements import (
    Arrangement,
    ArrangementError,
    LinearSubspace,
    build_generic_star,
    incidence_graph,
    is_complete_bipartite,
)
from .field import DEFAULT_PRIME, check_modulus
from .linalg import DenseMatrix
from .verify import analyze, build, caviglia_splits, supported, verify_grid

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_DISAGREE, EXIT_RESOURCE = 0, 1, 2, 3, 4
ENV_P = "ARRANGEMENT_REG_P"
ENV_JOBS = "ARRANGEMENT_REG_JOBS"


class InputError(Exception):
    pass


class UnsupportedCase(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    p: int = DEFAULT_PRIME
    seed: int = 0
    n: int = 3
    fmt: str = "text"
    amax: int = 5
    bmax: int = 9
    max_lines: int = 10
    jobs: int = 1
    exploratory: bool = False

    def __post_init__(self):
        check_modulus(self.p)
        if self.p <= self.amax + self.bmax:
            raise ValueError("modulus must exceed amax + bmax")
        if self.fmt not in ("json", "csv", "text"):
            raise ValueError(f"unknown format {self.fmt!r}")


def arrangement_to_json(A: Arrangement) -> str:
    """Arrangement document with one member per line; deterministic for a given arrangement."""
    lines = ["{", f'  "p": {A.p},', f'  "n": {A.n},', '  "members": [']
    members = [f'    {{"forms": {json.dumps([list(r) for r in L.forms.rows])}}}' for L in A.members]
    lines.append(",\n".join(members))
    if A.bipartition is not None:
        lines.append("  ],")
        lines.append(f'  "bipartition": {json.dumps([list(A.bipartition[0]), list(A.bipartition[1])])}')
    else:
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def arrangement_from_json(text: str) -> Arrangement:
    try:
        doc = json.loads(text)
        p, n = int(doc["p"]), int(doc["n"])
        check_modulus(p)
        members = [LinearSubspace(DenseMatrix(m["forms"], p, n + 1), n) for m in doc["members"]]
        return Arrangement(members, n, doc.get("bipartition"))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed arrangement document: {exc}") from exc


def construct(a: int, b: int, config: RunConfig) -> Arrangement:
    a, b = sorted((a, b))
    if a < 1:
        raise InputError("part sizes must be positive")
    if config.exploratory and a == 1 and b >= 3:
        if config.n != 3:
            raise UnsupportedCase("exploratory star arrangements are built in P^3 only")
        return build_generic_star(b, config.seed, config.p)
    if not supported(a, b, config.n):
        raise UnsupportedCase(
            f"K_{{{a},{b}}} in P^{config.n} is an omitted case (a = 1 with b >= 3, or a = 2 with b >= 4): "
            "the incidence graph alone does not determine regularity; use --exploratory for a = 1"
        )
    return build(a, b, config.n, config.p)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


HEADER = ["a", "b", "n", "reg_betti", "reg_cohomology", "pd", "acm_betti", "acm_cohomology",
          "expected_reg", "expected_acm", "agree"]


def format_rows(rows, fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        doc = {"rows": [r.to_dict() for r in rows]}
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(HEADER)
        for r in rows:
            w.writerow(r.cells())
        return buf.getvalue()
    widths = [max(len(h), *(len(r.cells()[i]) for r in rows)) if rows else len(h) for i, h in enumerate(HEADER)]
    lines = ["  ".join(h.rjust(wd) for h, wd in zip(HEADER, widths))]
    for r in rows:
        lines.append("  ".join(c.rjust(wd) for c, wd in zip(r.cells(), widths)))
    return "\n".join(lines) + "\n"


def cmd_construct(args, config: RunConfig) -> int:
    A = construct(args.a, args.b, config)
    _emit(arrangement_to_json(A), args.out)
    return EXIT_OK


def cmd_report(args, config: RunConfig) -> int:
    A = arrangement_from_json(_read(args.path))
    row = analyze(A).row
    _emit(format_rows([row], config.fmt), args.out)
    return EXIT_OK if row.agree else EXIT_DISAGREE


def cmd_betti(args, config: RunConfig) -> int:
    A = arrangement_from_json(_read(args.path))
    B = analyze(A).betti
    if config.fmt == "csv":
        text = B.to_csv()
    elif config.fmt == "json":
        text = json.dumps(B.to_dict(), indent=2) + "\n"
    else:
        text = B.to_text()
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify_theorems(args, config: RunConfig) -> int:
    report = verify_grid(config.amax, config.bmax, config.n, config.max_lines, config.p,
                         config.jobs, cones=not args.no_cones, time_limit=args.time_limit,
                         inject_fault=args.inject_fault)
    rows = [g.row for g in report.rows + report.cone_rows]
    problems = {f"{g.row.a},{g.row.b},{g.row.n}": g.problems for g in report.rows + report.cone_rows if g.problems}
    extra = {"problems": problems, "complete": report.complete, "fault_injection": report.fault_check}
    text = format_rows(rows, config.fmt, extra if config.fmt == "json" else None)
    if config.fmt == "text":
        for k, v in problems.items():
            text += f"problem ({k}): {'; '.join(v)}\n"
        if report.fault_check:
            text += f"fault injection: colliding ruling parameters {report.fault_check}\n"
        if not report.complete:
            text += "time limit reached: report is partial\n"
    _emit(text, args.out)
    if not report.ok:
        return EXIT_DISAGREE
    if not report.complete:
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_caviglia(args, config: RunConfig) -> int:
    rows = caviglia_splits(args.a1, args.a2, config.p)
    header = ["b1", "b2", "c1", "c2", "reg_A", "reg_B", "reg_C", "equality", "predicted", "ok"]
    table = [[r.b1, r.b2, r.c1, r.c2, r.reg_a, r.reg_b, r.reg_c, r.equality, r.predicted, r.ok] for r in rows]
    if config.fmt == "json":
        text = json.dumps([dict(zip(header, t)) for t in table], indent=2) + "\n"
    else:
        cells = [[str(v).lower() if isinstance(v, bool) else str(v) for v in t] for t in table]
        if config.fmt == "csv":
            text = "\n".join(",".join(c) for c in [header] + cells) + "\n"
        else:
            text = "\n".join(" ".join(c.rjust(9) for c in row) for row in [header] + cells) + "\n"
    _emit(text, args.out)
    return EXIT_OK if all(r.ok for r in rows) else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=None, help=f"field modulus (env {ENV_P}, default {DEFAULT_PRIME})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--n", type=int, default=3, help="ambient projective dimension")
    common.add_argument("--amax", type=int, default=5)
    common.add_argument("--bmax", type=int, default=9)
    common.add_argument("--max-lines", type=int, default=10, help="grid bound on a + b")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default=None)
    common.add_argument("--exploratory", action="store_true")
    common.add_argument("--jobs", type=int, default=None, help=f"worker processes (env {ENV_JOBS})")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="arrangement-reg", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="emit an on-quadric K_{a,b} arrangement as JSON")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(func=cmd_construct, default_fmt="json")

    p = sub.add_parser("report", parents=[common], help="regularity / ACM report for an arrangement document")
    p.add_argument("path", nargs="?", default="-")
    p.set_defaults(func=cmd_report, default_fmt="text")

    p = sub.add_parser("betti", parents=[common], help="Betti table of S/I for an arrangement document")
    p.add_argument("path", nargs="?", default="-")
    p.set_defaults(func=cmd_betti, default_fmt="text")

    p = sub.add_parser("verify-theorems", parents=[common], help="sweep the (a, b) grid and check both theorems")
    p.add_argument("--no-cones", action="store_true", help="skip the cone spot checks in P^4 and P^5")
    p.add_argument("--time-limit", type=float, default=None, help="seconds before giving up (exit 4)")
    p.add_argument("--inject-fault", action="store_true", help="also try a construction with colliding parameters")
    p.set_defaults(func=cmd_verify_theorems, default_fmt="text")

    p = sub.add_parser("caviglia", parents=[common], help="enumerate splits of K_{a1,a2} and compare regularities")
    p.add_argument("a1", type=int)
    p.add_argument("a2", type=int)
    p.set_defaults(func=cmd_caviglia, default_fmt="text")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        p = args.p if args.p is not None else int(os.environ.get(ENV_P, DEFAULT_PRIME))
        jobs = args.jobs if args.jobs is not None else int(os.environ.get(ENV_JOBS, "1"))
        config = RunConfig(p=p, seed=args.seed, n=args.n, fmt=args.fmt or args.default_fmt,
                           amax=args.amax, bmax=args.bmax, max_lines=args.max_lines,
                           jobs=max(1, jobs), exploratory=args.exploratory)
        return args.func(args, config)
    except UnsupportedCase as exc:
        print(f"unsupported case: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InputError, ArrangementError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
