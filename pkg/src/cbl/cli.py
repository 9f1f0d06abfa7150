"""Command-line driver.

Exit status: 0 success, 1 a verdict differs from its expectation,
2 parse error, 3 degree mismatch, 4 an inconclusive run.  A definite
mismatch outranks an inconclusive row.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import brackets as br
from . import courant as cr
from . import harness
from .brackets import BracketKind
from .cartan import NambuStructure
from .exterior import DegreeError
from .library import library
from .parse import ParseError, parse_value
from .polyring import Chart, ChartMismatchError

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_DEGREE, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
DEFAULT_CHART = "x1,x2,x3"
FORM_KINDS = [k.value for k in BracketKind]
SECTION_KINDS = ["dorfman", "courant"]


class UsageError(Exception):
    pass


def _seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get("CBL_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CBL_SEED must be an integer, got {env!r}")


def _config(args) -> harness.GeneratorConfig:
    defaults = harness.GeneratorConfig()
    return harness.GeneratorConfig(
        seed=_seed(args.seed),
        max_degree=defaults.max_degree if args.max_degree is None else args.max_degree,
        coeff_bound=defaults.coeff_bound if args.coeff_bound is None else args.coeff_bound,
        max_terms=defaults.max_terms if args.max_terms is None else args.max_terms,
        trials=defaults.trials if args.trials is None else args.trials,
        search_cap=defaults.search_cap if args.search_cap is None else args.search_cap,
    )


def cmd_bracket(args) -> int:
    chart = Chart.parse(args.chart or DEFAULT_CHART)
    if args.kind in SECTION_KINDS:
        if args.x is None or args.y is None:
            raise UsageError(f"--kind {args.kind} needs --x and --y")
        x = parse_value(args.x, "section", chart)
        y = parse_value(args.y, "section", chart)
        fn = cr.dorfman if args.kind == "dorfman" else cr.courant_bracket
        print(fn(x, y))
        return EXIT_OK
    if args.pi is None or args.alpha is None or args.beta is None:
        raise UsageError(f"--kind {args.kind} needs --pi, --alpha and --beta")
    pi = parse_value(args.pi, "multivector", chart)
    S = NambuStructure(pi)
    alpha = parse_value(args.alpha, "form", chart, S.order - 1)
    beta = parse_value(args.beta, "form", chart, S.order - 1)
    print(br.bracket(BracketKind(args.kind), S, alpha, beta))
    return EXIT_OK


def _tensor_arg(args):
    if args.tensor is None:
        return None
    if args.tensor in library() or args.tensor == harness.COURANT_TARGET:
        return args.tensor
    if args.chart is None:
        raise UsageError(f"unknown tensor {args.tensor!r}; inline tensors need --chart")
    return parse_value(args.tensor, "multivector", Chart.parse(args.chart))


def _run(slugs, args) -> list[harness.DefectReport]:
    cfg = _config(args)
    tensor = _tensor_arg(args)
    reports = []
    for slug in slugs:
        if slug not in harness.EXPERIMENTS:
            raise UsageError(f"unknown experiment {slug!r}; choose from {', '.join(harness.EXPERIMENTS)} or all")
        if tensor is None:
            reports += [harness.run_experiment(slug, t, cfg) for t in harness.targets_for(harness.EXPERIMENTS[slug])]
        else:
            try:
                reports.append(harness.run_experiment(slug, tensor, cfg))
            except ValueError as exc:
                if isinstance(exc, DegreeError):
                    raise
                raise UsageError(str(exc))
    return reports


def _write(reports, args, formats) -> None:
    cfg = _config(args)
    if args.out is None:
        return
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if "json" in formats:
        (out / "report.json").write_text(harness.to_json(reports, cfg))
    if "markdown" in formats:
        (out / "report.md").write_text(harness.to_markdown(reports, cfg))


def _status(reports) -> int:
    for r in reports:
        expected = "" if r.expected is None else f" (expected {r.expected})"
        flag = "" if r.matches or r.verdict == harness.Verdict.INCONCLUSIVE.value else "  MISMATCH"
        print(f"{r.experiment} {r.tensor}: {r.verdict}{expected} over {r.instances_run} instances{flag}")
    if any(not r.matches and r.verdict != harness.Verdict.INCONCLUSIVE.value for r in reports):
        return EXIT_MISMATCH
    if any(r.verdict == harness.Verdict.INCONCLUSIVE.value for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _formats(args) -> list[str]:
    return ["json", "markdown"] if args.format == "both" else [args.format]


def cmd_check(args) -> int:
    reports = _run([args.experiment], args)
    _write(reports, args, _formats(args))
    return _status(reports)


def cmd_experiment(args) -> int:
    slugs = list(harness.EXPERIMENTS) if args.experiment == "all" else [args.experiment]
    reports = _run(slugs, args)
    _write(reports, args, _formats(args))
    return _status(reports)


def cmd_report(args) -> int:
    reports = _run(list(harness.EXPERIMENTS), args)
    if args.out is None:
        args.out = "."
    _write(reports, args, ["json", "markdown"])
    return _status(reports)


def _run_flags(p: argparse.ArgumentParser, formats: bool = True) -> None:
    p.add_argument("--tensor", help="library tensor name, or an inline multivector with --chart")
    p.add_argument("--chart", help="comma-separated coordinate names for an inline tensor")
    p.add_argument("--seed", type=int, help="generator seed (default: $CBL_SEED, else 0)")
    p.add_argument("--trials", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--coeff-bound", type=int)
    p.add_argument("--max-terms", type=int)
    p.add_argument("--search-cap", type=int, help="instance cap for witness search")
    p.add_argument("--out", help="directory for report.json / report.md")
    if formats:
        p.add_argument("--format", choices=["json", "markdown", "both"], default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cbl", description="Exact bracket calculus on polynomial multivectors.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="evaluate a bracket on explicit inputs")
    p.add_argument("--kind", required=True, choices=FORM_KINDS + SECTION_KINDS)
    p.add_argument("--chart", help=f"comma-separated coordinate names (default {DEFAULT_CHART})")
    p.add_argument("--pi", help="the p-vector")
    p.add_argument("--alpha", help="first (p-1)-form")
    p.add_argument("--beta", help="second (p-1)-form")
    p.add_argument("--x", help="first generalized section, @(V; F)")
    p.add_argument("--y", help="second generalized section")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("check", help="run one experiment")
    p.add_argument("--experiment", required=True)
    _run_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("experiment", help="run one experiment, or all, on every compatible tensor")
    p.add_argument("experiment", help="experiment slug or 'all'")
    _run_flags(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("report", help="run every experiment and write JSON and markdown reports")
    _run_flags(p, formats=False)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DegreeError as exc:
        print(f"degree mismatch: {exc}", file=sys.stderr)
        return EXIT_DEGREE
    except (ParseError, ChartMismatchError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
