"""Command line entry point.

Every command reads one scenario, either a JSON file (``--scenario``) or a
built-in example (``--example``), and prints a JSON report on stdout.

Exit codes: 0 success, 1 failed check, 2 unparsable scenario,
3 invalid scenario, 4 bad subgroup element indices.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .checks import run_checks
from .export import (
    analyze_report,
    bold_report,
    category_dot,
    dumps,
    envelope,
    orbit_category_report,
    phi0_report,
    poset_dot,
    strata_report,
    strata_rows,
    xh_report,
)
from .gcomplex import SimplicialAction
from .group_core import GroupError, Subgroup
from .plotting import plot_counts, plot_hasse
from .scenario import Scenario, ScenarioError, ScenarioValidationError, build_action, example, load_scenario
from .strata import check_counting_all, frontier_poset

EXIT_CHECK_FAILED = 1
EXIT_BAD_SUBGROUP = 4


class SubgroupArgError(ValueError):
    pass


def _source(args) -> Scenario:
    if args.scenario is not None:
        return load_scenario(args.scenario)
    try:
        return example(args.example)
    except ValueError as exc:
        raise ScenarioValidationError("example", str(exc)) from None


def _out_path(args, path: str) -> Path:
    p = Path(path)
    if args.output_dir is not None and not p.is_absolute():
        p = Path(args.output_dir) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _emit(args, command: str, sc: Scenario, result) -> None:
    print(dumps(envelope(command, sc, result, timestamp=not args.no_timestamp)))


def parse_subgroup(action: SimplicialAction, text: str) -> Subgroup:
    G = action.group
    try:
        elements = sorted({int(t) for t in text.replace(" ", "").split(",") if t != ""})
    except ValueError:
        raise SubgroupArgError(f"subgroup elements must be integers, got {text!r}") from None
    bad = [e for e in elements if not 0 <= e < G.order]
    if bad:
        raise SubgroupArgError(f"unknown element indices {bad}; the group has order {G.order}")
    if 0 not in elements:
        elements = [0] + elements
    try:
        return G.subgroup(elements)
    except GroupError as exc:
        raise SubgroupArgError(f"elements {elements} do not form a subgroup: {exc}") from None


# -- commands ---------------------------------------------------------------------------


def cmd_analyze(args, sc: Scenario, action: SimplicialAction) -> int:
    _emit(args, "analyze", sc, analyze_report(action))
    return 0


def cmd_strata(args, sc: Scenario, action: SimplicialAction) -> int:
    if args.format == "dot":
        sys.stdout.write(poset_dot(frontier_poset(action, args.mode, args.where), sc.name))
    else:
        _emit(args, "strata", sc, strata_report(action, args.mode, args.where))
    return 0


def cmd_phi0(args, sc: Scenario, action: SimplicialAction) -> int:
    rep = bold_report(action) if args.bold else phi0_report(action)
    if args.format == "dot":
        sys.stdout.write(category_dot(rep, sc.name))
    else:
        _emit(args, "phi0-bold" if args.bold else "phi0", sc, rep)
    return 0


def cmd_orbit_category(args, sc: Scenario, action: SimplicialAction) -> int:
    _emit(args, "orbit-category", sc, orbit_category_report(action.group))
    return 0


def cmd_xh(args, sc: Scenario, action: SimplicialAction) -> int:
    S = parse_subgroup(action, args.subgroup)
    _emit(args, "xh", sc, xh_report(action, S))
    return 0


def cmd_check(args, sc: Scenario, action: SimplicialAction) -> int:
    verdict = run_checks(action, sc.name, exhaustive=not args.fast)
    _emit(args, "check", sc, verdict.as_dict())
    return 0 if verdict.ok else EXIT_CHECK_FAILED


def cmd_export(args, sc: Scenario, action: SimplicialAction) -> int:
    path = _out_path(args, args.output)
    if args.format == "json":
        path.write_text(json.dumps(sc.to_dict(), indent=2) + "\n")
    else:
        path.write_text(poset_dot(frontier_poset(action), sc.name))
    _emit(args, "export", sc, {"format": args.format, "path": str(path)})
    return 0


def cmd_example(args, sc: Scenario, action: SimplicialAction) -> int:
    text = json.dumps(sc.to_dict(), indent=2) + "\n"
    if args.output:
        _out_path(args, args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_report(args, sc: Scenario, action: SimplicialAction) -> int:
    out = _out_path(args, args.output) if args.output else _out_path(args, "report")
    out.mkdir(parents=True, exist_ok=True)
    rows = strata_rows(action)
    P = frontier_poset(action)
    csv_path = out / "strata.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    prop = [r.as_dict() for r in check_counting_all(action)]
    hasse = plot_hasse(rows, P.covers, f"strata of {sc.name}", out / "strata_hasse.png")
    counts = plot_counts(prop, f"counting identities, {sc.name}", out / "counting_identities.png")
    dot_path = out / "strata.dot"
    dot_path.write_text(poset_dot(P, sc.name))
    summary = {
        "analysis": analyze_report(action),
        "strata": strata_report(action),
        "counting": prop,
        "files": sorted(p.name for p in (csv_path, hasse, counts, dot_path)),
    }
    report = envelope("report", sc, summary, timestamp=not args.no_timestamp)
    (out / "report.json").write_text(dumps(report) + "\n")
    print(dumps(report))
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "strata": cmd_strata,
    "phi0": cmd_phi0,
    "orbit-category": cmd_orbit_category,
    "xh": cmd_xh,
    "check": cmd_check,
    "export": cmd_export,
    "example": cmd_example,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbitypes", description=__doc__.splitlines()[0])
    parser.add_argument("--output-dir", default=None, help="directory for relative output paths")
    parser.add_argument("--no-timestamp", action="store_true", help="omit generated_at from reports")
    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument("-s", "--scenario", help="scenario JSON file")
    group.add_argument("-e", "--example", help="built-in example, e.g. 'rotation_sphere(5)'")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[source], help="summary counts")
    p = sub.add_parser("strata", parents=[source], help="stratum poset")
    p.add_argument("--mode", choices=("iso", "conj"), default="iso")
    p.add_argument("--where", choices=("source", "quotient"), default="quotient")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p = sub.add_parser("phi0", parents=[source], help="database category")
    p.add_argument("--bold", action="store_true", help="the subgroup-indexed category and its comparison")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    sub.add_parser("orbit-category", parents=[source], help="orbit category of the group")
    p = sub.add_parser("xh", parents=[source], help="fixed points with level structure")
    p.add_argument("--subgroup", required=True, help="comma separated element indices")
    p = sub.add_parser("check", parents=[source], help="run every invariant")
    p.add_argument("--fast", action="store_true", help="check functoriality on generators only")
    p = sub.add_parser("export", parents=[source], help="write the scenario or the poset")
    p.add_argument("--format", choices=("json", "dot"), required=True)
    p.add_argument("-o", "--output", required=True)
    p = sub.add_parser("example", parents=[source], help="print a scenario file")
    p.add_argument("-o", "--output", default=None)
    p = sub.add_parser("report", parents=[source], help="figures, CSV and JSON into a directory")
    p.add_argument("-o", "--output", default=None, help="report directory (default: report)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sc = _source(args)
        action = build_action(sc)
        for w in sc.warnings:
            print(f"warning: {w}", file=sys.stderr)
        return COMMANDS[args.command](args, sc, action)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except SubgroupArgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SUBGROUP


if __name__ == "__main__":
    sys.exit(main())
