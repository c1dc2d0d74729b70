"""Command-line interface.

Subcommands:

* ``expand``: expand rational contact surgery coefficients into a
  (+-1)-surgery presentation, either for a diagram file or for a
  single knot given by --tb/--rot/--chi and a coefficient.
* ``invariants``: rational invariants of a surgery-dual knot, via the
  matrix path (diagram file plus --dual) or the closed forms
  (--chain --tb --rot --n).
* ``classify``: run every applicable tight/overtwisted rule on a
  diagram, optionally with (+1)-tight assumptions and a prospective
  +p/q surgery query.
* ``bennequin``: evaluate the rational Bennequin bound for a dual
  knot.
* ``selftest``: run the built-in verification grids.

Reports go to standard output (deterministic text by default,
``--format json`` for machine consumption with stable key order);
diagnostics go to standard error. Exit codes: 0 success, 1 selftest
failure, 2 malformed or invalid input, 3 mathematically undefined
request (a non-nullhomologous dual). Commands that read a diagram
accept a directory instead of a file and process every *.json inside
it independently, in sorted order.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .classify import (
    InconsistentAssumptions,
    RULE_BENNEQUIN,
    RULE_NONE,
    bennequin_check,
    classify_diagram,
    verdict_from_bennequin,
    verdict_to_obj,
)
from .diagram import (
    LegendrianKnotData,
    MissingCoefficient,
    ParseError,
    SurgeryDiagram,
    UnexpandedCoefficient,
    ValidationError,
    diagram_to_obj,
    load_diagram,
)
from .exact import format_rational
from .expansion import (
    ExpandedPresentation,
    NotCoprime,
    RangeError,
    Unsupported,
    ZIGZAG_POLICIES,
    expand_diagram,
    expand_negative_rational,
    expand_positive_rational,
    expand_positive_unit_fraction,
)
from .invariants import (
    DualKnotInvariants,
    NonNullhomologousDual,
    dual_invariants_closed_form,
    dual_invariants_matrix,
)
from .selftest import SelfTestFailure, run_checks

__all__ = ["entry", "main", "parse_diagram_file", "Report"]

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_INPUT = 2
EXIT_UNDEFINED = 3

_INPUT_ERRORS = (
    ParseError,
    ValidationError,
    MissingCoefficient,
    UnexpandedCoefficient,
    NotCoprime,
    RangeError,
    Unsupported,
    InconsistentAssumptions,
    OSError,
)


@dataclass
class Report:
    """A deterministic, serializable command report."""

    command: str
    options: dict
    results: object
    citations: list[str] = field(default_factory=list)

    def to_obj(self) -> dict:
        return {
            "command": self.command,
            "options": self.options,
            "results": self.results,
            "citations": sorted(set(self.citations)),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, sort_keys=True) + "\n"


def parse_diagram_file(path) -> SurgeryDiagram:
    """Load and validate a diagram document from a file path."""
    return load_diagram(path)


# --------------------------------------------------------------------------
# Payload builders


def _invariants_obj(invariants: DualKnotInvariants) -> dict:
    return {
        "tb_q": format_rational(invariants.tb_q),
        "rot_q": format_rational(invariants.rot_q),
        "order": invariants.order,
        "euler_char": invariants.euler_char,
    }


def _expansion_obj(presentation: ExpandedPresentation) -> dict:
    obj = diagram_to_obj(presentation.derived_diagram)
    obj["steps"] = [
        {
            "source_id": step.source_id,
            "coefficient": format_rational(step.coefficient),
            "stabilizations": step.stabilizations,
            "stabilization_signs": list(step.stabilization_signs),
        }
        for step in presentation.steps
    ]
    obj["zigzag_policy"] = presentation.zigzag_policy
    return obj


def _verdicts_text(verdict_objs: list[dict]) -> list[str]:
    lines = []
    for index, obj in enumerate(verdict_objs, start=1):
        lines.append(f"[{index}] {obj['conclusion']} (rule: {obj['rule']})")
        for entry in obj["trace"]:
            lines.append(f"    {entry}")
    if not verdict_objs:
        lines.append("no verdicts (no components to classify)")
    return lines


# --------------------------------------------------------------------------
# Input helpers


def _batch_paths(raw: str) -> list[Path]:
    files = sorted(Path(raw).glob("*.json"))
    if not files:
        raise ParseError(f"directory {raw!r} contains no *.json diagrams")
    return files


def _per_file(paths: list[Path], handler) -> tuple[list[dict], int]:
    """Process directory entries independently; failures stay per-file."""
    entries = []
    worst = EXIT_OK
    for path in paths:
        try:
            entries.append({"file": path.name, **handler(path)})
        except NonNullhomologousDual as error:
            entries.append({"file": path.name, "error": str(error)})
            worst = max(worst, EXIT_UNDEFINED)
        except _INPUT_ERRORS as error:
            entries.append({"file": path.name, "error": str(error)})
            worst = max(worst, EXIT_INPUT)
    return entries, worst


def _knot_from_args(args: argparse.Namespace, parser: argparse.ArgumentParser):
    if args.tb is None or args.rot is None:
        parser.error("single-knot mode needs --tb and --rot")
    return LegendrianKnotData(
        id=args.id, tb=args.tb, rot=args.rot, euler_char=args.chi
    )


def _coefficient_from_args(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> Fraction:
    if args.n is not None:
        if args.p is not None or args.q is not None:
            parser.error("give either --n or --p/--q, not both")
        if args.n < 1:
            parser.error("--n must be a positive integer")
        return Fraction(1, args.n)
    if args.p is None:
        parser.error("a coefficient is required: --n N for +1/N, or --p/--q")
    q = 1 if args.q is None else args.q
    if q < 1:
        parser.error("--q must be a positive integer")
    return Fraction(args.p, q)


# --------------------------------------------------------------------------
# Command handlers (each returns (Report, exit_code))


def _cmd_expand(args, parser) -> tuple[Report, int]:
    options = {"zigzag_policy": args.zigzag_policy, "format": args.format}
    if args.diagram is not None:
        options["input"] = args.diagram

        def handle(path: Path) -> dict:
            presentation = expand_diagram(
                parse_diagram_file(path), zigzag_policy=args.zigzag_policy
            )
            return {"expansion": _expansion_obj(presentation)}

        if Path(args.diagram).is_dir():
            entries, worst = _per_file(_batch_paths(args.diagram), handle)
            return Report("expand", options, {"batch": entries}), worst
        presentation = expand_diagram(
            parse_diagram_file(args.diagram), zigzag_policy=args.zigzag_policy
        )
        return Report("expand", options, _expansion_obj(presentation)), EXIT_OK
    knot = _knot_from_args(args, parser)
    coefficient = _coefficient_from_args(args, parser)
    options.update(
        {"tb": knot.tb, "rot": knot.rot, "chi": knot.euler_char,
         "coefficient": format_rational(coefficient)}
    )
    if coefficient > 0 and coefficient.numerator == 1:
        presentation = expand_positive_unit_fraction(knot, coefficient.denominator)
    elif coefficient > 0:
        presentation = expand_positive_rational(
            knot,
            coefficient.numerator,
            coefficient.denominator,
            zigzag_policy=args.zigzag_policy,
        )
    else:
        presentation = expand_negative_rational(
            knot, coefficient, zigzag_policy=args.zigzag_policy
        )
    return Report("expand", options, _expansion_obj(presentation)), EXIT_OK


def _dual_invariants_with_expansion(
    diagram: SurgeryDiagram, dual_id: str
) -> DualKnotInvariants:
    """Matrix-path invariants, expanding rational coefficients if needed."""
    try:
        return dual_invariants_matrix(diagram, diagram.component_index(dual_id))
    except UnexpandedCoefficient:
        derived = expand_diagram(diagram).derived_diagram
        return dual_invariants_matrix(derived, derived.component_index(dual_id))


def _chain_invariants(args, parser) -> DualKnotInvariants:
    if args.tb is None or args.rot is None or args.n is None:
        parser.error("--chain mode needs --tb, --rot and --n")
    return dual_invariants_closed_form(args.tb, args.rot, args.chi, args.n)


def _cmd_invariants(args, parser) -> tuple[Report, int]:
    options = {"format": args.format}
    if args.chain:
        options.update({"tb": args.tb, "rot": args.rot, "chi": args.chi, "n": args.n})
        invariants = _chain_invariants(args, parser)
        return Report("invariants", options, _invariants_obj(invariants)), EXIT_OK
    if args.diagram is None:
        parser.error("give a diagram file with --dual ID, or use --chain")
    if args.dual is None:
        parser.error("--dual ID is required with a diagram file")
    options.update({"input": args.diagram, "dual": args.dual})

    def handle(path: Path) -> dict:
        invariants = _dual_invariants_with_expansion(
            parse_diagram_file(path), args.dual
        )
        return {"invariants": _invariants_obj(invariants)}

    if Path(args.diagram).is_dir():
        entries, worst = _per_file(_batch_paths(args.diagram), handle)
        return Report("invariants", options, {"batch": entries}), worst
    invariants = _dual_invariants_with_expansion(
        parse_diagram_file(args.diagram), args.dual
    )
    return Report("invariants", options, _invariants_obj(invariants)), EXIT_OK


def _cmd_classify(args, parser) -> tuple[Report, int]:
    if args.diagram is None:
        parser.error("classify needs a diagram file or directory")
    if args.n is not None and args.p is not None:
        parser.error("give either --n or --p/--q, not both")
    if args.q is not None and args.n is None and args.p is None:
        parser.error("--q needs --p")
    p = args.n if args.n is not None else args.p
    q = 1 if args.q is None else args.q
    assumptions = {cid: True for cid in (args.assume_plus_one_tight or [])}
    options = {
        "input": args.diagram,
        "format": args.format,
        "assume_plus_one_tight": sorted(assumptions),
        "both_orientations": args.both_orientations,
    }
    if p is not None:
        options.update({"p": p, "q": q})
    citations: list[str] = []

    def handle(path: Path) -> dict:
        verdicts = classify_diagram(
            parse_diagram_file(path),
            assumptions,
            p=p,
            q=q,
            both_orientations=args.both_orientations,
        )
        objs = [verdict_to_obj(v) for v in verdicts]
        citations.extend(obj["rule"] for obj in objs if obj["rule"] != RULE_NONE)
        return {"verdicts": objs}

    if Path(args.diagram).is_dir():
        entries, worst = _per_file(_batch_paths(args.diagram), handle)
        return Report("classify", options, {"batch": entries}, citations), worst
    results = handle(Path(args.diagram))
    return Report("classify", options, results, citations), EXIT_OK


def _cmd_bennequin(args, parser) -> tuple[Report, int]:
    options = {"format": args.format}
    if args.chain:
        options.update({"tb": args.tb, "rot": args.rot, "chi": args.chi, "n": args.n})
        invariants = _chain_invariants(args, parser)
    else:
        if args.diagram is None or args.dual is None:
            parser.error("bennequin needs a diagram file with --dual ID, or --chain")
        if Path(args.diagram).is_dir():
            parser.error("bennequin takes a single diagram file")
        options.update({"input": args.diagram, "dual": args.dual})
        invariants = _dual_invariants_with_expansion(
            parse_diagram_file(args.diagram), args.dual
        )
    report = bennequin_check(invariants)
    verdict = verdict_from_bennequin(report)
    results = {
        "invariants": _invariants_obj(invariants),
        "lhs": format_rational(report.lhs),
        "rhs": format_rational(report.rhs),
        "satisfied": report.satisfied,
        "verdict": verdict_to_obj(verdict),
    }
    citations = [] if report.satisfied else [RULE_BENNEQUIN]
    return Report("bennequin", options, results, citations), EXIT_OK


def _cmd_selftest(args, parser) -> tuple[Report, int]:
    checks = run_checks()
    results = {
        "checks": [
            {"name": check["name"], "cases": check["cases"], "status": "pass"}
            for check in checks
        ],
        "status": "pass",
    }
    return Report("selftest", {"format": args.format}, results), EXIT_OK


# --------------------------------------------------------------------------
# Rendering


def _batch_entry_lines(entry: dict, key: str, render) -> list[str]:
    if "error" in entry:
        return [f"  error: {entry['error']}"]
    return ["  " + line for line in render(entry[key])]


def _render_text(report: Report) -> str:
    lines = [f"command: {report.command}"]
    results = report.results
    if report.command == "invariants":
        if "batch" in results:
            for entry in results["batch"]:
                lines.append(f"file: {entry['file']}")
                lines.extend(_batch_entry_lines(entry, "invariants", _invariants_lines))
        else:
            lines.extend(_invariants_lines(results))
    elif report.command == "expand":
        if "batch" in results:
            for entry in results["batch"]:
                lines.append(f"file: {entry['file']}")
                lines.extend(_batch_entry_lines(entry, "expansion", _expand_lines))
        else:
            lines.extend(_expand_lines(results))
    elif report.command == "classify":
        if "batch" in results:
            for entry in results["batch"]:
                lines.append(f"file: {entry['file']}")
                lines.extend(_batch_entry_lines(entry, "verdicts", _verdicts_text))
        else:
            lines.extend(_verdicts_text(results["verdicts"]))
    elif report.command == "bennequin":
        lines.extend(
            [
                "dual invariants: "
                + ", ".join(_invariants_lines(results["invariants"])),
                f"lhs = tb_q + |rot_q| = {results['lhs']}",
                f"rhs = -euler_char/order = {results['rhs']}",
                f"satisfied = {'yes' if results['satisfied'] else 'no'}",
            ]
        )
        lines.extend(_verdicts_text([results["verdict"]]))
    elif report.command == "selftest":
        for check in results["checks"]:
            lines.append(f"{check['name']}: {check['status']} ({check['cases']} cases)")
        lines.append("all checks passed")
    if report.citations:
        lines.append("rules fired: " + ", ".join(sorted(set(report.citations))))
    return "\n".join(lines) + "\n"


def _invariants_lines(obj: dict) -> list[str]:
    return [
        f"tb_q = {obj['tb_q']}",
        f"rot_q = {obj['rot_q']}",
        f"order = {obj['order']}",
        f"euler_char = {obj['euler_char']}",
    ]


def _expand_lines(obj: dict) -> list[str]:
    lines = [f"zigzag policy: {obj['zigzag_policy']}", "steps:"]
    for index, step in enumerate(obj["steps"], start=1):
        signs = ",".join(f"{s:+d}" for s in step["stabilization_signs"])
        lines.append(
            f"  {index}. source={step['source_id']} "
            f"coefficient={step['coefficient']} "
            f"stabilizations={step['stabilizations']}"
            + (f" signs={signs}" if signs else "")
        )
    lines.append(f"derived diagram ({len(obj['components'])} components):")
    for component in obj["components"]:
        coefficient = (
            component["contact_coefficient"]
            if component["contact_coefficient"] is not None
            else "none"
        )
        lines.append(
            f"  {component['id']}: tb={component['tb']} rot={component['rot']} "
            f"euler_char={component['euler_char']} coefficient={coefficient}"
        )
    lines.append("linking:")
    for row in obj["linking"]:
        lines.append("  [" + ", ".join(str(entry) for entry in row) + "]")
    return lines


# --------------------------------------------------------------------------
# Parser


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="report format (default: text)",
    )


def _add_knot_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tb", type=int, help="Thurston-Bennequin invariant")
    parser.add_argument("--rot", type=int, help="rotation number")
    parser.add_argument(
        "--chi", type=int, default=1,
        help="Euler characteristic of a Seifert surface (default: 1)",
    )
    parser.add_argument("--id", default="L", help="knot id label (default: L)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surgerycalc",
        description="Exact calculator for rational contact surgeries along "
        "Legendrian knots.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    expand = subparsers.add_parser(
        "expand", help="expand rational coefficients into (+-1)-surgeries"
    )
    expand.add_argument("diagram", nargs="?", help="diagram file or directory")
    _add_knot_options(expand)
    expand.add_argument("--n", type=int, help="expand coefficient +1/N")
    expand.add_argument("--p", type=int, help="coefficient numerator (signed)")
    expand.add_argument("--q", type=int, help="coefficient denominator (positive)")
    expand.add_argument(
        "--zigzag-policy", choices=ZIGZAG_POLICIES, default="all-negative",
        help="stabilization sign policy (default: all-negative)",
    )
    _add_format(expand)
    expand.set_defaults(handler=_cmd_expand)

    invariants = subparsers.add_parser(
        "invariants", help="rational invariants of a surgery-dual knot"
    )
    invariants.add_argument("diagram", nargs="?", help="diagram file or directory")
    invariants.add_argument("--dual", help="id of the unsurgered dual component")
    invariants.add_argument(
        "--chain", action="store_true",
        help="closed forms for a (+1/n) chain given by --tb/--rot/--n",
    )
    _add_knot_options(invariants)
    invariants.add_argument("--n", type=int, help="chain length n (with --chain)")
    _add_format(invariants)
    invariants.set_defaults(handler=_cmd_invariants)

    classify = subparsers.add_parser(
        "classify", help="run tight/overtwisted rules on a diagram"
    )
    classify.add_argument("diagram", help="diagram file or directory")
    classify.add_argument(
        "--assume-plus-one-tight", action="append", metavar="ID",
        help="assume contact (+1)-surgery along component ID is tight "
        "(repeatable)",
    )
    classify.add_argument("--n", type=int, help="query a prospective +N surgery")
    classify.add_argument("--p", type=int, help="query numerator of +P/Q")
    classify.add_argument("--q", type=int, help="query denominator of +P/Q")
    classify.add_argument(
        "--both-orientations",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="test |rot| > -chi instead of the literal rot > -chi "
        "(default: on)",
    )
    _add_format(classify)
    classify.set_defaults(handler=_cmd_classify)

    bennequin = subparsers.add_parser(
        "bennequin", help="evaluate the rational Bennequin bound for a dual knot"
    )
    bennequin.add_argument("diagram", nargs="?", help="diagram file")
    bennequin.add_argument("--dual", help="id of the unsurgered dual component")
    bennequin.add_argument(
        "--chain", action="store_true",
        help="closed forms for a (+1/n) chain given by --tb/--rot/--n",
    )
    _add_knot_options(bennequin)
    bennequin.add_argument("--n", type=int, help="chain length n (with --chain)")
    _add_format(bennequin)
    bennequin.set_defaults(handler=_cmd_bennequin)

    selftest = subparsers.add_parser(
        "selftest", help="run the built-in verification grids"
    )
    _add_format(selftest)
    selftest.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.handler(args, parser)
    except NonNullhomologousDual as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_UNDEFINED
    except SelfTestFailure as error:
        print(f"selftest failure: {error}", file=sys.stderr)
        return EXIT_SELFTEST
    except _INPUT_ERRORS as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(_render_text(report))
    return code


def entry() -> None:
    raise SystemExit(main())
