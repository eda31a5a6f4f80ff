"""Command-line front end: check rule files, evaluate scenarios, print tables.

Exit codes: 0 success, 1 static error (parse/link/config), 2 runtime
evaluation error. Degrees print with 6 decimals; internal precision is never
truncated. In json-lines mode the output is byte-identical for identical
inputs: fixed key order, fixed-point numbers.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .defaults import default_profile
from .distress import DefuzzResult, RuleBaseError
from .dressing import DressingResult, GarmentProfile
from .fuzzy import fuzzify
from .policy import (
    DecisionTrace,
    Profile,
    ProfileError,
    ScenarioError,
    decide_batch,
    load_profile,
    load_scenarios,
)
from .sleec import (
    LinkError,
    ParseError,
    link_errors,
    normalize,
    parse_rule_set,
    pretty_print,
    validate,
)

PROFILE_ENV_VAR = "NORMFUZZ_PROFILE"


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


class _ArgumentParser(argparse.ArgumentParser):
    # Usage mistakes are static errors: exit 1, not argparse's default 2.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="normfuzz", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_profile_flag(p):
        p.add_argument(
            "--profile",
            metavar="PATH",
            help=f"profile file (falls back to ${PROFILE_ENV_VAR}, then the embedded default)",
        )

    check = sub.add_parser("check", help="parse, normalize, and link-check a rules file")
    check.add_argument("rules", metavar="RULES", help="path to a .sleec rules file")
    add_profile_flag(check)

    ev = sub.add_parser("eval", help="evaluate scenarios against a rules file")
    ev.add_argument("rules", metavar="RULES", help="path to a .sleec rules file")
    add_profile_flag(ev)
    ev.add_argument("--scenario", metavar="PATH", required=True, help="scenario JSON file")
    ev.add_argument("--trace", action="store_true", help="include the full decision trace")
    ev.add_argument("--format", choices=("human", "jsonl"), default="human")
    ev.add_argument("--distress-threshold", type=float, metavar="X")
    ev.add_argument("--dressing-threshold", type=float, metavar="X")

    table = sub.add_parser("table", help="tabulate a variable's term memberships")
    table.add_argument("variable", metavar="VAR", help="one of: age, bp, hr, bt")
    add_profile_flag(table)
    table.add_argument("--min", type=float, default=0.0, dest="grid_min", metavar="A")
    table.add_argument("--max", type=float, default=100.0, dest="grid_max", metavar="B")
    table.add_argument("--step", type=float, default=5.0, dest="grid_step", metavar="S")
    return parser


def _read_text(path: str, what: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise CliError(f"cannot read {what} {path!r}: {exc}") from exc


def _resolve_profile(args: argparse.Namespace) -> Profile:
    base = default_profile()
    path = args.profile or os.environ.get(PROFILE_ENV_VAR)
    if not path:
        return base
    text = _read_text(path, "profile")
    try:
        return load_profile(text, base)
    except (ProfileError, RuleBaseError, ValueError) as exc:
        raise CliError(f"profile {path!r}: {exc}") from exc


def _apply_overrides(profile: Profile, args: argparse.Namespace) -> Profile:
    if args.distress_threshold is not None:
        if not 0.0 < args.distress_threshold < 1.0:
            raise CliError(f"--distress-threshold must be in (0, 1), got {args.distress_threshold}")
        profile = replace(profile, distress_threshold=args.distress_threshold)
    if args.dressing_threshold is not None:
        if not 0.0 < args.dressing_threshold < 1.0:
            raise CliError(f"--dressing-threshold must be in (0, 1), got {args.dressing_threshold}")
        profile = replace(
            profile,
            garments=GarmentProfile(
                distribution=profile.garments.distribution,
                threshold=args.dressing_threshold,
            ),
        )
    return profile


def _load_rules(path: str):
    text = _read_text(path, "rules file")
    try:
        return [normalize(ast) for ast in parse_rule_set(text)]
    except ParseError as exc:
        raise CliError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Fixed-point JSON emitter (the stdlib encoder cannot pin float formatting)
# ---------------------------------------------------------------------------


class _Fixed:
    __slots__ = ("value", "places")

    def __init__(self, value: float, places: int = 6):
        self.value = value
        self.places = places


def _deg(value: float | None) -> "_Fixed | None":
    return None if value is None else _Fixed(value, 6)


def _json(value) -> str:
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, _Fixed):
        return format(value.value, f".{value.places}f")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        out = ['"']
        for ch in value:
            if ch == '"':
                out.append('\\"')
            elif ch == "\\":
                out.append("\\\\")
            elif ord(ch) < 0x20:
                out.append(f"\\u{ord(ch):04x}")
            else:
                out.append(ch)
        out.append('"')
        return "".join(out)
    if isinstance(value, dict):
        items = ", ".join(f"{_json(str(k))}: {_json(v)}" for k, v in value.items())
        return "{" + items + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _dressing_record(result: DressingResult) -> dict:
    return {
        "dressed": result.dressed,
        "decisive_step": result.decisive_step.value,
        "accumulated_sum": _deg(result.accumulated_sum),
        "distinct_values_used": [_deg(v) for v in result.distinct_values_used],
    }


def _distress_record(result: DefuzzResult) -> dict:
    return {
        "memberships": {
            var: {term: _deg(v) for term, v in degrees.items()}
            for var, degrees in result.memberships.items()
        },
        "firings": [
            {
                "age": f.rule.age,
                "bp": f.rule.bp,
                "hr": f.rule.hr,
                "bt": f.rule.bt,
                "distress": f.rule.distress,
                "weight": _deg(f.weight),
                "contribution": _Fixed(f.contribution, 12),
            }
            for f in result.firings
            if f.weight > 0.0
        ],
        "numerator": _Fixed(result.numerator, 12),
        "denominator": _Fixed(result.denominator, 12),
        "d_star": _deg(result.d_star),
    }


def _trace_record(trace: DecisionTrace, index: int, with_trace: bool) -> dict:
    record = {
        "scenario": index,
        "event": trace.event,
        "outcome": trace.outcome,
        "rule": trace.rule,
        "action": trace.action,
        "branch": trace.branch_taken,
        "degraded": trace.degraded,
        "error": trace.error,
        "trace": None,
    }
    if with_trace and trace.outcome == "decided":
        record["trace"] = {
            "dressing": None if trace.dressing is None else _dressing_record(trace.dressing),
            "distress": None if trace.distress is None else _distress_record(trace.distress),
            "conditions": [
                {
                    "atom": c.atom,
                    "negated": c.negated,
                    "value": c.value,
                    "degree": _deg(c.degree),
                }
                for c in trace.condition_values
            ],
        }
    return record


def _print_human(trace: DecisionTrace, index: int, with_trace: bool) -> None:
    if trace.outcome == "error":
        print(f"scenario {index}: error: {trace.error}")
        return
    if trace.outcome == "not_triggered":
        print(f"scenario {index}: not triggered (no rule applies to event '{trace.event}')")
        return
    print(f"scenario {index}: action={trace.action} (rule={trace.rule}, branch={trace.branch_taken})")
    if not with_trace:
        return
    if trace.dressing is not None:
        d = trace.dressing
        values = ", ".join(f"{v:.6f}" for v in d.distinct_values_used)
        state = "dressed" if d.dressed else "undressed"
        print(
            f"  dressing: {state} step={d.decisive_step.value} "
            f"sum={d.accumulated_sum:.6f} values=[{values}]"
        )
    if trace.distress is not None:
        r = trace.distress
        for var, degrees in r.memberships.items():
            parts = " ".join(f"{term}={v:.6f}" for term, v in degrees.items())
            print(f"  memberships {var}: {parts}")
        for f in r.firings:
            if f.weight > 0.0:
                print(
                    f"  fired age={f.rule.age} bp={f.rule.bp} hr={f.rule.hr} bt={f.rule.bt}"
                    f" -> {f.rule.distress}: weight={f.weight:.6f}"
                    f" contribution={f.contribution:.12f}"
                )
        print(
            f"  numerator={r.numerator:.12f} denominator={r.denominator:.12f}"
            f" d_star={r.d_star:.6f}"
        )
    for c in trace.condition_values:
        shown = f"not {c.atom}" if c.negated else c.atom
        degree = "n/a" if c.degree is None else f"{c.degree:.6f}"
        print(f"  condition {shown}: {str(c.value).lower()} (degree {degree})")
    if trace.degraded:
        print("  degraded: distress inference fired no rules; condition read as false")


def cmd_check(args: argparse.Namespace) -> int:
    profile = _resolve_profile(args)
    rules = _load_rules(args.rules)
    for rule in rules:
        print(pretty_print(rule), end="")
    diagnostics = validate(rules, profile.vocabulary())
    errors = link_errors(diagnostics)
    for diagnostic in diagnostics:
        if isinstance(diagnostic, LinkError):
            print(f"error: {diagnostic}", file=sys.stderr)
        else:
            print(f"warning: {diagnostic}")
    warnings = len(diagnostics) - len(errors)
    noun = "rule" if len(rules) == 1 else "rules"
    print(f"checked {len(rules)} {noun}: {len(errors)} errors, {warnings} warnings")
    return 1 if errors else 0


def cmd_eval(args: argparse.Namespace) -> int:
    profile = _apply_overrides(_resolve_profile(args), args)
    rules = _load_rules(args.rules)
    diagnostics = validate(rules, profile.vocabulary())
    errors = link_errors(diagnostics)
    if errors:
        for error in errors:
            print(f"error: {error}", file=sys.stderr)
        return 1
    text = _read_text(args.scenario, "scenario file")
    try:
        scenarios = load_scenarios(text)
    except ScenarioError as exc:
        raise CliError(f"{args.scenario}: {exc}") from exc
    traces = decide_batch(rules, scenarios, profile)
    failed = []
    for index, trace in enumerate(traces):
        if args.format == "jsonl":
            print(_json(_trace_record(trace, index, args.trace)))
        else:
            _print_human(trace, index, args.trace)
        if trace.outcome == "error":
            failed.append(index)
    if failed:
        indices = ", ".join(str(i) for i in failed)
        print(f"evaluation failed for scenario(s): {indices}", file=sys.stderr)
        return 2
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    profile = _resolve_profile(args)
    variables = {
        "age": profile.variables.age,
        "bp": profile.variables.bp,
        "hr": profile.variables.hr,
        "bt": profile.variables.bt,
    }
    if args.variable not in variables:
        raise CliError(f"unknown variable {args.variable!r} (expected one of: age, bp, hr, bt)")
    if args.grid_step <= 0 or args.grid_max < args.grid_min:
        raise CliError("table grid needs step > 0 and max >= min")
    variable = variables[args.variable]
    unit = f" ({variable.unit})" if variable.unit else ""
    print(f"variable {variable.name}{unit}")
    steps = int((args.grid_max - args.grid_min) / args.grid_step + 1e-9)
    for i in range(steps + 1):
        x = args.grid_min + i * args.grid_step
        degrees = fuzzify(variable, x)
        parts = " ".join(f"{term}={value:.6f}" for term, value in degrees.items())
        print(f"{x:g}: {parts}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"check": cmd_check, "eval": cmd_eval, "table": cmd_table}
    try:
        return handlers[args.command](args)
    except CliError as exc:
        print(f"normfuzz: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
