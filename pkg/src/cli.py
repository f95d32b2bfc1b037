"""
Command line interface: det, member, realize, census, verify, selftest.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from .census import CensusConfig, census_run, census_verify, compact_store
from .conditions import check_necessary, decide
from .config import settings
from .detengine import determinant_both, direct_determinant, factored_determinant
from .exceptions import (
    BadIndex,
    BadResidue,
    BadS,
    CorruptCheckpoint,
    ElementParseError,
    GrpdetError,
    NotAchievable,
    NotDivisor,
    NotPrime,
    OrderMismatch,
    OutOfRange,
    TagGroupMismatch,
    UnknownDecision,
    UnsupportedGroup,
    WrongShape,
    Zero,
    ZeroInput,
)
from .groups import parse_element, parse_group
from .logging_config import get_logger, setup_logging
from .realize import ConstructionParams, ConstructionTag, realize_class, realize_value
from .selftest import run_selftest

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_NOT_ACHIEVABLE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70

# Options whose values may start with "-"
_TEXT_OPTIONS = ("--element", "--params")

_USAGE_ERRORS = (
    BadIndex,
    BadResidue,
    BadS,
    CorruptCheckpoint,
    ElementParseError,
    NotDivisor,
    NotPrime,
    OrderMismatch,
    OutOfRange,
    TagGroupMismatch,
    UnsupportedGroup,
    WrongShape,
    Zero,
    ZeroInput,
)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with EX_USAGE."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args: argparse.Namespace, data: Dict[str, Any], lines: List[str]) -> None:
    if args.json:
        print(json.dumps(data, ensure_ascii=False))
    else:
        print("\n".join(lines))


def _parse_params(text: Optional[str]) -> ConstructionParams:
    if not text:
        return ConstructionParams()
    values: Dict[str, int] = {}
    for item in text.split(","):
        name, _, value = item.partition("=")
        if not value:
            raise ValueError(f"parameters must look like c=1,b=2; got {item!r}")
        values[name.strip()] = int(value)
    return ConstructionParams(**values)


def det_command(args: argparse.Namespace) -> int:
    """Group determinant of an element: factored, direct oracle, or both cross-checked."""
    g = parse_group(args.group)
    element = parse_element(args.element, g)
    mode = "both" if args.direct else args.mode
    if mode == "direct":
        D = direct_determinant(element, g)
        _emit(args, {"group": g.key, "D": D}, [f"group {g}", f"direct D = {D}"])
        return EXIT_OK

    if mode == "both":
        report, direct = determinant_both(element, g)
    else:
        report, direct = factored_determinant(element, g), None
    conditions = check_necessary(report)
    data = report.to_dict()
    data["conditions_ok"] = conditions.ok
    if direct is not None:
        data["direct_D"] = direct
        data["agree"] = direct == report.D
    lines = [f"group {g}", f"A = {report.A}", f"B = {report.B}", f"D = {report.D}"]
    lines += [f"B(ω^{j}) = {block}" for j, block in zip(g.coset_reps, report.B_blocks)]
    if direct is not None:
        lines.append(f"direct D = {direct}")
    _emit(args, data, lines)
    return EXIT_OK


def member_command(args: argparse.Namespace) -> int:
    """Decide whether a value is an integer group determinant."""
    g = parse_group(args.group)
    decision = decide(args.value, g)
    lines = [f"{decision.status.value}: {decision.reason}"]
    if decision.witness is not None:
        lines.append(f"witness {decision.witness.to_dict()}")
    _emit(args, decision.to_dict(), lines)
    return decision.exit_code


def realize_command(args: argparse.Namespace) -> int:
    """Build an element for a value, or a named construction with given parameters."""
    g = parse_group(args.group)
    if args.tag:
        result = realize_class(g, ConstructionTag(args.tag), _parse_params(args.params))
    elif args.value is not None:
        result = realize_value(g, args.value)
    else:
        raise ValueError("realize needs --value or --tag")
    report = result.report
    lines = [
        f"element {result.to_dict()['element']}",
        f"construction {result.tag.value} {result.params.model_dump(exclude_none=True)}"
        + (" then *(-Y)" if result.negated else ""),
        f"A = {report.A}, B = {report.B}, D = {report.D}",
    ]
    _emit(args, result.to_dict(), lines)
    return EXIT_OK


def census_command(args: argparse.Namespace) -> int:
    """Run (or resume) a census and optionally compact the store."""
    g = parse_group(args.group)
    options: Dict[str, Any] = {
        "group": g,
        "coeff_bound": args.coeff_bound,
        "support_bound": args.support_bound,
        "det_bound": args.det_bound,
        "max_elements": args.max_elements,
        "canonical_x": args.canonical_x,
        "store_path": settings.get_store_path(args.store),
    }
    for name in ("workers", "block_size", "checkpoint_every", "checkpoint_cursors", "checkpoint_path"):
        value = getattr(args, name)
        if value is not None:
            options[name] = value
    cfg = CensusConfig(**options)

    count = 0
    values = set()
    for record in census_run(cfg, restart=args.restart):
        count += 1
        values.add(record.D)
    compacted = compact_store(cfg.store_path) if args.compact else None
    data = {
        "group": g.key,
        "store": str(cfg.store_path),
        "records": count,
        "distinct_values": len(values),
        "compacted_values": compacted,
    }
    lines = [f"{count} records, {len(values)} distinct values written to {cfg.store_path}"]
    if compacted is not None:
        lines.append(f"store compacted to {compacted} values")
    _emit(args, data, lines)
    return EXIT_OK


def verify_command(args: argparse.Namespace) -> int:
    """Check a census store for soundness and list coverage gaps."""
    g = parse_group(args.group)
    report = census_verify(
        settings.get_store_path(args.store),
        g,
        det_bound=args.det_bound,
        necessary_only=args.necessary_only,
        reparse=args.reparse,
    )
    lines = [
        f"{report.records} records, {report.distinct_values} distinct nonzero values",
        f"violations: {len(report.violations)}",
        f"soundness failures: {report.soundness_failures or 'none'}",
    ]
    if args.reparse:
        lines.append(f"reparse failures: {report.reparse_failures or 'none'}")
    if report.det_bound and not report.necessary_only:
        lines.append(f"gaps up to {report.det_bound}: {report.gaps or 'none'}")
    _emit(args, report.to_dict(), lines)
    return EXIT_OK if report.ok else EXIT_NOT_ACHIEVABLE


def selftest_command(args: argparse.Namespace) -> int:
    """Run the golden checks."""
    results = run_selftest()
    lines = [f"[{'ok' if r.passed else 'FAIL'}] {r.name}" + (f": {r.detail}" if r.detail else "") for r in results]
    passed = all(r.passed for r in results)
    _emit(args, {"passed": passed, "checks": [r.model_dump() for r in results]}, lines)
    return EXIT_OK if passed else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grpdet", description="Integer group determinants of Z_p ⋊ Z_n.")
    parser.add_argument("--log-level", default=None, help="override GRPDET_LOG_LEVEL")
    parser.add_argument("--log-json", action="store_true", default=None, help="JSON log lines on stderr")

    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine readable output on stdout")

    grouped = _Parser(add_help=False, parents=[common])
    grouped.add_argument("--group", required=True, help="'p,r,n' or a label such as 'GA(1,5)'")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    det = sub.add_parser("det", parents=[grouped], help="compute the group determinant of an element")
    det.add_argument("--element", required=True, help="e.g. '2 + Y - 3*X^2*Y^3'")
    det.add_argument("--mode", choices=["factored", "direct", "both"], default="factored",
                     help="'direct' evaluates the |G|x|G| matrix, 'both' cross-checks the two engines")
    det.add_argument("--direct", action="store_true", help="same as --mode both")
    det.set_defaults(handler=det_command)

    member = sub.add_parser("member", parents=[grouped], help="decide whether a value is achieved")
    member.add_argument("--value", type=int, required=True)
    member.set_defaults(handler=member_command)

    realize = sub.add_parser("realize", parents=[grouped], help="construct an element for a value")
    realize.add_argument("--value", type=int)
    realize.add_argument("--tag", choices=[tag.value for tag in ConstructionTag])
    realize.add_argument("--params", help="construction parameters, e.g. 'c=1,a=0,b=2'")
    realize.set_defaults(handler=realize_command)

    census = sub.add_parser("census", parents=[grouped], help="enumerate small elements")
    census.add_argument("--coeff-bound", type=int, default=1)
    census.add_argument("--support-bound", type=int, default=None)
    census.add_argument("--det-bound", type=int, default=0, help="store only |D| <= bound (0: all)")
    census.add_argument("--max-elements", type=int, default=None)
    census.add_argument("--workers", type=int, default=None)
    census.add_argument("--block-size", type=int, default=None)
    census.add_argument("--checkpoint-every", type=int, default=None, help="records between checkpoints")
    census.add_argument("--checkpoint-cursors", type=int, default=None, help="cursor positions between checkpoints")
    census.add_argument("--store", default=None)
    census.add_argument("--checkpoint", dest="checkpoint_path", type=Path, default=None)
    census.add_argument("--restart", action="store_true", help="discard the store and checkpoint")
    census.add_argument("--canonical-x", action="store_true", help="skip non-minimal X-translates")
    census.add_argument("--compact", action="store_true", help="sort and deduplicate the store afterwards")
    census.set_defaults(handler=census_command)

    verify = sub.add_parser("verify", parents=[grouped], help="check a census store against the deciders")
    verify.add_argument("--store", default=None)
    verify.add_argument("--det-bound", type=int, default=0, help="list achievable values up to this bound not found")
    verify.add_argument("--necessary-only", action="store_true")
    verify.add_argument("--reparse", action="store_true", help="re-evaluate each stored element directly")
    verify.set_defaults(handler=verify_command)

    selftest = sub.add_parser("selftest", parents=[common], help="run the golden checks")
    selftest.set_defaults(handler=selftest_command)
    return parser


def _exit_code(error: Exception) -> int:
    if isinstance(error, NotAchievable):
        return EXIT_NOT_ACHIEVABLE
    if isinstance(error, UnknownDecision):
        return EXIT_UNKNOWN
    if isinstance(error, _USAGE_ERRORS) or isinstance(error, ValueError):
        return EXIT_USAGE
    return EXIT_INTERNAL


def _attach_text_values(argv: List[str]) -> List[str]:
    """Join "--element -1*Y" into "--element=-1*Y"; argparse would read the value as an option."""
    joined: List[str] = []
    pending = False
    for item in argv:
        if pending:
            joined[-1] = f"{joined[-1]}={item}"
            pending = False
        elif item in _TEXT_OPTIONS:
            joined.append(item)
            pending = True
        else:
            joined.append(item)
    return joined


def cli_main(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run the subcommand and map errors to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(_attach_text_values(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(level=args.log_level, json_output=args.log_json)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (GrpdetError, ValueError) as e:
        code = _exit_code(e)
        logger.error("Command failed", command=args.command, error=str(e), exit_code=code)
        if getattr(args, "json", False):
            print(json.dumps({"error": type(e).__name__, "message": str(e), "exit_code": code}))
        return code
