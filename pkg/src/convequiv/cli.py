# convequiv: state-space analysis and equivalence of convolutional codes
# Copyright (C) 2026 the convequiv developers

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Command-line interface.

Commands:
    convequiv analyze ENCODER            structural summary of an encoder
    convequiv realize ENCODER            controller or canonical realization
    convequiv wam ENCODER                weight adjacency matrix
    convequiv equiv ENCODER ENCODER      monomial equivalence decision
    convequiv selftest                   recompute the reference examples

Exit codes: 0 success or equivalent, 1 a well-formed negative verdict,
2 a refusal (failed precondition or search cap), 3 a parse or usage error.

A ``.env`` file in the working directory is loaded before arguments are
parsed, so the CONVEQUIV_* settings can live there; explicit flags win.
"""

import argparse
import json
import logging
import sys
from typing import Sequence

from dotenv import find_dotenv, load_dotenv

from . import __version__
from .api import realize, run_selftest
from .api import analyze as _analyze
from .equivalence import monomial_equivalent_direct, monomial_equivalent_wam
from .realization import check_cond, is_controllable, is_observable
from .textio import format_system, load_encoder, system_to_json
from .types import (
    ParseError,
    PreconditionError,
    RankDeficientError,
    SearchCapExceeded,
)
from .wam import compute_wam, truncated_enumerator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_REFUSED = 2
EXIT_USAGE = 3

REFUSALS = (PreconditionError, SearchCapExceeded, RankDeficientError)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit code 3."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _print_json(record: dict) -> None:
    print(json.dumps(record, indent=2, sort_keys=False))


# ============================================================================
# Commands
# ============================================================================


def cmd_analyze(args: argparse.Namespace) -> int:
    encoder = load_encoder(args.encoder)
    report = _analyze(encoder.matrix)
    if args.json:
        _print_json({"label": encoder.label, **report})
        return EXIT_OK
    if encoder.label:
        print(f"label: {encoder.label}")
    for key, value in report.items():
        if isinstance(value, bool):
            value = _flag(value)
        elif isinstance(value, list):
            value = ", ".join(str(v) for v in value) or "-"
        print(f"{key}: {value}")
    return EXIT_OK


def cmd_realize(args: argparse.Namespace) -> int:
    encoder = load_encoder(args.encoder)
    sigma, stats = realize(encoder.matrix, form=args.form)
    cond = check_cond(sigma)
    if args.json:
        _print_json(
            {
                "label": encoder.label,
                "form": args.form,
                **system_to_json(sigma),
                "controllable": is_controllable(sigma),
                "observable": is_observable(sigma),
                "condition": {"holds": cond.holds, "failed_clause": cond.failed_clause},
                "orders": None if stats is None else dict(stats),
            }
        )
        return EXIT_OK
    print(format_system(sigma), end="")
    print(f"# form: {args.form}")
    print(f"# controllable: {_flag(is_controllable(sigma))}")
    print(f"# observable: {_flag(is_observable(sigma))}")
    print(f"# condition: {_flag(cond.holds)}", end="")
    print(f" (fails at {cond.failed_clause})" if cond.failed_clause else "")
    if stats is not None:
        print(
            f"# orders: {stats['original_order']} -> {stats['controllable_order']} "
            f"-> {stats['canonical_order']}"
        )
    return EXIT_OK


def cmd_wam(args: argparse.Namespace) -> int:
    encoder = load_encoder(args.encoder)
    sigma, _ = realize(encoder.matrix, form="controller")
    wam = compute_wam(sigma, max_states=args.max_states)
    truncated = None if args.truncate is None else truncated_enumerator(wam, args.truncate)
    if args.json:
        record = wam.to_json()
        if truncated is not None:
            record["truncated"] = {"length": args.truncate, "enum": truncated.to_dict()}
        _print_json(record)
        return EXIT_OK
    if wam.delta == 0:
        print(str(wam.entry(0, 0)))
    else:
        print(wam.to_frame().to_string())
    if truncated is not None:
        print(f"paths of length {args.truncate} from the zero state: {truncated}")
    return EXIT_OK


def _describe(report) -> list[str]:
    lines = [
        f"{report.method}: {'EQUIVALENT' if report.verdict else 'NOT equivalent'}",
        f"  search size: {report.search_size}",
    ]
    witness = report.to_json()["witness"]
    if witness is not None:
        for key, value in witness.items():
            if isinstance(value, list):
                value = " | ".join(str(v) for v in value)
            lines.append(f"  {key}: {value}")
    return lines


def cmd_equiv(args: argparse.Namespace) -> int:
    first = load_encoder(args.first)
    second = load_encoder(args.second)
    methods = ["direct", "wam"] if args.method == "both" else [args.method]
    procedures = {"direct": monomial_equivalent_direct, "wam": monomial_equivalent_wam}

    reports, refusals = {}, {}
    for method in methods:
        try:
            reports[method] = procedures[method](
                first.matrix, second.matrix, no_automorphisms=args.no_automorphisms
            )
        except REFUSALS as e:
            if args.method != "both":
                raise
            refusals[method] = f"{type(e).__name__}: {e}"

    verdicts = {method: report.verdict for method, report in reports.items()}
    agree = len(set(verdicts.values())) <= 1

    if args.json:
        record = {
            "reports": {
                method: report.to_json(include_timings=args.timings)
                for method, report in reports.items()
            },
            "refused": refusals,
        }
        if args.method == "both":
            record["agree"] = agree
        _print_json(record)
    else:
        for method in methods:
            if method in reports:
                print("\n".join(_describe(reports[method])))
                if args.timings:
                    print(f"  elapsed: {reports[method].elapsed:.3f}s")
            else:
                print(f"{method}: refused")
                for line in refusals[method].splitlines():
                    print(f"  {line}")
        if args.method == "both" and len(reports) == 2:
            print("methods agree" if agree else "methods DISAGREE")

    if not reports:
        return EXIT_REFUSED
    if not agree:
        logger.error("Equivalence methods disagree", extra={"verdicts": verdicts})
        return EXIT_NEGATIVE
    return EXIT_OK if all(verdicts.values()) else EXIT_NEGATIVE


def cmd_selftest(args: argparse.Namespace) -> int:
    frame = run_selftest(seed=args.seed, cross_validation_pairs=args.pairs)
    if args.json:
        records = [
            {**record, "passed": bool(record["passed"])}
            for record in frame.to_dict(orient="records")
        ]
        _print_json({"checks": records})
    else:
        print(frame.to_string(index=False))
    failed = int((~frame["passed"]).sum())
    if not args.json:
        print(f"\n{len(frame) - failed} of {len(frame)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_NEGATIVE


# ============================================================================
# Entry point
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="convequiv",
        description="State-space analysis and equivalence of convolutional codes",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress (-v for INFO, -vv for DEBUG)",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_analyze = sub.add_parser("analyze", help="Structural summary of an encoder")
    p_analyze.add_argument("encoder", help="Encoder file")
    p_analyze.add_argument("--json", action="store_true", help="Emit JSON")
    p_analyze.set_defaults(handler=cmd_analyze)

    p_realize = sub.add_parser("realize", help="Realization of an encoder")
    p_realize.add_argument("encoder", help="Encoder file")
    p_realize.add_argument(
        "--form",
        choices=["controller", "canonical"],
        default="controller",
        help="Controller form, or its canonical reduction (default: controller)",
    )
    p_realize.add_argument("--json", action="store_true", help="Emit JSON")
    p_realize.set_defaults(handler=cmd_realize)

    p_wam = sub.add_parser("wam", help="Weight adjacency matrix of the controller form")
    p_wam.add_argument("encoder", help="Encoder file")
    p_wam.add_argument("--json", action="store_true", help="Emit JSON")
    p_wam.add_argument(
        "--truncate",
        type=int,
        metavar="N",
        help="Also print entry (0, 0) of the N-th power",
    )
    p_wam.add_argument(
        "--max-states",
        type=int,
        default=None,
        help="Cap on the number of states (default: CONVEQUIV_MAX_STATES or 4096)",
    )
    p_wam.set_defaults(handler=cmd_wam)

    p_equiv = sub.add_parser("equiv", help="Decide monomial equivalence of two codes")
    p_equiv.add_argument("first", help="First encoder file")
    p_equiv.add_argument("second", help="Second encoder file")
    p_equiv.add_argument(
        "--method",
        choices=["direct", "wam", "both"],
        default="direct",
        help="Decision procedure (default: direct)",
    )
    p_equiv.add_argument(
        "--no-automorphisms",
        action="store_true",
        help="Only allow the identity field automorphism",
    )
    p_equiv.add_argument("--json", action="store_true", help="Emit JSON")
    p_equiv.add_argument("--timings", action="store_true", help="Include wall-clock times")
    p_equiv.set_defaults(handler=cmd_equiv)

    p_selftest = sub.add_parser("selftest", help="Recompute the reference examples")
    p_selftest.add_argument(
        "--seed", type=int, default=None, help="Seed for the randomized checks"
    )
    p_selftest.add_argument(
        "--pairs",
        type=int,
        default=10,
        help="Random encoder pairs to cross-validate (default: 10, 0 to skip)",
    )
    p_selftest.add_argument("--json", action="store_true", help="Emit JSON")
    p_selftest.set_defaults(handler=cmd_selftest)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    load_dotenv(find_dotenv(usecwd=True))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE

    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG if args.verbose > 1 else logging.INFO,
            format="%(levelname)s %(name)s: %(message)s",
        )

    try:
        return args.handler(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except REFUSALS as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_REFUSED
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
