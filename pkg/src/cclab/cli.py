"""Command line front end with machine-readable reports.

Every subcommand writes one canonical JSON (or, for measure, CSV) report
and exits 0 on success, 1 when a verified invariant fails, and 2 on usage
problems such as missing or malformed files.  Reports embed the tool
version, the seed, and the active size guards; identical invocations with
the same seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from ._version import __version__
from .compilers import (
    DEFAULT_GUESS_LIMIT,
    compile_polynomial,
    polynomial_cost_bound,
    polynomial_guess_bound,
)
from .matrices import (
    BooleanMatrix,
    MatrixFormatError,
    SignMatrix,
    SizeGuardError,
    parse_matrix,
)
from .measures import (
    BP_MAX_CELLS,
    bp_measure,
    disc,
    disc_prime,
    entry_count_measure,
    family_cost_measure,
    inverse_disc_log_measure,
    margin_measure,
    mc,
)
from .pipeline import parse_randomized_polynomial, run_pipeline
from .polynomials import format_polynomial, parse_polynomial
from .protocols import (
    MATERIALIZE_LIMIT,
    DomainMismatchError,
    dumps_protocol,
    loads_protocol,
    pp_cost,
)
from .randomized import amplify, majority_success_bound, sparsify_support
from .suites import SUITES, _jsonable, canonical_report_json, run_suite


class UsageError(Exception):
    """A problem with the invocation or its input files; exit status 2."""


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_matrix(path: str):
    try:
        return parse_matrix(_read_text(path))
    except MatrixFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_sign_matrix(path: str) -> SignMatrix:
    matrix = _load_matrix(path)
    if not isinstance(matrix, SignMatrix):
        raise UsageError(
            f"{path} holds a boolean matrix; this measure expects a sign matrix"
        )
    return matrix


def _load_boolean_matrix(path: str) -> BooleanMatrix:
    matrix = _load_matrix(path)
    if not isinstance(matrix, BooleanMatrix):
        raise UsageError(
            f"{path} holds a sign matrix; this measure expects a boolean matrix"
        )
    return matrix


def _load_protocol(path: str):
    try:
        return loads_protocol(_read_text(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: bad protocol file: {exc}") from None


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _envelope(command: str, seed: int, guards: dict, body: dict) -> dict:
    report = {
        "command": command,
        "version": __version__,
        "seed": seed,
        "guards": guards,
    }
    report.update(body)
    return report


def _distribution_grid(dist) -> list:
    return [[str(w) for w in row] for row in dist.weights]


# ---------------------------------------------------------------------------
# subcommands; each returns (report, exit_status)


def _run_measure(args) -> tuple[dict, int]:
    guards = {"bp_max_cells": BP_MAX_CELLS}
    status = 0

    if args.which == "disc":
        matrix = _load_sign_matrix(args.matrix)
        result = disc(matrix)
        body = {
            "which": "disc",
            "matrix": args.matrix,
            "value": result.value,
            "value_float": float(result.value),
            "iterations": result.iterations,
            "distribution": _distribution_grid(result.distribution),
            "witness_rows": list(result.witness.row_set),
            "witness_cols": list(result.witness.col_set),
        }
    elif args.which == "disc-prime":
        matrix = _load_boolean_matrix(args.matrix)
        result = disc_prime(matrix)
        body = {
            "which": "disc-prime",
            "matrix": args.matrix,
            "value": result.value,
            "value_float": float(result.value),
            "iterations": result.iterations,
            "distribution": _distribution_grid(result.distribution),
            "witness_rows": list(result.witness.row_set),
            "witness_cols": list(result.witness.col_set),
        }
    elif args.which == "mc":
        matrix = _load_sign_matrix(args.matrix)
        realization = mc(matrix, seed=args.seed)
        bracket = disc(matrix).value
        lower = Fraction(1, 8) / bracket
        upper = 8 / bracket
        within = float(lower) - 1e-9 <= realization.value <= float(upper) + 1e-6
        if not within:
            status = 1
            print(
                "invariant failed: margin-discrepancy sandwich: "
                f"mc {realization.value} outside [{float(lower)}, {float(upper)}]",
                file=sys.stderr,
            )
        body = {
            "which": "mc",
            "matrix": args.matrix,
            "value": realization.value,
            "margin": realization.margin,
            "restarts_used": realization.restarts_used,
            "disc": bracket,
            "bracket_lower": lower,
            "bracket_lower_float": float(lower),
            "bracket_upper": upper,
            "bracket_upper_float": float(upper),
            "within_bracket": within,
        }
    else:
        matrix = _load_boolean_matrix(args.matrix)
        if args.eps is None:
            raise UsageError("the bp measure requires --eps")
        if not 0 <= args.eps <= 1:
            raise UsageError(f"--eps must lie in [0, 1], got {args.eps}")
        if args.lam == "entry-count":
            measure = entry_count_measure()
        elif args.lam == "log-inverse-disc":
            measure = inverse_disc_log_measure()
        elif args.lam == "margin-complexity":
            measure = margin_measure(seed=args.seed)
        else:
            if not args.family:
                raise UsageError("--lambda family-cost requires --family FILE")
            family = [_load_protocol(path) for path in args.family]
            measure = family_cost_measure(family)
        result = bp_measure(measure, matrix, args.eps)
        body = {
            "which": "bp",
            "matrix": args.matrix,
            "lambda": measure.name,
            "eps": args.eps,
            "value": result.value,
            "prefix_index": result.prefix_index,
            "candidate_count": result.candidate_count,
            "distribution": _distribution_grid(result.distribution),
            "witness_matrix": [list(row) for row in result.matrix.entries],
        }
    return _envelope("measure", args.seed, guards, body), status


def _run_compile(args) -> tuple[dict, int]:
    guards = {"max_guesses": args.max_guesses}
    members = [_load_protocol(path) for path in args.members]
    try:
        poly = parse_polynomial(args.poly, nvars=len(members))
    except ValueError as exc:
        raise UsageError(f"bad polynomial: {exc}") from None
    try:
        compiled = compile_polynomial(members, poly, max_guesses=args.max_guesses)
    except DomainMismatchError as exc:
        raise UsageError(str(exc)) from None

    rows, cols = compiled.rows, compiled.cols
    for x in range(rows):
        for y in range(cols):
            gaps = tuple(m.gap[x][y] for m in members)
            expected = poly.evaluate(gaps)
            assert compiled.gap[x][y] == expected, (
                "compiled gap equals the polynomial of member gaps: "
                f"got {compiled.gap[x][y]}, expected {expected} at input ({x},{y})"
            )
    l_max = max(m.guess_count for m in members)
    c_max = max(m.max_depth for m in members)
    body = {
        "polynomial": format_polynomial(poly),
        "arity": len(members),
        "rows": rows,
        "cols": cols,
        "member_guesses": [m.guess_count for m in members],
        "member_costs": [pp_cost(m) for m in members],
        "guess_count": compiled.guess_count,
        "pp_cost": pp_cost(compiled),
        "guess_bound": polynomial_guess_bound(poly, l_max),
        "cost_bound": polynomial_cost_bound(poly, l_max, c_max),
        "gap": [[g for g in row] for row in compiled.gap],
    }
    if args.emit_protocol is not None:
        with open(args.emit_protocol, "w", encoding="utf-8") as handle:
            handle.write(dumps_protocol(compiled))
        body["emitted_protocol"] = args.emit_protocol
    return _envelope("compile", args.seed, guards, body), 0


def _run_amplify(args) -> tuple[dict, int]:
    guards = {"materialize_limit": MATERIALIZE_LIMIT}
    rphi = _parse_pipeline_input(args.input)
    target = _load_boolean_matrix(args.matrix)
    result = run_pipeline(rphi, target)
    rp = result.protocol
    base_error = rp.error(target)

    try:
        amped = amplify(rp, args.times)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    measured = amped.error(target)
    advantage = Fraction(1, 2) - base_error
    bound = 1 - majority_success_bound(advantage, args.times)
    assert measured <= bound, (
        "amplified error within the majority success bound: "
        f"measured {measured} exceeds {bound}"
    )
    status = 0
    body = {
        "input": args.input,
        "matrix": args.matrix,
        "times": args.times,
        "base_error": base_error,
        "base_support": len(rp.support),
        "base_cost": rp.cost(),
        "amplified_error": measured,
        "amplified_support": len(amped.support),
        "amplified_cost": amped.cost(),
        "error_bound": bound,
        "error_bound_float": float(bound),
    }
    if args.eps is not None:
        body["eps"] = args.eps
        body["meets_eps"] = measured <= args.eps
        if not body["meets_eps"]:
            status = 1
            print(
                "invariant failed: amplified error at most eps: "
                f"measured {measured} exceeds {args.eps}",
                file=sys.stderr,
            )
    if args.delta is not None:
        sparse, search = sparsify_support(
            amped, target, args.delta, args.trials, seed=args.seed
        )
        body["delta"] = args.delta
        body["trials"] = args.trials
        body["sparsified_support"] = len(sparse.support)
        body["sparsified_error"] = sparse.error(target)
        body["sparsify_search"] = search
    return _envelope("amplify", args.seed, guards, body), status


def _parse_pipeline_input(path: str):
    try:
        return parse_randomized_polynomial(_read_text(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: bad pipeline input: {exc}") from None


def _run_pipeline_command(args) -> tuple[dict, int]:
    guards = {"materialize_limit": MATERIALIZE_LIMIT}
    rphi = _parse_pipeline_input(args.input)
    target = _load_boolean_matrix(args.matrix)
    result = run_pipeline(rphi, target)
    body = {"input": args.input, "matrix": args.matrix}
    body.update(result.report)
    return _envelope("pipeline", args.seed, guards, body), 0


def _run_verify(args) -> tuple[dict, int]:
    report = run_suite(args.suite, seed=args.seed)
    if report["status"] == "pass":
        return report, 0
    failing = [c["id"] for c in report["cases"] if c["status"] != "pass"]
    shown = ", ".join(failing[:5])
    print(
        f"invariant failed: suite {args.suite}: {report['failed']} "
        f"failing case(s): {shown}",
        file=sys.stderr,
    )
    return report, 1


# ---------------------------------------------------------------------------
# rendering and entry point


def _render_csv(report: dict) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key in sorted(report):
        value = _jsonable(report[key])
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        writer.writerow([key, value])
    return buffer.getvalue()


def _emit(report: dict, fmt: str, out: Optional[str]) -> None:
    text = _render_csv(report) if fmt == "csv" else canonical_report_json(report)
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cclab",
        description="Desk-scale laboratory for guess protocols and matrix measures.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    measure = sub.add_parser("measure", help="matrix measures and the perturbation game")
    measure.add_argument("--matrix", required=True, help="matrix file (bool or sign)")
    measure.add_argument(
        "--which",
        required=True,
        choices=["disc", "disc-prime", "mc", "bp"],
        help="which measure to compute",
    )
    measure.add_argument("--eps", type=_fraction, help="perturbation radius for bp")
    measure.add_argument(
        "--lambda",
        dest="lam",
        default="entry-count",
        choices=["entry-count", "log-inverse-disc", "margin-complexity", "family-cost"],
        help="underlying measure for bp",
    )
    measure.add_argument(
        "--family",
        action="append",
        metavar="FILE",
        help="protocol file for --lambda family-cost (repeatable)",
    )
    measure.add_argument("--seed", type=_seed, default=0)
    measure.add_argument("--format", choices=["json", "csv"], default="json")
    measure.add_argument("--out", help="write the report here instead of stdout")
    measure.set_defaults(run=_run_measure)

    compile_cmd = sub.add_parser("compile", help="compile a polynomial of protocols")
    compile_cmd.add_argument(
        "--poly", required=True, help="polynomial in z1..zk, e.g. '2*z1^2 - z2'"
    )
    compile_cmd.add_argument(
        "--members", required=True, nargs="+", metavar="FILE", help="protocol files"
    )
    compile_cmd.add_argument("--max-guesses", type=int, default=DEFAULT_GUESS_LIMIT)
    compile_cmd.add_argument(
        "--emit-protocol", metavar="FILE", help="also write the compiled protocol"
    )
    compile_cmd.add_argument("--seed", type=_seed, default=0)
    compile_cmd.add_argument("--out", help="write the report here instead of stdout")
    compile_cmd.set_defaults(run=_run_compile, format="json")

    amplify_cmd = sub.add_parser("amplify", help="majority-amplify a pipeline protocol")
    amplify_cmd.add_argument("--input", required=True, help="pipeline input file")
    amplify_cmd.add_argument("--matrix", required=True, help="target boolean matrix file")
    amplify_cmd.add_argument("--times", type=int, default=3, help="odd repetition count")
    amplify_cmd.add_argument("--eps", type=_fraction, help="required amplified error")
    amplify_cmd.add_argument("--delta", type=_fraction, help="sparsify within delta")
    amplify_cmd.add_argument(
        "--trials", type=int, default=64, help="sparsified support size"
    )
    amplify_cmd.add_argument("--seed", type=_seed, default=0)
    amplify_cmd.add_argument("--out", help="write the report here instead of stdout")
    amplify_cmd.set_defaults(run=_run_amplify, format="json")

    pipeline_cmd = sub.add_parser(
        "pipeline", help="compile and verify a randomized rectangle polynomial"
    )
    pipeline_cmd.add_argument("--input", required=True, help="pipeline input file")
    pipeline_cmd.add_argument(
        "--matrix", required=True, help="target boolean matrix file"
    )
    pipeline_cmd.add_argument("--seed", type=_seed, default=0)
    pipeline_cmd.add_argument("--out", help="write the report here instead of stdout")
    pipeline_cmd.set_defaults(run=_run_pipeline_command, format="json")

    verify = sub.add_parser("verify", help="run a property-verification suite")
    verify.add_argument("--suite", required=True, choices=sorted(SUITES))
    verify.add_argument("--seed", type=_seed, default=0)
    verify.add_argument("--out", help="write the report here instead of stdout")
    verify.set_defaults(run=_run_verify, format="json")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, status = args.run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MatrixFormatError, SizeGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"invariant failed: {exc}", file=sys.stderr)
        return 1
    _emit(report, getattr(args, "format", "json"), args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
