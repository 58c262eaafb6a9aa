"""Command-line interface: batch analyses over JSON files.

Subcommands: check, synthesize, convert, spectrum, factor, example.
Exit codes: 0 success / realizable, 1 not realizable, 2 input or usage error,
3 inconclusive.  Reports are JSON with sorted keys, written to --output or to
stdout; human-readable diagnostics go to stderr.
"""

import argparse
import sys

import numpy as np

from . import jsonio
from .errors import (
    DimensionError,
    NotRealizableError,
    SamplePlacementError,
    SchemaError,
    SingularMatrixError,
    StructureError,
)
from .realizability import (
    check_pr_frequency,
    check_pr_time_domain,
    synthesize,
)
from .skewfactor import cholesky_like
from .statespace import spectrum_report
from .structured import j_matrix
from .worked_example import run_worked_example

__all__ = ["main", "entrypoint"]

EXIT_OK = 0
EXIT_NOT_PR = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

_VERDICT_EXIT = {"PR": EXIT_OK, "not-PR": EXIT_NOT_PR, "inconclusive": EXIT_INCONCLUSIVE}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oqho",
        description=(
            "Decide physical realizability of linear systems as open quantum "
            "harmonic oscillators, synthesize and convert their parameters, "
            "factor commutation matrices, and report pole/zero diagnostics."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, needs_input=True, theta=False, sampling=False,
            direction=False):
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("--input", required=True, metavar="PATH",
                           help="input JSON file")
        p.add_argument("--output", metavar="PATH",
                       help="output JSON file (default: stdout)")
        if theta:
            p.add_argument("--theta", metavar="{J|PATH}", default=None,
                           help="commutation matrix: the literal J or a "
                                "real-matrix JSON file")
        p.add_argument("--tol", type=float, default=1e-8,
                       help="residual tolerance (default 1e-8)")
        if sampling:
            p.add_argument("--samples", type=int, default=20,
                           help="number of frequency sample points (default 20)")
            p.add_argument("--seed", type=int, default=42,
                           help="sample placement seed (default 42)")
        if direction:
            p.add_argument("--direction", required=True,
                           choices=("pm2ac", "ac2pm"),
                           help="conversion direction")
        return p

    add("check", "decide realizability of a system", theta=True, sampling=True)
    add("synthesize", "recover oscillator parameters of a realizable system",
        theta=True, sampling=True)
    add("convert", "convert between the two parameterizations", direction=True)
    add("spectrum", "poles, zeros, mirror and genericity report")
    add("factor", "factor a skew-symmetric commutation matrix")
    add("example", "run the embedded reference model end to end",
        needs_input=False, sampling=True)
    return parser


def _emit(text: str, output_path) -> None:
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    return EXIT_USAGE


def _resolve_theta(selector: str, dim: int) -> np.ndarray:
    if selector == "J":
        return j_matrix(dim) if dim else np.zeros((0, 0))
    payload = jsonio.load_path(selector)
    if jsonio.detect_payload(payload) != "real_matrix":
        raise SchemaError(f"{selector} does not hold a real matrix payload")
    return jsonio.decode_real_matrix(payload, "theta")


def _check_sample_budget(num_samples: int, state_dim: int) -> None:
    if num_samples < state_dim + 1:
        raise SchemaError(
            f"--samples {num_samples} is too small: certification of a system "
            f"with {state_dim} states needs at least {state_dim + 1} points"
        )


def _cmd_check(args) -> int:
    ss = jsonio.system_from_payload(jsonio.load_path(args.input))
    if args.theta is None:
        _check_sample_budget(args.samples, ss.state_dim)
        report = check_pr_frequency(ss, tol=args.tol, num_samples=args.samples,
                                    seed=args.seed)
    else:
        theta = _resolve_theta(args.theta, ss.state_dim)
        report = check_pr_time_domain(ss, theta, tol=args.tol)
    _emit(jsonio.dumps(jsonio.encode_pr_report(report)), args.output)
    if report.failure_reason:
        sys.stderr.write(f"{report.verdict}: {report.failure_reason}\n")
    return _VERDICT_EXIT[report.verdict]


def _cmd_synthesize(args) -> int:
    ss = jsonio.system_from_payload(jsonio.load_path(args.input))
    _check_sample_budget(args.samples, ss.state_dim)
    selector = args.theta if args.theta is not None else "J"
    theta = None
    if selector != "J":
        theta = _resolve_theta(selector, ss.state_dim)
    try:
        result = synthesize(ss, theta_target=theta, tol=args.tol,
                            num_samples=args.samples, seed=args.seed)
    except NotRealizableError as exc:
        sys.stderr.write(f"error: {exc}\n")
        if exc.report is not None:
            _emit(jsonio.dumps(jsonio.encode_pr_report(exc.report)), args.output)
            if exc.report.verdict == "inconclusive":
                return EXIT_INCONCLUSIVE
        return EXIT_NOT_PR
    _emit(jsonio.dumps(jsonio.encode_synthesis_result(result)), args.output)
    if result.reduced_from is not None:
        sys.stderr.write(
            f"note: input reduced from {result.reduced_from} to "
            f"{result.params.R.shape[0]} states before synthesis\n"
        )
    return EXIT_OK


def _cmd_convert(args) -> int:
    payload = jsonio.load_path(args.input)
    kind = jsonio.detect_payload(payload)
    from .forms import ac_to_pm, pm_to_ac

    if args.direction == "pm2ac":
        if kind != "pm_params":
            raise SchemaError(
                f"direction pm2ac needs a pm_params payload, found '{kind}'"
            )
        converted = pm_to_ac(jsonio.decode_pm_params(payload), args.tol)
        _emit(jsonio.dumps(jsonio.encode_ac_params(converted)), args.output)
    else:
        if kind != "ac_params":
            raise SchemaError(
                f"direction ac2pm needs an ac_params payload, found '{kind}'"
            )
        converted = ac_to_pm(jsonio.decode_ac_params(payload), args.tol)
        _emit(jsonio.dumps(jsonio.encode_pm_params(converted)), args.output)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    ss = jsonio.system_from_payload(jsonio.load_path(args.input))
    report = spectrum_report(ss)
    _emit(jsonio.dumps(jsonio.encode_spectrum_report(report)), args.output)
    return EXIT_OK


def _cmd_factor(args) -> int:
    payload = jsonio.load_path(args.input)
    if jsonio.detect_payload(payload) != "real_matrix":
        raise SchemaError("factor needs a real matrix payload")
    theta = jsonio.decode_real_matrix(payload, "matrix")
    fact = cholesky_like(theta, args.tol)
    _emit(jsonio.dumps(jsonio.encode_skew_factorization(fact)), args.output)
    sys.stderr.write(
        f"reconstruction residual: {fact.reconstruction_residual(theta):.3e}\n"
    )
    return EXIT_OK


def _cmd_example(args) -> int:
    lines, payload = run_worked_example(tol=args.tol, num_samples=args.samples,
                                        seed=args.seed)
    sys.stdout.write("\n".join(lines) + "\n")
    if args.output:
        _emit(jsonio.dumps(payload), args.output)
    return EXIT_OK


_DISPATCH = {
    "check": _cmd_check,
    "synthesize": _cmd_synthesize,
    "convert": _cmd_convert,
    "spectrum": _cmd_spectrum,
    "factor": _cmd_factor,
    "example": _cmd_example,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (SchemaError, DimensionError, StructureError, SingularMatrixError,
            ValueError, OSError) as exc:
        return _fail(str(exc))
    except SamplePlacementError as exc:
        sys.stderr.write(f"inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE


def entrypoint() -> None:
    raise SystemExit(main())
