"""
Command-line front end.

Subcommands:
- eval:    G(z, n) by a named representation or an oracle
- fundsol: exact fundamental-solution tables, optionally with the stencil check
- verify:  one verification suite, pass/fail per case
- walk:    killed-walk expectation by truncated sum next to the resolvent value

Exit codes: 0 success, 2 region error, 3 convergence or verification failure (also
a computation that rejects validated arguments), 4 malformed arguments.
"""

import argparse
import cmath
import csv
import json
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from src import config
from src.kernel.errors import ConvergenceError, RegionError
from src.kernel.fundamental_solutions import OPERATORS, Channels, check_fundamental, fundsol_table
from src.kernel.resolvent import REPRESENTATIONS, GreenValue
from src.utils.console import log_error, log_info, log_success
from src.verification.oracles import (
    WalkConfig,
    laplace_bessel,
    quadrature_torus,
    walk_expectation,
    walk_expectation_resolvent,
)
from src.verification.suites import SUITES, run_suite

EXIT_OK = 0
EXIT_REGION = 2
EXIT_FAILURE = 3
EXIT_USAGE = 4

MAX_FUNDSOL_RANGE = 64

# Methods restricted to one lattice dimension; anything missing works for every d.
METHOD_DIMS: Dict[str, Tuple[int, ...]] = {
    "closed1d": (1,),
    "thresh0-1d": (1,),
    "thresh4-1d": (1,),
    "embedded2d": (2,),
    "endpoint2d": (2,),
    "recurrence2d": (2,),
    "quadrature": (1, 2, 3),
}

ORACLE_METHODS = {
    "quadrature": lambda d, z, n, tol: quadrature_torus(d, z, n, tol=tol),
    "bessel-laplace": lambda d, z, n, tol: laplace_bessel(d, z, n, tol=max(tol, 1e-13)),
}

METHODS = list(REPRESENTATIONS) + list(ORACLE_METHODS)

# Operators whose fundamental solution has an imaginary part.
IMAGINARY_OPS = ("h0-4", "dalembertian")


class UsageError(ValueError):
    """An argument combination argparse cannot reject on its own."""


class LatticeArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that exits with EXIT_USAGE on malformed input."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"❌ {self.prog}: {message}", file=sys.stderr, flush=True)
        sys.exit(EXIT_USAGE)


def parse_complex(text: str) -> complex:
    """Accept 'a', 'bi', 'a+bi' and 'a-bi' (also 'i' for the unit)."""
    s = text.strip().replace(" ", "").lower()
    if not s:
        raise argparse.ArgumentTypeError("empty complex number")
    if s.endswith("i"):
        body = s[:-1]
        if body == "" or body[-1] in "+-":
            body += "1"
        s = body + "j"
    try:
        value = complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as a+bi") from None
    if not cmath.isfinite(value):
        raise argparse.ArgumentTypeError(f"{text!r} is not finite")
    return value


def parse_point(text: str) -> Tuple[int, ...]:
    """Comma-separated integers, e.g. '2,1'."""
    try:
        coords = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as comma-separated integers") from None
    return coords


def _range_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= value <= MAX_FUNDSOL_RANGE:
        raise argparse.ArgumentTypeError(f"range must lie in [0, {MAX_FUNDSOL_RANGE}], got {value}")
    return value


def _complex_pair(value: complex) -> List[float]:
    return [value.real, value.imag]


def _emit_json(payload) -> None:
    # json writes floats with repr, which round-trips exactly
    print(json.dumps(payload, ensure_ascii=False), flush=True)


# --- eval ---

def _check_point_and_tol(args: argparse.Namespace) -> None:
    if args.dim < 1:
        raise UsageError(f"--dim must be positive, got {args.dim}")
    if len(args.n) != args.dim:
        raise UsageError(f"--n has {len(args.n)} coordinates but --dim is {args.dim}")
    if not args.tol > 0:
        raise UsageError(f"--tol must be positive, got {args.tol}")


def cmd_eval(args: argparse.Namespace) -> int:
    _check_point_and_tol(args)
    allowed = METHOD_DIMS.get(args.method)
    if allowed is not None and args.dim not in allowed:
        raise RegionError(f"method {args.method} needs d in {allowed}, got d={args.dim}")
    evaluator = ORACLE_METHODS.get(args.method) or REPRESENTATIONS[args.method]
    result: GreenValue = evaluator(args.dim, args.z, args.n, args.tol)
    payload = {
        "dim": args.dim,
        "z": _complex_pair(args.z),
        "n": list(args.n),
        "method": args.method,
        "representation": result.representation,
        "value": _complex_pair(complex(result.value)),
        "terms_used": result.terms_used,
        "err_estimate": result.err_estimate,
    }
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["dim", "z_re", "z_im", "n", "representation", "re", "im", "err_estimate"])
        writer.writerow([args.dim, repr(args.z.real), repr(args.z.imag), ",".join(map(str, args.n)),
                         result.representation, repr(result.value.real), repr(result.value.imag),
                         repr(result.err_estimate)])
    else:
        _emit_json(payload)
    return EXIT_OK


# --- fundsol ---

def _channels_dict(channels: Channels) -> Dict[str, str]:
    return {
        "rational": str(channels.rational),
        "inv_pi": str(channels.inv_pi),
        "log2_inv_pi": str(channels.log2_inv_pi),
    }


def cmd_fundsol(args: argparse.Namespace) -> int:
    imaginary = args.op in IMAGINARY_OPS
    rows = list(fundsol_table(args.op, args.range))
    failures = check_fundamental(args.op, args.range) if args.check else None

    if args.format == "csv":
        header = ["n1", "n2", "rational", "inv_pi", "log2_inv_pi", "float_total"]
        if imaginary:
            header += ["im_rational", "im_inv_pi", "im_log2_inv_pi", "float_imag"]
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        for n1, n2, value in rows:
            total = value.total
            row = [n1, n2, str(value.real.rational), str(value.real.inv_pi), str(value.real.log2_inv_pi),
                   repr(total.real)]
            if imaginary:
                row += [str(value.imag.rational), str(value.imag.inv_pi), str(value.imag.log2_inv_pi),
                        repr(total.imag)]
            writer.writerow(row)
        if failures is not None:
            writer.writerow(["check_radius", "passed", "failure_count"])
            writer.writerow([args.range, not failures, len(failures)])
            if failures:
                writer.writerow(["failure_n1", "failure_n2", "residual_re", "residual_im"])
                for (n1, n2), residual in failures:
                    total = complex(residual.total)
                    writer.writerow([n1, n2, repr(total.real), repr(total.imag)])
    else:
        entries = []
        for n1, n2, value in rows:
            entry = {"n": [n1, n2], "real": _channels_dict(value.real), "float_total": value.total.real}
            if imaginary:
                entry["imag"] = _channels_dict(value.imag)
                entry["float_imag"] = value.total.imag
            entries.append(entry)
        payload = {"op": args.op, "range": args.range, "values": entries}
        if failures is not None:
            payload["check"] = {
                "radius": args.range,
                "passed": not failures,
                "failures": [{"n": list(n), "residual": _complex_pair(r.total)} for n, r in failures],
            }
        _emit_json(payload)

    if failures is None:
        return EXIT_OK
    if failures:
        log_error(f"stencil check for {args.op}", RuntimeError(f"{len(failures)} points with residual != delta"))
        return EXIT_FAILURE
    log_success(f"stencil check for {args.op} holds exactly on |n_j| <= {args.range}")
    return EXIT_OK


# --- verify ---

def cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(args.suite, args.tol)
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["label", "residual", "tolerance", "passed"])
        for case in report.cases:
            writer.writerow([case.label, repr(case.residual), repr(case.tolerance), case.passed])
    else:
        _emit_json({
            "suite": report.name,
            "passed": report.passed,
            "cases": [
                {"label": c.label, "residual": c.residual, "tolerance": c.tolerance, "passed": c.passed}
                for c in report.cases
            ],
        })
    if report.passed:
        log_success(f"suite {report.name}: {len(report.cases)} cases passed")
        return EXIT_OK
    log_error(f"suite {report.name}", RuntimeError(f"{len(report.failures)} of {len(report.cases)} cases failed"))
    return EXIT_FAILURE


# --- walk ---

def cmd_walk(args: argparse.Namespace) -> int:
    _check_point_and_tol(args)
    if not 0.0 < args.eps < 1.0:
        raise UsageError(f"--eps must lie in (0, 1), got {args.eps}")
    if args.kmax is not None and args.kmax < 0:
        raise UsageError(f"--kmax must be nonnegative, got {args.kmax}")
    if args.kmax is None:
        cfg = WalkConfig.for_tolerance(args.dim, args.eps, args.tol)
    else:
        cfg = WalkConfig(args.dim, args.eps, args.kmax)
    log_info(f"walk d={cfg.dim} eps={cfg.eps}: summing k <= {cfg.kmax}")
    truncated = walk_expectation(cfg, args.n)
    resolvent = walk_expectation_resolvent(args.dim, args.eps, args.n)
    payload = {
        "dim": cfg.dim,
        "eps": cfg.eps,
        "n": list(args.n),
        "kmax": cfg.kmax,
        "truncated": truncated,
        "resolvent": resolvent,
        "tail_bound": cfg.tail_bound,
        "difference": abs(truncated - resolvent),
    }
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(list(payload))
        writer.writerow([",".join(map(str, v)) if isinstance(v, list) else repr(v) for v in payload.values()])
    else:
        _emit_json(payload)
    return EXIT_OK


# --- Parser ---

def create_parser() -> LatticeArgumentParser:
    parser = LatticeArgumentParser(
        prog="lattice_green.py",
        description="Lattice Green's function of the discrete Laplacian: evaluation, exact "
                    "fundamental solutions and cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p_eval = sub.add_parser("eval", help="evaluate G(z, n)")
    p_eval.add_argument("--dim", type=int, required=True)
    p_eval.add_argument("--z", type=parse_complex, required=True, help="a, bi, a+bi or a-bi")
    p_eval.add_argument("--n", type=parse_point, required=True, help="comma-separated, e.g. 2,1")
    p_eval.add_argument("--method", choices=METHODS, default="auto")
    p_eval.add_argument("--tol", type=float, default=config.DEFAULT_TOL)
    add_format(p_eval)
    p_eval.set_defaults(handler=cmd_eval)

    p_fund = sub.add_parser("fundsol", help="exact fundamental-solution table")
    p_fund.add_argument("--op", choices=list(OPERATORS), default="h0")
    p_fund.add_argument("--range", type=_range_arg, default=4)
    p_fund.add_argument("--check", action="store_true", help="add the exact stencil residual report")
    add_format(p_fund)
    p_fund.set_defaults(handler=cmd_fundsol)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", choices=list(SUITES), required=True)
    p_verify.add_argument("--tol", type=float, default=None)
    add_format(p_verify)
    p_verify.set_defaults(handler=cmd_verify)

    p_walk = sub.add_parser("walk", help="killed random walk expectation")
    p_walk.add_argument("--dim", type=int, required=True)
    p_walk.add_argument("--eps", type=float, required=True)
    p_walk.add_argument("--n", type=parse_point, required=True)
    p_walk.add_argument("--kmax", type=int, default=None)
    p_walk.add_argument("--tol", type=float, default=1e-12)
    add_format(p_walk)
    p_walk.set_defaults(handler=cmd_walk)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)
    context = f"{args.command} {' '.join(argv if argv is not None else sys.argv[1:])}"
    try:
        return args.handler(args)
    except RegionError as e:
        log_error(context, e)
        return EXIT_REGION
    except ConvergenceError as e:
        log_error(context, e)
        return EXIT_FAILURE
    except UsageError as e:
        log_error(context, e)
        return EXIT_USAGE
    except ValueError as e:
        # arguments already passed validation, so the computation itself refused
        log_error(context, e)
        return EXIT_FAILURE
