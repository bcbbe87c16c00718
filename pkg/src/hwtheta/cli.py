"""Command-line front end.

Subcommands
-----------
eval          one theta value by a chosen method (direct quadrature,
              leading-order asymptotic, or the critical-point series)
sweep-delta   CSV table of delta(tau, rho) and its bound ratio over a grid
delta-prime   CSV table of the small-tau slope delta'(0, rho) over a rho range
series        exact coefficients of the critical-point expansions
verify-bound  grid certification of the error bounds, CSV plus summary

Exit codes: 0 success, 2 usage or domain error, 3 numerical or precision
failure.  verify-bound additionally exits 1 when every cell evaluated but
some cell violates the strong bound (a certification negative, not an
error).  All CSV output is UTF-8 with LF line endings, a header row, and
numbers at 17 significant digits; identical invocations produce byte
identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import approximation_and_bounds as ab
from . import descent_path as dp
from . import reference_quadrature as rq
from . import rho_one_series as rs
from .errors import DomainError, HwThetaError
from .saddle_geometry import EPS_CRIT

__all__ = ["main"]


def _parse_float_list(text: str, name: str) -> list[float]:
    items = [piece.strip() for piece in text.split(",") if piece.strip()]
    if not items:
        raise DomainError(f"{name} must be a non-empty comma-separated list of numbers")
    try:
        return [float(piece) for piece in items]
    except ValueError:
        raise DomainError(f"{name} contains a non-numeric entry: {text!r}") from None


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _cmd_eval(args) -> int:
    rho = float(args.rho)
    t = float(args.t)
    if not math.isfinite(rho) or rho <= 0.0:
        raise DomainError(f"--rho must be positive, got {args.rho!r}")
    if not math.isfinite(t) or t <= 0.0:
        raise DomainError(f"--t must be positive, got {args.t!r}")

    if args.method == "direct":
        cfg = rq.PrecisionConfig(working_bits=args.bits)
        result = rq.theta_direct(rho / t, t, cfg)
    elif args.method == "asymptotic":
        value = ab.theta_leading(rho, t)
        result = rq.EvalResult(
            theta=value,
            method=rq.Method.ASYMPTOTIC,
            precision_used_bits=53,
            error_estimate=min(ab.vartheta_max(t), 1.0),
        )
    else:  # series
        if abs(rho - 1.0) > EPS_CRIT:
            raise DomainError(
                f"--method series is valid only within |rho - 1| <= {EPS_CRIT:g}, "
                f"got rho={rho!r}"
            )
        series = rs.theta_series_rho1(7)
        value = series.evaluate(t, nterms=6)
        bracket = series.bracket(t, nterms=6)
        result = rq.EvalResult(
            theta=value,
            method=rq.Method.SERIES_RHO1,
            precision_used_bits=53,
            error_estimate=series.term_magnitude(t, 6) / abs(bracket),
        )

    if args.json:
        payload = {
            "theta": result.theta,
            "method": result.method.value,
            "precision_used_bits": result.precision_used_bits,
            "error_estimate": result.error_estimate,
        }
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write(
            f"theta = {result.theta:.17g}\n"
            f"method = {result.method.value}\n"
            f"precision_used_bits = {result.precision_used_bits}\n"
            f"error_estimate = {result.error_estimate:.17g}\n"
        )
    return 0


def _cmd_sweep_delta(args) -> int:
    rho_grid = sorted(_parse_float_list(args.rho_list, "--rho-list"))
    if args.points < 2:
        raise DomainError(f"--points must be >= 2, got {args.points}")
    tau_max = float(args.tau_max)
    if not math.isfinite(tau_max) or tau_max <= 0.0:
        raise DomainError(f"--tau-max must be positive, got {args.tau_max!r}")
    tau_grid = [tau_max * i / args.points for i in range(1, args.points + 1)]
    table = dp.sweep_delta(rho_grid, tau_grid)
    for rho, tau, message in table.failures:
        print(f"cell (rho={rho:g}, tau={tau:g}) failed: {message}", file=sys.stderr)
    _write_output(table.to_csv(), args.out)
    return 0


def _cmd_delta_prime(args) -> int:
    rho_min = float(args.rho_min)
    rho_max = float(args.rho_max)
    points = int(args.points)
    if points < 2:
        raise DomainError(f"--points must be >= 2, got {args.points}")
    if not (0.0 < rho_min < rho_max) or not math.isfinite(rho_max):
        raise DomainError(
            f"need 0 < --rho-min < --rho-max, got {args.rho_min!r}, {args.rho_max!r}"
        )
    log_lo = math.log(rho_min)
    log_hi = math.log(rho_max)
    lines = ["rho,delta_prime0"]
    for i in range(points):
        rho = math.exp(log_lo + (log_hi - log_lo) * i / (points - 1))
        try:
            slope = dp.delta_prime_at_zero(rho)
        except HwThetaError as exc:
            print(f"cell rho={rho:g} failed: {exc}", file=sys.stderr)
            continue
        lines.append(f"{rho:.17g},{slope:.17g}")
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def _series_line(exponent, coeff: rs.Q6, decimals: int | None) -> str:
    over6 = coeff.as_over_root6()
    if over6 is not None and coeff.b != 0:
        text = f"({over6})/sqrt(6)"
    else:
        text = str(coeff)
    if decimals is not None:
        text += f"  =  {coeff.decimal_str(decimals)}"
    return f"  tau^({exponent})  {text}"


def _cmd_series(args) -> int:
    order = int(args.order)
    if order < 1:
        raise DomainError(f"--order must be >= 1, got {args.order}")
    decimals = args.decimal
    out = []
    img = rs.im_g_series(order)
    out.append(f"Im g(tau, 1): sum of a_k tau^(k - 1/2), {order} terms")
    for exponent, coeff in img.terms():
        out.append(_series_line(exponent, coeff, decimals))
    theta = rs.theta_series_rho1(order)
    out.append("")
    out.append(
        f"theta(1/t, t) = {rs.ThetaSeries.PREFACTOR_TEXT} * sum of c_k t^k, "
        f"{order} terms"
    )
    for k, c in enumerate(theta.coeffs):
        line = f"  t^{k}  {c}"
        if decimals is not None:
            line += f"  =  {rs.Q6.rational(c).decimal_str(decimals)}"
        out.append(line)
    delta = rs.delta_series(order)
    out.append("")
    out.append(f"delta(tau, 1): sum of d_j tau^j, {order} terms")
    for exponent, coeff in delta.terms():
        out.append(_series_line(exponent, coeff, decimals))
    if args.full:
        zeta2 = rs.invert_zeta_equation(max(order, 2))
        out.append("")
        out.append(
            f"zeta^2(tau): sum of b_m (-tau)^(m/2) under sqrt(-tau) = -i sqrt(tau), "
            f"{zeta2.order} terms"
        )
        for exponent, coeff in zeta2.terms():
            line = f"  (-tau)^({exponent})  {coeff}"
            if decimals is not None:
                line += f"  =  {coeff.decimal_str(decimals)}"
            out.append(line)
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def _cmd_verify_bound(args) -> int:
    rho_grid = sorted(_parse_float_list(args.rho_grid, "--rho-grid"))
    t_grid = sorted(_parse_float_list(args.t_grid, "--t-grid"))
    report = ab.check_bound(rho_grid, t_grid)
    _write_output(report.to_csv(), args.out)
    for rho, t, message in report.failures:
        print(f"cell (rho={rho:g}, t={t:g}) failed: {message}", file=sys.stderr)
    print(
        f"max |vartheta|*70/t = {report.max_ratio_simple:.17g} "
        f"over {len(report.rows)} cells",
        file=sys.stderr if args.out is None else sys.stdout,
    )
    if report.failures:
        return 3
    return 0 if report.all_pass_strong else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hwtheta",
        description=(
            "Evaluate the Hartman-Watson integral theta(rho/t, t) and certify "
            "its leading-order error bounds (rho = r*t is the similarity "
            "variable)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate theta(rho/t, t) by one method")
    p_eval.add_argument("--rho", type=float, required=True)
    p_eval.add_argument("--t", type=float, required=True)
    p_eval.add_argument(
        "--method",
        choices=["direct", "asymptotic", "series"],
        required=True,
        help="direct extended-precision quadrature, leading-order saddle-point "
        "approximation, or the critical-point series (needs |rho - 1| <= 1e-6)",
    )
    p_eval.add_argument(
        "--bits",
        type=int,
        default=None,
        help="working precision for --method direct (default: automatic)",
    )
    p_eval.add_argument("--json", action="store_true", help="emit a JSON object")
    p_eval.set_defaults(func=_cmd_eval)

    p_sweep = sub.add_parser(
        "sweep-delta", help="CSV of delta(tau, rho) over a tau grid per rho"
    )
    p_sweep.add_argument("--rho-list", required=True, help="comma-separated rho values")
    p_sweep.add_argument("--tau-max", type=float, required=True)
    p_sweep.add_argument(
        "--points", type=int, required=True, help="tau samples: tau_max*i/points"
    )
    p_sweep.add_argument("--out", default=None, help="output file (default stdout)")
    p_sweep.set_defaults(func=_cmd_sweep_delta)

    p_prime = sub.add_parser(
        "delta-prime", help="CSV of delta'(0, rho) on a log-spaced rho grid"
    )
    p_prime.add_argument("--rho-min", type=float, required=True)
    p_prime.add_argument("--rho-max", type=float, required=True)
    p_prime.add_argument("--points", type=int, required=True)
    p_prime.add_argument("--out", default=None, help="output file (default stdout)")
    p_prime.set_defaults(func=_cmd_delta_prime)

    p_series = sub.add_parser(
        "series", help="exact coefficients of the critical-point expansions"
    )
    p_series.add_argument("--order", type=int, required=True, help="terms per series")
    p_series.add_argument(
        "--decimal",
        type=int,
        default=None,
        metavar="P",
        help="also print P-digit decimal renderings",
    )
    p_series.add_argument(
        "--full",
        action="store_true",
        help="also print the zeta^2 reversion coefficients",
    )
    p_series.set_defaults(func=_cmd_series)

    p_verify = sub.add_parser(
        "verify-bound", help="certify the error bounds on a (rho, t) grid"
    )
    p_verify.add_argument(
        "--rho-grid",
        default="0.25,0.5,0.9,1,1.1,2,4",
        help="comma-separated rho values",
    )
    p_verify.add_argument(
        "--t-grid", default="0.05,0.1,0.2", help="comma-separated t values"
    )
    p_verify.add_argument("--out", default=None, help="output file (default stdout)")
    p_verify.set_defaults(func=_cmd_verify_bound)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HwThetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
