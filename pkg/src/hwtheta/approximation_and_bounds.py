"""Leading-order approximation, measured error, and the error bounds.

For small t at fixed rho = r*t the integral satisfies

    theta(rho/t, t) = 1/(2 pi t) * e^(-(F(rho) - pi^2/2)/t) * G(rho)
                      * (1 + vartheta(t, rho)),

and the conjectured path bound |delta| <= min(tau/35, 1) implies

    |vartheta(t, rho)| <= vartheta_max(t) <= t/70,

with equality structure captured by

    vartheta_max(t) = 1/sqrt(pi t) * Int_0^inf e^(-tau/t)
                      min(tau/35, 1) tau^(-1/2) dtau.

This module evaluates the leading term, measures vartheta against the
extended-precision oracle, evaluates vartheta_max in closed form through the
half-order exponential integral and the complementary error function, and
runs grid certifications of the bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import reference_quadrature as rq
from . import saddle_geometry as sg
from .errors import DomainError, HwThetaError
from .rho_one_series import theta_series_rho1

__all__ = [
    "ThetaApprox",
    "BoundRow",
    "BoundReport",
    "theta_leading",
    "theta_approx",
    "measure_vartheta",
    "vartheta_max",
    "ei_half",
    "erfc",
    "check_bound",
]

_HALF_PI_SQ = 0.5 * math.pi * math.pi
_SQRT_PI = math.sqrt(math.pi)

#: Second-order allowance |c2| t^2 for the adjusted bound flag; c2 is the
#: t^2 coefficient of the critical-point series, the only regime where the
#: next-order term is known exactly.
_C2 = abs(float(theta_series_rho1(3).coeffs[2]))


def _check_t(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t <= 0.0:
        raise DomainError(f"t must be a positive finite real, got {t!r}")
    return t


def theta_leading(rho: float, t: float) -> float:
    """Leading-order approximation 1/(2 pi t) e^(-(F - pi^2/2)/t) G."""
    t = _check_t(t)
    f_val = sg.F(rho)
    g_val = sg.G(rho)
    try:
        damp = math.exp(-(f_val - _HALF_PI_SQ) / t)
    except OverflowError:
        damp = math.inf
    return g_val / (2.0 * math.pi * t) * damp


def measure_vartheta(rho: float, t: float, cfg: rq.PrecisionConfig | None = None) -> float:
    """Measured relative error theta_direct/theta_leading - 1.

    The oracle's automatic precision covers only the e^(pi^2/(2t))
    cancellation; sub-critically the result is smaller again by
    e^(-(F - pi^2/2)/t), and the half-precision self-check rerun needs its
    own headroom.  Unless cfg.working_bits is set explicitly, the working
    precision is therefore doubled over the full cancellation budget:
    bits = 2*(ceil((pi^2/2 + max(0, F - pi^2/2))/t * log2 e) + 32).
    """
    t = _check_t(t)
    rho = float(rho)
    lead = theta_leading(rho, t)
    if cfg is None:
        cfg = rq.PrecisionConfig()
    if cfg.working_bits is None:
        f_val = sg.F(rho)
        cancel = (_HALF_PI_SQ + max(0.0, f_val - _HALF_PI_SQ)) / t * math.log2(math.e)
        bits = 2 * (int(math.ceil(cancel)) + 32)
        cfg = rq.PrecisionConfig(
            working_bits=max(64, bits),
            panel_points=cfg.panel_points,
            tail_tolerance=cfg.tail_tolerance,
            xi_max_override=cfg.xi_max_override,
        )
    result = rq.theta_direct(rho / t, t, cfg)
    return result.theta / lead - 1.0


def _erf_series(x: float) -> float:
    """erf(x) by its alternating Maclaurin series; accurate for |x| <= 1."""
    acc = 0.0
    term = x
    k = 0
    x2 = x * x
    while True:
        acc += term / (2 * k + 1)
        k += 1
        term *= -x2 / k
        if abs(term) < 1e-18 * (abs(acc) + 1e-300) or k > 80:
            break
    return 2.0 / _SQRT_PI * acc


def _erfc_cf(x: float) -> float:
    """erfc(x) for x >= 1 by the descending continued fraction

        erfc(x) = e^(-x^2)/sqrt(pi) / (x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...))))

    evaluated with the modified Lentz algorithm.  Convergence is geometric,
    slowest near x = 1 (a few dozen terms)."""
    tiny = 1e-300
    f = x if x != 0.0 else tiny
    c = f
    d = 0.0
    for n in range(1, 300):
        a = 0.5 * n
        d = x + a * d
        if d == 0.0:
            d = tiny
        c = x + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        ratio = c * d
        f *= ratio
        if abs(ratio - 1.0) < 1e-17:
            break
    return math.exp(-x * x) / _SQRT_PI / f


def erfc(x: float) -> float:
    """Complementary error function 2/sqrt(pi) * Int_x^inf e^(-s^2) ds.

    Alternating series below the crossover, continued fraction above,
    reflection for negative arguments.  The crossover sits at x = 1: there
    the series route 1 - erf(x) still has erfc(x) ~ 0.157, so the
    cancellation costs under one decimal digit, while the fraction already
    converges geometrically; this keeps the relative error within ~1e-15
    across [0, 10] (pushing the series to x = 2 would lose ~5e-13 near the
    joint through 1 - erf cancellation).
    """
    x = float(x)
    if x != x:
        raise DomainError("erfc is undefined for NaN")
    if x < 0.0:
        return 2.0 - erfc(-x)
    if x < 1.0:
        return 1.0 - _erf_series(x)
    return _erfc_cf(x)


def _erf_minus_gauss(x: float) -> float:
    """erf(x)/2 - x e^(-x^2)/sqrt(pi), summed directly for |x| <= 2.

    The two pieces agree to O(x^3), so forming them separately loses digits
    at small x; termwise their difference is the alternating series
    (1/sqrt(pi)) sum_{k>=1} (-1)^(k+1) (2k/(2k+1)) x^(2k+1)/k!.
    """
    acc = 0.0
    term = x  # becomes (-1)^(k+1) x^(2k+1)/k!
    x2 = x * x
    k = 1
    while True:
        term *= x2 / k
        contribution = term * (2 * k) / (2 * k + 1)
        acc += contribution
        if abs(contribution) < 1e-18 * (abs(acc) + 1e-300) or k > 60:
            break
        k += 1
        term = -term
    return acc / _SQRT_PI


def ei_half(z: float) -> float:
    """Half-order exponential integral Int_1^inf e^(-z u) sqrt(u) du.

    Computed through the upper incomplete gamma identity
    ei_half(z) = z^(-3/2) * Gamma(3/2, z) with
    Gamma(3/2, z) = sqrt(pi)/2 * erfc(sqrt z) + sqrt(z) e^(-z),
    which reduces everything to erfc plus elementary functions.
    """
    z = float(z)
    if not math.isfinite(z) or z <= 0.0:
        raise DomainError(f"ei_half requires z > 0, got {z!r}")
    sz = math.sqrt(z)
    gamma_upper = 0.5 * _SQRT_PI * erfc(sz) + sz * math.exp(-z)
    return z ** (-1.5) * gamma_upper


def vartheta_max(t: float) -> float:
    """Sharp bound vartheta_max(t) = t/70 - sqrt(z) ei_half(z)/sqrt(pi) + erfc(sqrt z),
    z = 35/t.

    This is the closed form of the defining integral
    1/sqrt(pi t) * Int_0^inf e^(-tau/t) min(tau/35, 1) tau^(-1/2) dtau;
    it increases from ~t/70 at small t to 1 as t -> infinity.  For small z
    the first two terms cancel to O(sqrt z), so that branch is rearranged
    through the lower incomplete gamma as
    (erf(sqrt z)/2 - sqrt(z) e^(-z)/sqrt(pi)) / z + erfc(sqrt z)
    with the bracket summed termwise to dodge the residual O(z^(3/2))
    cancellation.
    """
    t = _check_t(t)
    z = 35.0 / t
    sz = math.sqrt(z)
    if sz >= 2.0:
        return t / 70.0 - sz * ei_half(z) / _SQRT_PI + erfc(sz)
    return _erf_minus_gauss(sz) / z + erfc(sz)


@dataclass(frozen=True)
class ThetaApprox:
    """Leading-order value with its error bounds at one (rho, t).

    vartheta_measured is present only when the oracle comparison was
    requested; by construction it equals theta_direct/theta_leading - 1.
    """

    t: float
    rho: float
    theta_leading: float
    vartheta_measured: float | None
    bound_simple: float
    bound_strong: float


def theta_approx(
    rho: float,
    t: float,
    cfg: rq.PrecisionConfig | None = None,
    measure: bool = False,
) -> ThetaApprox:
    """Bundle the leading-order value with both bounds, optionally measured."""
    t = _check_t(t)
    rho = float(rho)
    return ThetaApprox(
        t=t,
        rho=rho,
        theta_leading=theta_leading(rho, t),
        vartheta_measured=measure_vartheta(rho, t, cfg) if measure else None,
        bound_simple=t / 70.0,
        bound_strong=vartheta_max(t),
    )


class BoundRow(NamedTuple):
    rho: float
    t: float
    vartheta: float
    bound_simple: float
    bound_strong: float
    pass_simple: bool
    pass_adjusted: bool
    pass_strong: bool


@dataclass(frozen=True)
class BoundReport:
    """Grid certification of the error bounds; failed oracle cells listed."""

    rows: tuple[BoundRow, ...]
    failures: tuple[tuple[float, float, str], ...]

    CSV_HEADER = (
        "rho,t,vartheta,bound_simple,bound_strong,"
        "pass_simple,pass_adjusted,pass_strong"
    )

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for row in self.rows:
            lines.append(
                f"{row.rho:.17g},{row.t:.17g},{row.vartheta:.17g},"
                f"{row.bound_simple:.17g},{row.bound_strong:.17g},"
                f"{str(row.pass_simple).lower()},"
                f"{str(row.pass_adjusted).lower()},"
                f"{str(row.pass_strong).lower()}"
            )
        return "\n".join(lines) + "\n"

    @property
    def all_pass_strong(self) -> bool:
        return all(row.pass_strong for row in self.rows) and not self.failures

    @property
    def max_ratio_simple(self) -> float:
        """Largest observed |vartheta| * 70/t, the margin against the t/70 bound."""
        return max((abs(r.vartheta) * 70.0 / r.t for r in self.rows), default=0.0)


def check_bound(
    rho_grid: Sequence[float],
    t_grid: Sequence[float],
    cfg: rq.PrecisionConfig | None = None,
) -> BoundReport:
    """Measure vartheta on a grid and flag each cell against three bounds.

    pass_simple:   |vartheta| <= t/70
    pass_adjusted: |vartheta| <= t/70 + |c2| t^2   (second-order allowance;
                   the strict bound is a leading-order statement and the t^2
                   term matters at moderate t)
    pass_strong:   |vartheta| <= vartheta_max(t)

    Oracle failures (e.g. precision overflow for a too-small t) are recorded
    per cell, not raised.
    """
    rho_grid = [float(r) for r in rho_grid]
    t_grid = [float(t) for t in t_grid]
    if not rho_grid or not t_grid:
        raise DomainError("bound grids must be non-empty")
    for rho in rho_grid:
        if not math.isfinite(rho) or rho <= 0.0:
            raise DomainError(f"rho grid must be positive, got {rho!r}")
    for t in t_grid:
        _check_t(t)

    rows: list[BoundRow] = []
    failures: list[tuple[float, float, str]] = []
    for rho in rho_grid:
        for t in t_grid:
            try:
                vt = measure_vartheta(rho, t, cfg)
            except HwThetaError as exc:
                failures.append((rho, t, str(exc)))
                continue
            simple = t / 70.0
            strong = vartheta_max(t)
            rows.append(
                BoundRow(
                    rho=rho,
                    t=t,
                    vartheta=vt,
                    bound_simple=simple,
                    bound_strong=strong,
                    pass_simple=abs(vt) <= simple,
                    pass_adjusted=abs(vt) <= simple + _C2 * t * t,
                    pass_strong=abs(vt) <= strong,
                )
            )
    return BoundReport(rows=tuple(rows), failures=tuple(failures))
