"""Saddle-point geometry of the phase h(xi) = xi^2/2 + rho*cosh(xi) - i*pi*xi.

The integral under study concentrates, for small t at fixed rho = r*t, around
stationary points of h in the upper half plane.  Their character switches at
rho = 1:

* ``0 < rho < 1``: a pair of saddles at ``A = x1 + i*pi`` and its mirror, with
  ``x1 > 0`` the root of ``rho*sinh(x1) = x1``.
* ``rho > 1``: a saddle on the imaginary axis at ``S = i*y1`` with
  ``y1 in (0, pi)`` the root of ``y1 + rho*sin(y1) = pi``.
* ``rho = 1``: the saddles coalesce at ``i*pi`` into a degenerate stationary
  point whose first non-zero derivative is the fourth.

This module solves the saddle equations, classifies the regime (with a small
tolerance band around rho = 1 where the degenerate formulas are the stable
ones), and produces the derived quantities used everywhere else: the local
amplitude coefficient g0, the exponent F = h(saddle), and G = sqrt(2)*rho*g0.

All arithmetic here is ordinary double precision; the residual targets of
1e-12 are comfortably reachable without extended precision.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "EPS_CRIT",
    "Regime",
    "SaddleData",
    "classify",
    "solve_x1",
    "solve_y1",
    "h",
    "g0",
    "F",
    "G",
    "saddle_data",
]

#: Default half-width of the critical band around rho = 1.  Inside the band
#: the degenerate (rho = 1) formulas are used: the regular-saddle expressions
#: lose accuracy like 1/sqrt(|rho - 1|) as the saddles coalesce.
EPS_CRIT = 1e-6

_PI = math.pi
_HALF_PI_SQ = 0.5 * math.pi * math.pi


class Regime(enum.Enum):
    """Saddle regime as a function of rho."""

    SUB_CRITICAL = "sub-critical"      # 0 < rho < 1: saddle x1 + i*pi
    CRITICAL = "critical"              # rho = 1 within tolerance: saddle i*pi
    SUPER_CRITICAL = "super-critical"  # rho > 1: saddle i*y1


def _check_rho(rho: float) -> float:
    rho = float(rho)
    if not math.isfinite(rho) or rho <= 0.0:
        raise DomainError(f"rho must be a positive finite real, got {rho!r}")
    return rho


def classify(rho: float, eps_crit: float = EPS_CRIT) -> Regime:
    """Classify rho into its saddle regime.

    Critical means |rho - 1| <= eps_crit; below that band is sub-critical,
    above it super-critical.
    """
    rho = _check_rho(rho)
    if eps_crit < 0.0 or not math.isfinite(eps_crit):
        raise DomainError(f"eps_crit must be a nonnegative real, got {eps_crit!r}")
    if abs(rho - 1.0) <= eps_crit:
        return Regime.CRITICAL
    if rho < 1.0:
        return Regime.SUB_CRITICAL
    return Regime.SUPER_CRITICAL


def _bisect_then_newton(f, fprime, lo: float, hi: float) -> float:
    """Root of f on a sign-changing bracket: bisection to width 1e-3, then
    Newton polished to machine accuracy, clipped to the bracket so a wild
    step near a flat spot falls back to bisection."""
    flo = f(lo)
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(60):
        fx = f(x)
        if (fx < 0.0) == (flo < 0.0):
            lo = x
        else:
            hi = x
        dfx = fprime(x)
        step = fx / dfx if dfx != 0.0 else hi - lo
        xn = x - step
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 1e-15 * max(1.0, abs(x)):
            return xn
        x = xn
    return x


def solve_x1(rho: float) -> float:
    """Positive root x1 of rho*sinh(x1) = x1 (sub-critical saddle height).

    Parameters
    ----------
    rho : float
        Must satisfy 0 < rho < 1; for rho >= 1 the only root is x = 0 and a
        DomainError is raised.

    Returns
    -------
    float
        Root with relative residual |rho*sinh(x1)/x1 - 1| below 1e-12.
    """
    rho = _check_rho(rho)
    if rho >= 1.0:
        raise DomainError(
            f"solve_x1 requires rho < 1 (sinh(x)/x >= 1 leaves no positive root), got {rho!r}"
        )
    hi = max(10.0, 3.0 * math.log(2.0 / rho))
    return _bisect_then_newton(
        lambda x: rho * math.sinh(x) - x,
        lambda x: rho * math.cosh(x) - 1.0,
        1e-8,
        hi,
    )


def solve_y1(rho: float) -> float:
    """Root y1 in (0, pi] of y1 + rho*sin(y1) = pi (super-critical saddle).

    For rho = 1 the root is exactly pi (sin(pi) = 0), where this saddle
    coincides with the degenerate one at i*pi.  For rho > 1 the root is
    interior and unique: f(y) = y + rho*sin(y) - pi rises then falls on
    (0, pi) with f(0) = -pi and f(pi) = 0 approached from above.
    """
    rho = _check_rho(rho)
    if rho < 1.0:
        raise DomainError(f"solve_y1 requires rho >= 1, got {rho!r}")
    if rho == 1.0:
        return _PI
    return _bisect_then_newton(
        lambda y: y + rho * math.sin(y) - _PI,
        lambda y: 1.0 + rho * math.cos(y),
        1e-8,
        _PI - 1e-12,
    )


def h(xi: complex, rho: float) -> complex:
    """Phase function h(xi) = xi^2/2 + rho*cosh(xi) - i*pi*xi."""
    rho = _check_rho(rho)
    xi = complex(xi)
    return 0.5 * xi * xi + rho * cmath.cosh(xi) - 1j * _PI * xi


def g0(rho: float, eps_crit: float = EPS_CRIT) -> float:
    """Leading local amplitude coefficient g0(rho).

    Piecewise in the regime:

    * sub-critical:   sinh(x1) / sqrt(2*(rho*cosh(x1) - 1))
    * critical:       sqrt(3/2)
    * super-critical: sin(y1) / sqrt(2*(rho*cos(y1) + 1))

    The denominators vanish like sqrt(|rho - 1|) as the saddles coalesce,
    which is why the critical band routes through the exact rho = 1 value.
    """
    regime = classify(rho, eps_crit)
    if regime is Regime.CRITICAL:
        return math.sqrt(1.5)
    if regime is Regime.SUB_CRITICAL:
        x1 = solve_x1(rho)
        return math.sinh(x1) / math.sqrt(2.0 * (rho * math.cosh(x1) - 1.0))
    y1 = solve_y1(rho)
    return math.sin(y1) / math.sqrt(2.0 * (rho * math.cos(y1) + 1.0))


def F(rho: float, eps_crit: float = EPS_CRIT) -> float:
    """Exponent F(rho) = h(saddle), real in every regime.

    Closed forms (exactly real, no complex round-off):

    * sub-critical:   x1^2/2 - rho*cosh(x1) + pi^2/2
    * critical:       pi^2/2 - 1
    * super-critical: -y1^2/2 + rho*cos(y1) + pi*y1
    """
    regime = classify(rho, eps_crit)
    if regime is Regime.CRITICAL:
        return _HALF_PI_SQ - 1.0
    if regime is Regime.SUB_CRITICAL:
        x1 = solve_x1(rho)
        return 0.5 * x1 * x1 - rho * math.cosh(x1) + _HALF_PI_SQ
    y1 = solve_y1(rho)
    return -0.5 * y1 * y1 + rho * math.cos(y1) + _PI * y1


def G(rho: float, eps_crit: float = EPS_CRIT) -> float:
    """Exponential-prefactor coefficient G(rho) = sqrt(2)*rho*g0(rho)."""
    return math.sqrt(2.0) * float(rho) * g0(rho, eps_crit)


@dataclass(frozen=True)
class SaddleData:
    """Everything derived from rho that downstream modules consume.

    Attributes
    ----------
    rho : float
        The similarity variable rho = r*t.
    regime : Regime
        Saddle regime classification.
    x1 : float or None
        Root of rho*sinh(x1) = x1 (sub-critical only).
    y1 : float or None
        Root of y1 + rho*sin(y1) = pi (critical and super-critical; pi at
        the critical point).
    xi_saddle : complex
        Saddle location: x1 + i*pi, i*y1, or i*pi.
    g0 : float
        Local amplitude coefficient, positive in every regime.
    F : float
        h(saddle), always real.
    G : float
        sqrt(2)*rho*g0.
    """

    rho: float
    regime: Regime
    x1: float | None
    y1: float | None
    xi_saddle: complex
    g0: float
    F: float
    G: float


def saddle_data(rho: float, eps_crit: float = EPS_CRIT) -> SaddleData:
    """Solve the saddle equation for rho and bundle the derived quantities."""
    rho = _check_rho(rho)
    regime = classify(rho, eps_crit)
    if regime is Regime.CRITICAL:
        g0_val = math.sqrt(1.5)
        return SaddleData(
            rho=rho,
            regime=regime,
            x1=None,
            y1=_PI,
            xi_saddle=complex(0.0, _PI),
            g0=g0_val,
            F=_HALF_PI_SQ - 1.0,
            G=math.sqrt(2.0) * rho * g0_val,
        )
    if regime is Regime.SUB_CRITICAL:
        x1 = solve_x1(rho)
        g0_val = math.sinh(x1) / math.sqrt(2.0 * (rho * math.cosh(x1) - 1.0))
        return SaddleData(
            rho=rho,
            regime=regime,
            x1=x1,
            y1=None,
            xi_saddle=complex(x1, _PI),
            g0=g0_val,
            F=0.5 * x1 * x1 - rho * math.cosh(x1) + _HALF_PI_SQ,
            G=math.sqrt(2.0) * rho * g0_val,
        )
    y1 = solve_y1(rho)
    g0_val = math.sin(y1) / math.sqrt(2.0 * (rho * math.cos(y1) + 1.0))
    return SaddleData(
        rho=rho,
        regime=regime,
        x1=None,
        y1=y1,
        xi_saddle=complex(0.0, y1),
        g0=g0_val,
        F=-0.5 * y1 * y1 + rho * math.cos(y1) + _PI * y1,
        G=math.sqrt(2.0) * rho * g0_val,
    )
