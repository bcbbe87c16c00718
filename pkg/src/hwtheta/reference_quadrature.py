"""Direct extended-precision evaluation of the defining oscillatory integral.

The object computed here is

    theta(r, t) = r/sqrt(2 pi^3 t) * e^(pi^2/(2t))
                  * Int_0^inf e^(-xi^2/(2t) - r cosh xi) sinh(xi) sin(pi xi/t) dxi.

The integral is exponentially small while the prefactor carries e^(pi^2/(2t)),
so roughly pi^2/(2t) * log2(e) bits cancel and the quadrature must run in
extended precision (mpmath).  Two structural facts make a simple scheme
rigorous and fast:

* the oscillation sin(pi xi/t) has its zeros exactly at xi = k*t, so panels
  aligned to [k*t, (k+1)*t] each contain one sign-definite half-period and a
  fixed-order Gauss-Legendre rule per panel converges geometrically;
* the envelope decays like e^(-r cosh xi), so a truncation point with a
  guaranteed tail bound comes from solving r cosh(xi) + xi^2/(2t) = budget.

Within panel k the phase is evaluated locally, sin(pi xi/t) =
(-1)^k sin(pi (xi - k t)/t), so it never degrades at large xi/t.

Results surface as doubles; the error_estimate field reports the relative
difference against a half-precision rerun.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass

import mpmath as mp

from .errors import DomainError, PrecisionOverflowError

__all__ = [
    "DEFAULT_BITS_CEILING",
    "Method",
    "PrecisionConfig",
    "EvalResult",
    "required_bits",
    "theta_direct",
]

#: Hard precision ceiling in bits; override with the HW_MAX_BITS environment
#: variable.  Guards against accidental t small enough to request unbounded
#: precision.
DEFAULT_BITS_CEILING = 4096


class Method(enum.Enum):
    """How a theta value was produced."""

    DIRECT = "direct"
    ASYMPTOTIC = "asymptotic"
    SERIES_RHO1 = "series-rho1"


@dataclass(frozen=True)
class PrecisionConfig:
    """Numeric knobs for the oracle.

    Attributes
    ----------
    working_bits : int or None
        Working precision; None selects required_bits(t) automatically.
        Must be >= 64 when given.
    panel_points : int
        Gauss-Legendre nodes per half-period panel (>= 8).  The default 24
        holds panel truncation near the noise floor even for the sharpest
        envelopes exercised by the bound grids; 16 leaves ~1e-9 relative.
    tail_tolerance : float
        In (0, 1): scales the dynamic truncation threshold
        tail_tolerance * |partial sum| * 2^(-working_bits/2).
    xi_max_override : float or None
        Optional hard truncation point overriding the computed cap.
    """

    working_bits: int | None = None
    panel_points: int = 24
    tail_tolerance: float = 0.5
    xi_max_override: float | None = None

    def __post_init__(self):
        if self.working_bits is not None:
            if int(self.working_bits) != self.working_bits or self.working_bits < 64:
                raise DomainError(
                    f"working_bits must be an integer >= 64, got {self.working_bits!r}"
                )
        if int(self.panel_points) != self.panel_points or self.panel_points < 8:
            raise DomainError(
                f"panel_points must be an integer >= 8, got {self.panel_points!r}"
            )
        if not (0.0 < self.tail_tolerance < 1.0):
            raise DomainError(
                f"tail_tolerance must lie in (0, 1), got {self.tail_tolerance!r}"
            )
        if self.xi_max_override is not None and not (self.xi_max_override > 0.0):
            raise DomainError(
                f"xi_max_override must be positive, got {self.xi_max_override!r}"
            )


@dataclass(frozen=True)
class EvalResult:
    """A theta value plus provenance: method, precision, self-consistency."""

    theta: float
    method: Method
    precision_used_bits: int
    error_estimate: float


def required_bits(t: float) -> int:
    """Working precision needed at width t: ceil(pi^2/(2t) * log2 e) + 64.

    The first term is the cancellation budget dictated by the e^(pi^2/(2t))
    prefactor; 64 guard bits cover quadrature and round-off. Monotone
    decreasing in t.
    """
    t = float(t)
    if not math.isfinite(t) or t <= 0.0:
        raise DomainError(f"t must be a positive finite real, got {t!r}")
    return int(math.ceil(math.pi**2 / (2.0 * t) * math.log2(math.e))) + 64


def _bits_ceiling() -> int:
    raw = os.environ.get("HW_MAX_BITS")
    if raw is None:
        return DEFAULT_BITS_CEILING
    try:
        ceiling = int(raw)
    except ValueError:
        raise DomainError(f"HW_MAX_BITS must be an integer, got {raw!r}") from None
    if ceiling < 64:
        raise DomainError(f"HW_MAX_BITS must be >= 64, got {ceiling}")
    return ceiling


_gl_cache: dict = {}


def _gl_nodes(n: int, prec: int):
    """Gauss-Legendre nodes and weights on [-1, 1] at `prec` bits, cached.

    Newton iteration on the Legendre three-term recurrence from Chebyshev
    initial guesses; standard and stable for the modest n used here.
    """
    key = (n, prec)
    cached = _gl_cache.get(key)
    if cached is not None:
        return cached
    with mp.workprec(prec + 30):
        xs, ws = [], []
        for i in range(n):
            x = mp.mpf(math.cos(math.pi * (i + 0.75) / (n + 0.5)))
            for _ in range(100):
                p0, p1 = mp.mpf(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mp.mpf(2) ** (-prec - 10):
                    break
            p0, p1 = mp.mpf(1), x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            xs.append(x)
            ws.append(2 / ((1 - x * x) * dp * dp))
    _gl_cache[key] = (xs, ws)
    return xs, ws


def _truncation_cap(r: float, t: float, bits: int) -> float:
    """xi beyond which e^(-r cosh xi - xi^2/(2t)) is below the bit budget."""
    budget = bits * math.log(2.0) + 40.0
    # r*cosh(hi) alone already exceeds the budget at this hi
    hi = max(1.0, math.log(2.0 * (budget + 1.0) / r) + 1.0)
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if r * math.cosh(mid) + mid * mid / (2.0 * t) < budget:
            lo = mid
        else:
            hi = mid
    return hi


def _integrate_panels(r: float, t: float, bits: int, cfg: PrecisionConfig):
    """Panel-by-panel quadrature; returns (theta as mpf, signed panel list).

    Exposed separately so tests can inspect the alternation of consecutive
    half-period contributions.
    """
    with mp.workprec(bits):
        rr = mp.mpf(r)
        tt = mp.mpf(t)
        xs, ws = _gl_nodes(cfg.panel_points, bits)
        cap = _truncation_cap(r, t, bits)
        if cfg.xi_max_override is not None:
            cap = min(cap, cfg.xi_max_override)
        kmax = int(math.ceil(cap / t)) + 1
        # envelope maximum: cap of the Gaussian-free stationary points
        peak = max(1.0 / math.sqrt(r), math.asinh(1.0 / r))
        thresh_scale = mp.mpf(2) ** (-(bits // 2)) * mp.mpf(cfg.tail_tolerance)
        total = mp.mpf(0)
        panels = []
        half = tt / 2
        k = 0
        while k < kmax:
            a = k * tt
            mid = a + half
            sign = -1 if (k % 2) else 1
            acc = mp.mpf(0)
            for x, w in zip(xs, ws):
                xi = mid + half * x
                osc = mp.sin(mp.pi * (xi - a) / tt)  # local phase, exact zeros
                acc += w * mp.e ** (-xi * xi / (2 * tt) - rr * mp.cosh(xi)) * mp.sinh(xi) * osc
            contribution = sign * half * acc
            panels.append(contribution)
            total += contribution
            k += 1
            edge = k * tt
            if float(edge) > peak + float(tt):
                envelope = mp.e ** (-edge * edge / (2 * tt) - rr * mp.cosh(edge)) * mp.sinh(edge)
                if envelope < thresh_scale * abs(total):
                    break
        prefactor = rr / mp.sqrt(2 * mp.pi**3 * tt) * mp.e ** (mp.pi**2 / (2 * tt))
        return prefactor * total, panels


def theta_direct(r: float, t: float, cfg: PrecisionConfig | None = None) -> EvalResult:
    """Evaluate theta(r, t) by extended-precision panel quadrature.

    Working precision comes from required_bits(t) unless cfg.working_bits
    overrides it; either way it must not exceed the ceiling (4096 bits by
    default, HW_MAX_BITS to change).  The returned error_estimate is the
    relative difference against a rerun at half the bits, a direct measure
    of whether the precision budget sufficed.
    """
    r = float(r)
    t = float(t)
    if not math.isfinite(r) or r <= 0.0:
        raise DomainError(f"r must be a positive finite real, got {r!r}")
    if not math.isfinite(t) or t <= 0.0:
        raise DomainError(f"t must be a positive finite real, got {t!r}")
    if cfg is None:
        cfg = PrecisionConfig()
    bits = cfg.working_bits if cfg.working_bits is not None else required_bits(t)
    bits = int(bits)
    ceiling = _bits_ceiling()
    if bits > ceiling:
        raise PrecisionOverflowError(
            f"theta(r={r!r}, t={t!r}) needs {bits} bits of working precision, "
            f"above the ceiling of {ceiling} (raise HW_MAX_BITS to allow)",
            required_bits=bits,
            ceiling_bits=ceiling,
        )
    value, _ = _integrate_panels(r, t, bits, cfg)
    check, _ = _integrate_panels(r, t, max(64, bits // 2), cfg)
    with mp.workprec(64):
        err = float(abs(value - check) / abs(value)) if value != 0 else math.inf
    return EvalResult(
        theta=float(value),
        method=Method.DIRECT,
        precision_used_bits=bits,
        error_estimate=err,
    )
