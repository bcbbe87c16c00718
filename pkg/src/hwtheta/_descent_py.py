"""Pure-Python descent-path continuation kernel.

This is the hot loop of the package: Newton continuation of the level curve
h(xi) - h(X) = tau (tau real, increasing) away from a saddle X, entirely in
double precision.  A compiled twin (_descent_cy) implements the same
interface; descent_path picks whichever is importable.

Everything is computed in the offset d = xi - X, never in xi itself, using
difference forms that stay accurate when |d| is tiny:

    Dh(d)  = h(X+d) - h(X) = h2*d^2/2 + rho*cX*(cosh d - 1 - d^2/2)
                                      + rho*sX*(sinh d - d)
    Dh'(d) = h'(X+d)       = h2*d + rho*sX*(cosh d - 1) + rho*cX*(sinh d - d)
    sinh(X+d) = sX + sX*(cosh d - 1) + cX*sinh d

with sX = sinh X, cX = cosh X, h2 = 1 + rho*cX (the half of h'' is folded
into the d^2/2), and the parenthesised remainders evaluated by their tail
series for small |d|.  At the degenerate saddle (mode 2) h2 = 0 and the
leading behaviour is quartic, handled by the seed choice alone; no separate
local-expansion branch is needed anywhere because the difference forms are
cancellation-free at every tau.

The kernel holds no package imports so the compiled twin can be generated
from near-identical source.  Failures raise RuntimeError with
args = (message, last_good_tau); the caller rewraps.
"""

import cmath
import math

__all__ = ["trace"]

_QUARTER_TURN = cmath.exp(-0.25j * math.pi)


def _sinhm(d):
    """sinh(d) - d, by the odd tail series for small |d|."""
    if abs(d) < 1.0:
        s = 0j
        term = d
        k = 1
        while True:
            term = term * d * d / ((2 * k) * (2 * k + 1))
            s += term
            if abs(term) < 1e-20 * (abs(s) + 1e-300):
                return s
            k += 1
    return cmath.sinh(d) - d


def _coshm1(d):
    """cosh(d) - 1 = 2*sinh(d/2)^2, exact-cancellation-free at any d."""
    hs = cmath.sinh(0.5 * d)
    return 2.0 * hs * hs


def _coshm1q(d):
    """cosh(d) - 1 - d^2/2, by the even tail series for small |d|."""
    if abs(d) < 2.0:
        s = 0j
        term = d * d / 2.0
        k = 1
        while True:
            term = term * d * d / ((2 * k + 1) * (2 * k + 2))
            s += term
            if abs(term) < 1e-20 * (abs(s) + 1e-300):
                return s
            k += 1
    return cmath.cosh(d) - 1.0 - 0.5 * d * d


def trace(rho, sx, cx, h2, h3, mode, targets, record_all=False,
          max_dxi=0.1, rtol=1e-12, max_newton=40):
    """Continue the path Dh(d) = tau through the given tau targets.

    Parameters
    ----------
    rho : float
        Similarity variable (exactly 1.0 in mode 2).
    sx, cx, h2, h3 : complex
        sinh/cosh at the saddle, 1 + rho*cx, and rho*sx.
    mode : int
        0: branch with Im d < 0 off a saddle at x1 + i*pi;
        1: branch with Re d > 0 off a saddle at i*y1;
        2: degenerate saddle, fourth-quadrant quartic branch.
    targets : sequence of float
        Strictly increasing positive tau values to report.
    record_all : bool
        Also report every accepted continuation step between targets.

    Returns
    -------
    list of (tau, d, g)
        tau float, d = xi - X complex, g = sinh(xi)/h'(xi) complex.

    Raises
    ------
    RuntimeError
        args = (message, last_good_tau) when Newton fails to converge.
    """
    rho_cx = rho * cx
    rho_sx = rho * sx

    def dh(d):
        return 0.5 * h2 * d * d + rho_cx * _coshm1q(d) + rho_sx * _sinhm(d)

    def dhp(d):
        return h2 * d + rho_sx * _coshm1(d) + rho_cx * _sinhm(d)

    def g_at(d):
        return (sx + sx * _coshm1(d) + cx * cmath.sinh(d)) / dhp(d)

    if mode == 2:
        tau_init_cap = 1e-6
    else:
        # keep the seed inside the quadratic trust region |h3 d| << |h2|
        d_trust = min(0.05, 0.1 * abs(h2) / abs(h3)) if h3 != 0 else 0.05
        tau_init_cap = 0.5 * abs(h2) * d_trust * d_trust

    out = []
    d = 0j
    tau_cur = 0.0
    for tau_target in targets:
        while tau_cur < tau_target:
            if d == 0j:
                tau_try = min(tau_target, tau_init_cap)
                if mode == 2:
                    dn = (24.0 * tau_try / rho) ** 0.25 * _QUARTER_TURN
                else:
                    dn = cmath.sqrt(2.0 * tau_try / h2)
                    if mode == 0:
                        if dn.imag >= 0.0:
                            dn = -dn
                    elif dn.real <= 0.0:
                        dn = -dn
            else:
                hp = dhp(d)
                step = min(tau_target - tau_cur,
                           abs(hp) * min(max_dxi, 0.5 * abs(d)))
                tau_try = tau_cur + step
                dn = d + step / hp
            converged = False
            for _ in range(max_newton):
                resid = dh(dn) - tau_try
                if abs(resid) <= rtol * tau_try:
                    converged = True
                    break
                dn = dn - resid / dhp(dn)
            if not converged:
                raise RuntimeError(
                    f"path continuation stalled at tau={tau_try!r} (rho={rho!r})",
                    tau_cur,
                )
            d = dn
            tau_cur = tau_try
            if record_all and tau_cur < tau_target:
                out.append((tau_cur, d, g_at(d)))
        out.append((tau_cur, d, g_at(d)))
    return out
