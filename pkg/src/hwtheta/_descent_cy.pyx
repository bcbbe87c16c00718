# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled descent-path continuation kernel.

Line-for-line twin of _descent_py (see that module for the mathematics and
the interface contract); the only differences are C typing and the use of
C99 complex intrinsics.  descent_path imports this module when available and
falls back to the pure-Python kernel otherwise.
"""

from libc.math cimport pow as c_pow

cdef extern from "complex.h" nogil:
    double complex csinh(double complex)
    double complex ccosh(double complex)
    double complex csqrt(double complex)
    double cabs(double complex)

__all__ = ["trace"]

cdef double complex _QUARTER_TURN = 0.7071067811865476 - 0.7071067811865476j


cdef inline double complex _sinhm(double complex d) nogil:
    # sinh(d) - d, by the odd tail series for small |d|
    cdef double complex s, term
    cdef int k
    if cabs(d) < 1.0:
        s = 0
        term = d
        k = 1
        while True:
            term = term * d * d / ((2 * k) * (2 * k + 1))
            s = s + term
            if cabs(term) < 1e-20 * (cabs(s) + 1e-300):
                return s
            k += 1
    return csinh(d) - d


cdef inline double complex _coshm1(double complex d) nogil:
    # cosh(d) - 1 = 2*sinh(d/2)^2
    cdef double complex hs = csinh(0.5 * d)
    return 2.0 * hs * hs


cdef inline double complex _coshm1q(double complex d) nogil:
    # cosh(d) - 1 - d^2/2, by the even tail series for small |d|
    cdef double complex s, term
    cdef int k
    if cabs(d) < 2.0:
        s = 0
        term = d * d / 2.0
        k = 1
        while True:
            term = term * d * d / ((2 * k + 1) * (2 * k + 2))
            s = s + term
            if cabs(term) < 1e-20 * (cabs(s) + 1e-300):
                return s
            k += 1
    return ccosh(d) - 1.0 - 0.5 * d * d


def trace(double rho, double complex sx, double complex cx,
          double complex h2, double complex h3, int mode, targets,
          bint record_all=False, double max_dxi=0.1, double rtol=1e-12,
          int max_newton=40):
    """Continue the path Dh(d) = tau through the given tau targets.

    Same contract as _descent_py.trace; see there.
    """
    cdef double complex rho_cx = rho * cx
    cdef double complex rho_sx = rho * sx
    cdef double tau_init_cap, d_trust
    cdef double complex d, dn, hp, resid, g
    cdef double tau_cur, tau_try, tau_target, step
    cdef int it
    cdef bint converged

    if mode == 2:
        tau_init_cap = 1e-6
    else:
        d_trust = 0.05
        if h3 != 0 and 0.1 * cabs(h2) / cabs(h3) < d_trust:
            d_trust = 0.1 * cabs(h2) / cabs(h3)
        tau_init_cap = 0.5 * cabs(h2) * d_trust * d_trust

    out = []
    d = 0
    tau_cur = 0.0
    for tau_target_obj in targets:
        tau_target = tau_target_obj
        while tau_cur < tau_target:
            if d == 0:
                tau_try = tau_target if tau_target < tau_init_cap else tau_init_cap
                if mode == 2:
                    dn = c_pow(24.0 * tau_try / rho, 0.25) * _QUARTER_TURN
                else:
                    dn = csqrt(2.0 * tau_try / h2)
                    if mode == 0:
                        if dn.imag >= 0.0:
                            dn = -dn
                    elif dn.real <= 0.0:
                        dn = -dn
            else:
                hp = h2 * d + rho_sx * _coshm1(d) + rho_cx * _sinhm(d)
                step = max_dxi
                if 0.5 * cabs(d) < step:
                    step = 0.5 * cabs(d)
                step = cabs(hp) * step
                if tau_target - tau_cur < step:
                    step = tau_target - tau_cur
                tau_try = tau_cur + step
                dn = d + step / hp
            converged = False
            for it in range(max_newton):
                resid = (0.5 * h2 * dn * dn + rho_cx * _coshm1q(dn)
                         + rho_sx * _sinhm(dn)) - tau_try
                if cabs(resid) <= rtol * tau_try:
                    converged = True
                    break
                dn = dn - resid / (h2 * dn + rho_sx * _coshm1(dn)
                                   + rho_cx * _sinhm(dn))
            if not converged:
                raise RuntimeError(
                    f"path continuation stalled at tau={tau_try!r} (rho={rho!r})",
                    tau_cur,
                )
            d = dn
            tau_cur = tau_try
            if record_all and tau_cur < tau_target:
                g = (sx + sx * _coshm1(d) + cx * csinh(d)) / (
                    h2 * d + rho_sx * _coshm1(d) + rho_cx * _sinhm(d))
                out.append((tau_cur, complex(d), complex(g)))
        g = (sx + sx * _coshm1(d) + cx * csinh(d)) / (
            h2 * d + rho_sx * _coshm1(d) + rho_cx * _sinhm(d))
        out.append((tau_cur, complex(d), complex(g)))
    return out
