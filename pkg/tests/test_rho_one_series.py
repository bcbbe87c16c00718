"""Exact critical-point series: reversion, Im g, delta, and theta coefficients.

All coefficient assertions are exact rational comparisons.  The expansion
coefficients of Im g(tau, 1) are written r_j/sqrt(6), so Im g =
sum_j (r_j/sqrt(6)) tau^(j - 1/2); delta and theta coefficients follow as
d_j = r_j/3 and c_k = (r_k/3) (2k-1)!!/2^k.
"""

import math
from fractions import Fraction

import pytest

import hwtheta.rho_one_series as rs
from hwtheta.errors import DomainError

F = Fraction

# r_j for j = 0..6; the first five match the widely tabulated values, the
# sixth and seventh are this module's exact recomputation (see the theta
# test below for the corresponding t-coefficients).
R_EXACT = [
    F(3),
    F(-3, 35),
    F(7, 2750),
    F(-44081, 656906250),
    F(1495665023, 1039685521875000),
    F(-136866795413, 7532521605984375000),
    F(-9327314215679, 27343053429723281250000),
]

THETA_EXACT = [
    F(1),
    F(-1, 70),
    F(7, 11000),
    F(-44081, 1051050000),
    F(1495665023, 475284810000000),
    F(-136866795413, 765208544100000000),
]

DELTA_EXACT = [
    F(-1, 35),
    F(7, 8250),
    F(-44081, 1970718750),
    F(1495665023, 3119056565625000),
]


def test_im_g_coefficients_exact():
    series = rs.im_g_series(7)
    assert series.offset == F(-1, 2) and series.step == 1
    got = [coeff.as_over_root6() for coeff in series.coeffs]
    assert got == R_EXACT


def test_im_g_exponents():
    series = rs.im_g_series(4)
    assert [exp for exp, _ in series.terms()] == [
        F(-1, 2), F(1, 2), F(3, 2), F(5, 2)
    ]


def test_theta_coefficients_exact():
    series = rs.theta_series_rho1(6)
    assert list(series.coeffs) == THETA_EXACT
    assert series.PREFACTOR_TEXT == "sqrt(3)/(2*pi*t) * exp(1/t)"


def test_delta_coefficients_exact():
    series = rs.delta_series(4)
    assert series.offset == 1 and series.step == 1
    assert [coeff.a for coeff in series.coeffs] == DELTA_EXACT
    assert all(coeff.is_rational for coeff in series.coeffs)


def test_delta_equals_one_third_of_im_g_rationals():
    img = rs.im_g_series(6)
    dlt = rs.delta_series(5)
    for j, coeff in enumerate(dlt.coeffs, start=1):
        assert coeff.a == img.coeffs[j].as_over_root6() / 3


def test_theta_follows_from_im_g_by_half_integer_moments():
    # Laplace transform of tau^(k - 1/2) brings in Gamma(k + 1/2), i.e.
    # c_k = (r_k/3) * (2k-1)!!/2^k relative to the k = 0 term.
    img = rs.im_g_series(7)
    theta = rs.theta_series_rho1(7)
    for k in range(7):
        r_k = img.coeffs[k].as_over_root6()
        double_fact = math.prod(range(1, 2 * k, 2)) if k else 1
        assert theta.coeffs[k] == (r_k / 3) * F(double_fact, 2**k)


def test_reversion_leading_terms_exact():
    series = rs.invert_zeta_equation(3)
    terms = list(series.terms())
    assert [exp for exp, _ in terms] == [F(1, 2), F(1), F(3, 2)]
    assert terms[0][1] == rs.Q6.root6(2)
    assert terms[1][1] == rs.Q6.rational(F(-2, 5))
    assert terms[2][1] == rs.Q6.root6(F(2, 105))


def test_reversion_satisfies_defining_constraint_exactly():
    """Recompose sum_{k>=2} W(v)^k / (2k)! and check it equals v^2/6.

    This inverts the inversion: the zeta^2 coefficients b_m are mapped back
    to the v-series W(v) = sum c_m v^m via c_m = b_m 6^(-m/2) and the
    functional equation is verified term by term with exact arithmetic
    through v^order.
    """
    order = 10
    series = rs.invert_zeta_equation(order)
    c = [F(0)] * (order + 1)
    for m, coeff in enumerate(series.coeffs, start=1):
        if m % 2 == 0:
            assert coeff.is_rational
            c[m] = coeff.a / 6 ** (m // 2)
        else:
            assert coeff.a == 0
            c[m] = coeff.b / 6 ** ((m - 1) // 2)

    def mul(a, b):
        out = [F(0)] * (order + 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if i + j > order:
                    break
                out[i + j] += x * y
        return out

    # W^k starts at v^k, so degrees <= order only see k <= order
    target = [F(0)] * (order + 1)
    wpow = mul(c, c)
    for k in range(2, order + 1):
        fact = math.factorial(2 * k)
        for i, a in enumerate(wpow):
            target[i] += a / fact
        wpow = mul(wpow, c)

    expected = [F(0)] * (order + 1)
    expected[2] = F(1, 6)
    assert target == expected, (
        f"constraint residual {[str(x) for x in target]}"
    )


def test_sign_alternation_breaks_at_seventh_term():
    # the displayed six r_j alternate in sign; the seventh keeps the sign of
    # the sixth, so the alternation is a finite-order observation, not a law
    signs = [1 if r > 0 else -1 for r in R_EXACT]
    assert signs[:6] == [1, -1, 1, -1, 1, -1]
    assert signs[6] == signs[5] == -1


def test_im_g_evaluation_small_tau():
    series = rs.im_g_series(6)
    for tau in (0.01, 0.1):
        val = series.evaluate(tau)
        two_terms = math.sqrt(1.5) / math.sqrt(tau) * (1.0 - tau / 35.0)
        third = abs(float(series.coeffs[2])) * tau**1.5
        assert abs(val - two_terms) <= 2.0 * third
        assert val > 0.0


def test_delta_series_evaluation():
    series = rs.delta_series(4)
    assert series.evaluate(0.1) == pytest.approx(-0.0028486803286867524, rel=1e-15)
    # leading behavior -tau/35
    assert series.evaluate(1e-4) == pytest.approx(-1e-4 / 35.0, rel=1e-4)


def test_reversion_evaluation_lands_in_fourth_quadrant():
    series = rs.invert_zeta_equation(4)
    for tau in (0.01, 0.25):
        z2 = series.evaluate(tau)
        assert isinstance(z2, complex)
        assert z2.real > 0.0 and z2.imag < 0.0
    # leading term 2*sqrt(6)*(-i sqrt(tau)); real part starts at order tau
    z2 = series.evaluate(1e-6)
    assert z2.imag == pytest.approx(-2.0 * math.sqrt(6.0) * 1e-3, rel=1e-3)
    assert abs(z2.real) < 1e-5


def test_term_magnitudes_decrease_in_truncation_range():
    theta = rs.theta_series_rho1(6)
    img = rs.im_g_series(6)
    for t in (0.1, 0.25, 0.5):
        mags = [theta.term_magnitude(t, k) for k in range(1, 6)]
        assert all(a > b for a, b in zip(mags, mags[1:])), (t, mags)
        mags = [img.term_magnitude(t, k) for k in range(6)]
        assert all(a > b for a, b in zip(mags, mags[1:])), (t, mags)


def test_theta_bracket_and_prefactor():
    theta = rs.theta_series_rho1(6)
    t = 0.2
    bracket = theta.bracket(t)
    expected = sum(float(c) * t**k for k, c in enumerate(theta.coeffs))
    assert bracket == pytest.approx(expected, rel=1e-15)
    prefactor = math.sqrt(3.0) / (2.0 * math.pi * t) * math.exp(1.0 / t)
    assert theta.evaluate(t) == pytest.approx(prefactor * bracket, rel=1e-15)


def test_partial_sums_differ_by_one_term():
    theta = rs.theta_series_rho1(6)
    t = 0.3
    for n in range(1, 6):
        gap = abs(theta.bracket(t, nterms=n + 1) - theta.bracket(t, nterms=n))
        assert gap == pytest.approx(theta.term_magnitude(t, n), rel=1e-12)


def test_delta_large_tau_formula_and_guard():
    for tau in (100.0, 1e4):
        assert rs.delta_large_tau(tau) == -1.0 + math.pi * math.sqrt(
            2.0 / (3.0 * tau)
        )
    with pytest.raises(DomainError):
        rs.delta_large_tau(99.0)
    with pytest.raises(DomainError):
        rs.delta_large_tau(-5.0)


def test_order_validation():
    with pytest.raises(DomainError):
        rs.invert_zeta_equation(1)
    with pytest.raises(DomainError):
        rs.im_g_series(0)
    with pytest.raises(DomainError):
        rs.delta_series(0)
    with pytest.raises(DomainError):
        rs.theta_series_rho1(-1)


def test_q6_arithmetic_and_rendering():
    q = rs.Q6.over_root6(F(7, 2750))
    assert float(q) == pytest.approx(7.0 / 2750.0 / math.sqrt(6.0), rel=1e-15)
    assert q.as_over_root6() == F(7, 2750)
    assert str(rs.Q6.root6(2)) == "2*sqrt(6)"
    assert str(rs.Q6.rational(F(-2, 5))) == "-2/5"
    assert rs.Q6.rational(F(1, 8)).decimal_str(6) == "0.125000"
    rendered = rs.Q6.rational(THETA_EXACT[5]).decimal_str(12)
    assert rendered.startswith("-1.7886")
    assert not rs.Q6.rational(0)
    assert -rs.Q6.root6(2) == rs.Q6.root6(-2)
