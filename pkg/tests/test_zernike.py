from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zernike_bessel.besselquad import integrate
from zernike_bessel.exceptions import InvalidIndex
from zernike_bessel.specfun import jacobi_eval
from zernike_bessel.zernike import (
    RadialIndex,
    ZernikeExpansion,
    circle_eval,
    indices_up_to,
    inner_product,
    psf_point,
    radial_eval,
    radial_eval_dct,
    radial_eval_exact,
    scale_expansion,
)


def explicit_sum(n, m, rho):
    """Finite power sum of R_n^|m| as an independent reference."""
    pbar = (n - abs(m)) // 2
    return sum(
        (-1) ** s * comb(n - s, pbar) * comb(pbar, s) * rho ** (n - 2 * s)
        for s in range(pbar + 1)
    )


def test_r40_polynomial():
    rho = np.linspace(0, 1, 11)
    np.testing.assert_allclose(radial_eval(4, 0, rho), 6 * rho**4 - 6 * rho**2 + 1, atol=1e-14)


def test_invalid_parity_is_zero():
    assert radial_eval(5, 0, 0.3) == 0.0
    assert radial_eval(2, 4, 0.3) == 0.0
    assert circle_eval(3, 0, 0.5, 1.0) == 0


def test_circle_examples():
    rho, th = 0.6, 0.9
    assert circle_eval(0, 0, rho, th) == 1
    assert circle_eval(1, 1, rho, th) == pytest.approx(rho * np.exp(1j * th))
    assert circle_eval(2, -2, rho, th) == pytest.approx(rho**2 * np.exp(-2j * th))


def test_matches_explicit_sum():
    rho = np.linspace(0, 1, 17)
    for idx in indices_up_to(20, nonneg_m=True):
        ref = np.array([explicit_sum(idx.n, idx.m, Fraction(r)) for r in rho], dtype=float)
        np.testing.assert_allclose(radial_eval(idx.n, idx.m, rho), ref, atol=1e-11)


def test_exact_evaluation():
    assert radial_eval(4, 0, Fraction(1, 2)) == Fraction(-1, 8)
    assert radial_eval_exact(6, 2, Fraction(1)) == 1


def test_szego_bound_and_endpoint():
    rho = np.linspace(0, 1, 2001)
    for idx in indices_up_to(30, nonneg_m=True):
        vals = radial_eval(idx.n, idx.m, rho)
        assert np.max(np.abs(vals)) <= 1 + 1e-12
        assert radial_eval(idx.n, idx.m, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_negative_m_uses_modulus():
    assert radial_eval(5, -3, 0.4) == radial_eval(5, 3, 0.4)


def test_dct_examples():
    assert radial_eval_dct(0, 0, 0.5, 1) == pytest.approx(1.0)
    assert radial_eval_dct(4, 0, 0.7, 5) == pytest.approx(radial_eval(4, 0, 0.7), abs=1e-12)
    assert radial_eval_dct(3, 1, 1.0, 5) == pytest.approx(1.0, abs=1e-12)


def test_dct_matches_recurrence():
    rho = np.linspace(0, 1, 41)
    for idx in indices_up_to(16, nonneg_m=True):
        N = idx.n + idx.m + 1
        got = radial_eval_dct(idx.n, idx.m, rho, N)
        np.testing.assert_allclose(got, radial_eval(idx.n, idx.m, rho), atol=1e-12)


def test_dct_rejects_short_grid():
    with pytest.raises(ValueError):
        radial_eval_dct(4, 2, 0.5, 6)


def test_monomial_identity():
    # b^n' P_k^(0,n')(2b^2 - 1) = R_{n'+2k}^{n'}(b)
    b = np.linspace(0, 1, 13)
    for n1 in range(9):
        for k in range(7):
            lhs = b**n1 * jacobi_eval(k, 0, n1, 2 * b * b - 1)
            np.testing.assert_allclose(lhs, radial_eval(n1 + 2 * k, n1, b), atol=1e-13)


def hyp2f1_terminating(r, bpar, cpar, z):
    return sum(
        Fraction(factorial(r), factorial(j) * factorial(r - j)) * (-1) ** j
        * _rising(bpar, j) / _rising(cpar, j) * z**j
        for j in range(r + 1)
    )


def _rising(x, j):
    out = 1
    for i in range(j):
        out *= x + i
    return out


def test_difference_identity_with_hypergeometric():
    # R_{n+2r+1}^{n+1} - R_{n+2r-1}^{n+1} as a terminating 2F1 in x^2
    grid = [Fraction(i, 10) for i in range(11)]
    for n in range(7):
        for r in range(6):
            pre = Fraction((-1) ** r * (n + 2 * r + 1) * factorial(n + r), factorial(r) * factorial(n + 1))
            for x in grid:
                lhs = radial_eval_exact(n + 2 * r + 1, n + 1, x)
                if r > 0:
                    lhs -= radial_eval_exact(n + 2 * r - 1, n + 1, x)
                rhs = pre * x ** (n + 1) * hyp2f1_terminating(r, n + r + 1, n + 2, x * x)
                assert lhs == rhs


@pytest.mark.parametrize("n,m,rho", [(0, 0, 0.5), (2, 0, 0.3), (3, 1, 0.8), (4, -2, 0.6), (5, 5, 0.9), (2, 2, 1.4)])
def test_noll_integral(n, m, rho):
    sign = (-1) ** ((n - abs(m)) // 2)
    val = sign * integrate([(n + 1, 1.0), (abs(m), rho)], tol=1e-9)
    expected = radial_eval(n, m, rho) if rho < 1 else 0.0
    assert val == pytest.approx(expected, abs=1e-6)


def test_scale_expansion_examples():
    exp = scale_expansion(3, 3, 0.7)
    assert len(exp) == 1 and exp[3, 3] == pytest.approx(0.7**3)
    ident = scale_expansion(6, 2, 1.0)
    assert ident[6, 2] == pytest.approx(1.0)
    assert all(abs(v) < 1e-13 for k, v in ident.items() if k.n != 6)
    half = scale_expansion(4, 0, 0.5)
    assert half[0, 0] == pytest.approx(radial_eval(4, 0, 0.5) - radial_eval(4, 2, 0.5))
    assert half[2, 0] == pytest.approx(radial_eval(4, 2, 0.5) - radial_eval(4, 4, 0.5))
    assert half[4, 0] == pytest.approx(radial_eval(4, 4, 0.5))


@settings(max_examples=40, deadline=None)
@given(
    n1=st.integers(0, 12),
    m=st.integers(-12, 12),
    eps=st.floats(0.0, 1.0),
)
def test_scale_expansion_reproduces_scaled_polynomial(n1, m, eps):
    if not RadialIndex(n1, m).valid:
        return
    rho = np.linspace(0, 1, 9)
    exp = scale_expansion(n1, m, eps)
    total = sum(c * radial_eval(k.n, k.m, rho) for k, c in exp.items())
    np.testing.assert_allclose(total, radial_eval(n1, m, eps * rho), atol=1e-12)


def test_psf_examples():
    assert psf_point(0, 0, 0.0, 0.0) == pytest.approx(np.pi)
    assert psf_point(0, 0, 1e-9, 0.0) == pytest.approx(np.pi, rel=1e-12)
    r = 0.37
    x = 2 * np.pi * r
    from scipy.special import jv

    assert psf_point(2, 0, r, 1.1) == pytest.approx(-2 * np.pi * jv(3, x) / x, abs=1e-14)
    mods = {abs(psf_point(3, 1, r, phi)) for phi in (0.0, 0.7, 2.5)}
    assert max(mods) - min(mods) < 1e-15


def test_psf_matches_disk_transform():
    # 2-D Fourier integral of Z_n^m over the disk by polar quadrature
    n, m, r, phi = 3, 1, 0.4, 0.6
    rho_nodes, rho_w = np.polynomial.legendre.leggauss(60)
    rho = 0.5 * (rho_nodes + 1)
    th = 2 * np.pi * np.arange(128) / 128
    R, T = np.meshgrid(rho, th, indexing="ij")
    phase = np.exp(2j * np.pi * r * R * np.cos(T - phi))
    integrand = circle_eval(n, m, R, T) * phase * R
    val = (0.5 * rho_w) @ integrand.sum(axis=1) * (2 * np.pi / 128)
    assert val == pytest.approx(psf_point(n, m, r, phi), abs=1e-10)


def test_inner_product_orthogonality():
    z = lambda n, m: ZernikeExpansion({(n, m): 1.0})  # noqa: E731
    assert inner_product(z(4, 2), z(4, 2)) == pytest.approx(np.pi / 5)
    assert inner_product(z(2, 0), z(4, 0)) == 0
    assert inner_product(ZernikeExpansion(), z(1, 1)) == 0


def test_expansion_rejects_invalid_index():
    exp = ZernikeExpansion()
    with pytest.raises(InvalidIndex):
        exp[3, 0] = 1.0
    with pytest.raises(InvalidIndex):
        RadialIndex.strict(3, 0)
    assert exp[5, 1] == 0.0
