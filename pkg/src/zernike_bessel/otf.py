"""Correlation of circle polynomials and the Zernike expansion of the OTF.

For a pupil P = sum (n+1)/pi gamma_n^m Z_n^m, the optical transfer
function (P ** P)(rho e^{i theta}) has Zernike coefficients, in the
half-radius variable rho/2, assembled from the Gamma coefficients below.
"""

import math
from fractions import Fraction
from math import factorial

import numpy as np

from .besselquad import integrate
from .exceptions import InvalidIndex, NonConvergence
from .specfun import jacobi_at_zero
from .watson import series_jn_jn1_jl
from .zernike import ZernikeExpansion, is_valid

__all__ = [
    "q_unit",
    "q_unit_exact",
    "gamma_coeff",
    "gamma_coeff_exact",
    "corr_point",
    "otf_expand",
]


def _check(n, m, name):
    if not is_valid(n, m):
        raise InvalidIndex(f"{name} = ({n}, {m}) needs n - |m| even and >= 0")


def q_unit_exact(n, n1, n2):
    """int_0^inf J_n(u) J_{n1}(u) J_{n2+1}(2u) du as an exact ``Fraction``.

    Zero when n2 < n + n1; needs n2 of the same parity as n + n1.
    """
    if min(n, n1, n2) < 0:
        raise InvalidIndex("orders must be non-negative")
    if (n2 - n - n1) % 2:
        raise InvalidIndex(f"n2 = {n2} must have the parity of n + n1 = {n + n1}")
    if n2 < n + n1:
        return Fraction(0)
    k = (n2 - n - n1) // 2
    ratio = Fraction(
        factorial((n2 + n + n1) // 2) * factorial(k),
        factorial((n2 + n - n1) // 2) * factorial((n2 + n1 - n) // 2),
    )
    return ratio * Fraction(1, 2 ** (n + n1 + 1)) * jacobi_at_zero(k, n, n1) * jacobi_at_zero(k, n1, n)


def q_unit(n, n1, n2):
    """Float value of :func:`q_unit_exact`."""
    return float(q_unit_exact(n, n1, n2))


def gamma_coeff_exact(n, m, n1, m1, n2, m2):
    """Exact Gamma coefficient linking Z_n^m ** Z_{n1}^{m1} to Z_{n2}^{m2}(rho/2).

    Zero unless m2 = m - m1.  Built from four unit-scale triple integrals:
    2 (-1)**((n - n1 - n2)/2) [q(n,n1) + q(n+2,n1) + q(n,n1+2) + q(n+2,n1+2)].
    """
    _check(n, m, "(n, m)")
    _check(n1, m1, "(n', m')")
    _check(n2, m2, "(n'', m'')")
    if m2 != m - m1:
        return Fraction(0)
    sign = -1 if ((n - n1 - n2) // 2) % 2 else 1
    total = (
        q_unit_exact(n, n1, n2)
        + q_unit_exact(n + 2, n1, n2)
        + q_unit_exact(n, n1 + 2, n2)
        + q_unit_exact(n + 2, n1 + 2, n2)
    )
    return 2 * sign * total


def gamma_coeff(n, m, n1, m1, n2, m2):
    """Float value of :func:`gamma_coeff_exact`."""
    return float(gamma_coeff_exact(n, m, n1, m1, n2, m2))


def _bessel_pair_over_u(mu, nu):
    """int_0^inf J_mu(u) J_nu(u) du / u for integers mu, nu >= 1."""
    if mu == nu:
        return 1.0 / (2 * mu)
    return 2.0 * math.sin(0.5 * math.pi * (mu - nu)) / (math.pi * (mu * mu - nu * nu))


def _q_series(j, n, l, rho, tol):
    # int J_j(u) J_{n+1}(u) J_l(rho u) du via the half-angle series (u -> 2u)
    theta = math.acos(0.5 * rho)
    quarter = 0.25 * math.pi
    return 0.5 * series_jn_jn1_jl(j, n, l, quarter, quarter, theta, tol=2 * tol)


def corr_point(n, m, n1, m1, rho, theta=0.0, method="series", tol=1e-11):
    """Value of (Z_n^m ** Z_{n1}^{m1}) at rho e^{i theta}.

    Parameters
    ----------
    n, m, n1, m1 : int
        The two circle polynomials.
    rho, theta : float
        Polar position, 0 <= rho.  Zero is returned for rho >= 2.
    method : {"series", "quad"}
        ``"series"`` sums the radial-polynomial series for the two split
        integrals and falls back to quadrature if it does not settle;
        ``"quad"`` integrates J_{n+1} J_{n1+1} J_{m-m1}(rho u) / u directly.

    Returns
    -------
    complex
    """
    _check(n, m, "(n, m)")
    _check(n1, m1, "(n', m')")
    if rho < 0:
        raise ValueError("rho must be >= 0")
    if rho >= 2.0:
        return 0j
    l = m - m1
    sign = -1 if ((n - m) // 2 - (n1 - m1) // 2) % 2 else 1
    phase = np.exp(1j * l * theta)
    if rho == 0.0:
        if l != 0:
            return 0j
        return 2 * math.pi * sign * _bessel_pair_over_u(n + 1, n1 + 1) * phase
    if method == "series":
        try:
            q = _q_series(n1, n, l, rho, tol) + _q_series(n1 + 2, n, l, rho, tol)
            return math.pi / (n1 + 1) * sign * q * phase
        except NonConvergence:
            pass
    elif method != "quad":
        raise ValueError(f"unknown method {method!r}")
    lsign = -1 if (l < 0 and l % 2) else 1
    val = integrate([(n + 1, 1.0), (n1 + 1, 1.0), (abs(l), rho)], power=-1, tol=1e-10)
    return 2 * math.pi * sign * lsign * val * phase


def otf_expand(pupil, nmax):
    """Zernike expansion of the autocorrelation of ``pupil`` in Z(rho/2, theta).

    ``pupil`` holds coefficients gamma_n^m of P = sum (n+1)/pi gamma_n^m Z_n^m.
    The returned coefficient of (n2, m2) is
    sum gamma_n^m conj(gamma_{n1}^{m1}) (n2 + 1)/(4 pi) Gamma, for n2 <= nmax.
    """
    out = ZernikeExpansion()
    terms = pupil.items()
    for k1, g1 in terms:
        for k2, g2 in terms:
            m2 = k1.m - k2.m
            weight = g1 * np.conj(g2)
            for n2 in range(abs(m2), nmax + 1, 2):
                gam = gamma_coeff_exact(k1.n, k1.m, k2.n, k2.m, n2, m2)
                if gam:
                    out.add((n2, m2), weight * (n2 + 1) / (4 * math.pi) * float(gam))
    return out
