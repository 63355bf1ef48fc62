"""Special functions: Jacobi and Legendre polynomials, Bessel functions.

Jacobi polynomials are handled two ways.  Scalar arguments go through the
explicit finite sum in powers of ``(x - 1)`` evaluated in exact rational
arithmetic, so the result is the correctly rounded value of the polynomial
at the (binary) input.  Array arguments use the three-term recurrence,
which is stable on [-1, 1] and cheap.

Bessel values come from mpmath at a few guard digits beyond double
precision, which keeps the error near the zeros of J at the level of the
final rounding.  Bulk quadrature elsewhere in the package calls
``scipy.special.jv`` directly for speed.

Only non-negative integer parameters and orders are supported.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath
import numpy as np

__all__ = [
    "Rational",
    "jacobi_coefficients",
    "jacobi_eval",
    "jacobi_sequence",
    "jacobi_at_zero",
    "bessel_j",
    "legendre_eval",
]

# Exact coefficients are stored as Fraction: always normalized, positive
# denominator, arbitrary precision.
Rational = Fraction


def _check_params(k, gamma, delta):
    for name, v in (("k", k), ("gamma", gamma), ("delta", delta)):
        if int(v) != v or v < 0:
            raise ValueError(f"{name} must be a non-negative integer, got {v!r}")


@lru_cache(maxsize=None)
def jacobi_coefficients(k, gamma, delta):
    """Exact coefficients c_l of P_k^(gamma,delta)(x) = sum_l c_l (x - 1)**l.

    Returns a tuple of ``Fraction`` of length ``k + 1``.
    """
    _check_params(k, gamma, delta)
    pre = Fraction(factorial(k + gamma), factorial(k) * factorial(k + gamma + delta))
    return tuple(
        pre
        * Fraction(
            comb(k, l) * factorial(k + l + gamma + delta),
            2**l * factorial(l + gamma),
        )
        for l in range(k + 1)
    )


def _horner_exact(coeffs, t):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _horner_exact_complex(coeffs, tr, ti):
    # (re, im) pairs of Fractions; t = tr + i ti
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        ar, ai = ar * tr - ai * ti + c, ar * ti + ai * tr
    return ar, ai


def jacobi_eval(k, gamma, delta, x):
    """Jacobi polynomial P_k^(gamma,delta)(x).

    Parameters
    ----------
    k, gamma, delta : int
        Degree and the two weight parameters, all non-negative.
    x : float, complex, Fraction or array_like
        Evaluation point(s).  ``Fraction`` input gives an exact ``Fraction``.
        Real and complex scalars are evaluated exactly and rounded once.
        Arrays are evaluated with the three-term recurrence.

    Returns
    -------
    float, complex, Fraction or ndarray
    """
    _check_params(k, gamma, delta)
    if isinstance(x, Fraction):
        return _horner_exact(jacobi_coefficients(k, gamma, delta), x - 1)
    if np.ndim(x) == 0:
        coeffs = jacobi_coefficients(k, gamma, delta)
        if np.iscomplexobj(x):
            z = complex(x)
            re, im = _horner_exact_complex(
                coeffs, Fraction(z.real) - 1, Fraction(z.imag)
            )
            return complex(float(re), float(im))
        return float(_horner_exact(coeffs, Fraction(float(x)) - 1))
    return jacobi_sequence(k, gamma, delta, x)[-1]


def jacobi_sequence(kmax, gamma, delta, x):
    """Values P_k^(gamma,delta)(x) for k = 0, ..., kmax by forward recurrence.

    Returns an array of shape ``(kmax + 1,) + np.shape(x)``.
    """
    _check_params(kmax, gamma, delta)
    x = np.asarray(x, dtype=float if not np.iscomplexobj(x) else complex)
    out = np.empty((kmax + 1,) + x.shape, dtype=x.dtype)
    out[0] = 1.0
    if kmax == 0:
        return out
    a, b = gamma, delta
    out[1] = (a + 1) + 0.5 * (a + b + 2) * (x - 1)
    for n in range(2, kmax + 1):
        s = 2 * n + a + b
        c1 = 2 * n * (n + a + b) * (s - 2)
        c2 = (s - 1) * (s * (s - 2) * x + (a * a - b * b))
        c3 = 2 * (n + a - 1) * (n + b - 1) * s
        out[n] = (c2 * out[n - 1] - c3 * out[n - 2]) / c1
    return out


@lru_cache(maxsize=None)
def jacobi_at_zero(p, gamma, delta):
    """Exact value of P_p^(gamma,delta)(0) as a ``Fraction``.

    Uses the binomial sum
    ``2**-p * sum_j C(p+gamma, j) C(p+delta, p-j) (-1)**(p-j)``.
    """
    _check_params(p, gamma, delta)
    total = sum(
        comb(p + gamma, j) * comb(p + delta, p - j) * (-1) ** (p - j)
        for j in range(p + 1)
    )
    return Fraction(total, 2**p)


def bessel_j(order, x):
    """Bessel function of the first kind J_order(x), integer order >= 0, x >= 0.

    Evaluated with mpmath at 24 significant digits and rounded to float.
    Accepts scalars or arrays for ``x``.
    """
    if int(order) != order or order < 0:
        raise ValueError(f"order must be a non-negative integer, got {order!r}")
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0):
        raise ValueError("bessel_j is defined here for x >= 0 only")
    k = int(order)
    with mpmath.workdps(24):
        out = np.array([float(mpmath.besselj(k, mpmath.mpf(float(v)))) for v in xa.ravel()])
    out = out.reshape(xa.shape)
    return float(out) if out.ndim == 0 else out


def legendre_eval(n, x):
    """Legendre polynomial P_n(x), i.e. the Jacobi polynomial with gamma = delta = 0."""
    return jacobi_eval(n, 0, 0, x)
