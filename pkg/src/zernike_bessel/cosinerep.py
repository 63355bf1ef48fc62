"""Finite cosine series of radial polynomials.

R_n^m(cos x) = sum_k a_k cos(k x) over k = n, n-2, ..., with exact
non-negative rational a_k that sum to 1.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .exceptions import InvalidIndex
from .specfun import jacobi_at_zero, jacobi_eval
from .zernike import is_valid

__all__ = ["CosineRep", "cosine_coeffs", "cosine_coeffs_scaled", "eval_cosine"]


@dataclass(frozen=True)
class CosineRep:
    """Cosine coefficients of R_n^m.

    ``coeffs`` is a tuple of ``(k, a_k)`` pairs, highest harmonic first,
    with every k = n, n-2, ..., n mod 2 present (zero values included).
    """

    n: int
    m: int
    coeffs: tuple

    def as_dict(self):
        return dict(self.coeffs)

    def total(self):
        return sum((a for _, a in self.coeffs), Fraction(0))


def _harmonic_params(n, m, k):
    big, small = max(m, k), min(m, k)
    p, q = (n - big) // 2, (n + big) // 2
    s, t = (n - small) // 2, (n + small) // 2
    gam, dlt = (big - small) // 2, (big + small) // 2
    ratio = Fraction(factorial(p) * factorial(q), factorial(s) * factorial(t))
    neumann = 1 if k == 0 else 2
    return big, p, gam, dlt, neumann * ratio


def _check(n, m):
    if not is_valid(n, m):
        raise InvalidIndex(f"(n, m) = ({n}, {m}) needs n - |m| even and >= 0")


def cosine_coeffs(n, m):
    """Exact cosine coefficients of R_n^|m|(cos x)."""
    _check(n, m)
    m = abs(m)
    out = []
    for k in range(n, -1, -2):
        big, p, gam, dlt, pre = _harmonic_params(n, m, k)
        out.append((k, pre * Fraction(1, 2**big) * jacobi_at_zero(p, gam, dlt) ** 2))
    return CosineRep(n, m, tuple(out))


def cosine_coeffs_scaled(n, m, v):
    """Cosine coefficients of R_n^|m|(v cos x) for 0 <= v <= 1, as floats.

    Returns a list of ``(k, a_k(v))``, highest harmonic first.
    """
    _check(n, m)
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"v must lie in [0, 1], got {v!r}")
    m = abs(m)
    x = float(np.sqrt(1.0 - v * v))
    out = []
    for k in range(n, -1, -2):
        big, p, gam, dlt, pre = _harmonic_params(n, m, k)
        prod = jacobi_eval(p, gam, dlt, x) * jacobi_eval(p, gam, dlt, -x)
        out.append((k, float(pre) * (0.5 * v) ** big * prod))
    return out


def eval_cosine(rep, x):
    """Sum of a_k cos(k x) for a :class:`CosineRep` or a ``(k, a_k)`` list."""
    pairs = rep.coeffs if isinstance(rep, CosineRep) else rep
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for k, a in pairs:
        total = total + float(a) * np.cos(k * x)
    return float(total) if total.ndim == 0 else total
