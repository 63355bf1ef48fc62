"""Zernike circle polynomials Z_n^m(rho, theta) = R_n^|m|(rho) exp(i m theta).

Indices with n - |m| odd or negative are representable and evaluate to the
zero polynomial.  Use :meth:`RadialIndex.strict` when an error is wanted
instead.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .exceptions import InvalidIndex
from .specfun import bessel_j, jacobi_sequence

__all__ = [
    "RadialIndex",
    "ZernikeExpansion",
    "is_valid",
    "indices_up_to",
    "radial_coefficients",
    "radial_eval",
    "radial_eval_exact",
    "radial_sequence",
    "circle_eval",
    "chebyshev_u",
    "radial_eval_dct",
    "scale_expansion",
    "psf_point",
    "inner_product",
]


def is_valid(n, m):
    """True when n - |m| is even and non-negative."""
    d = n - abs(m)
    return d >= 0 and d % 2 == 0


@dataclass(frozen=True, order=True)
class RadialIndex:
    """Degree ``n`` and azimuthal order ``m`` of a circle polynomial."""

    n: int
    m: int

    @property
    def valid(self):
        return is_valid(self.n, self.m)

    @property
    def p(self):
        """(n - m) / 2, signed m as in the shift/scale formulas."""
        return (self.n - self.m) // 2

    @property
    def q(self):
        """(n + m) / 2."""
        return (self.n + self.m) // 2

    @classmethod
    def strict(cls, n, m):
        """Construct, raising :class:`InvalidIndex` unless the pair is valid."""
        if not is_valid(n, m):
            raise InvalidIndex(f"(n, m) = ({n}, {m}) needs n - |m| even and >= 0")
        return cls(n, m)


def indices_up_to(nmax, nonneg_m=False):
    """All valid indices with n <= nmax, sorted by (n, m)."""
    return [
        RadialIndex(n, m)
        for n in range(nmax + 1)
        for m in range(-n, n + 1, 2)
        if not nonneg_m or m >= 0
    ]


class ZernikeExpansion:
    """Finite sum of circle polynomials with complex coefficients.

    Behaves like a read-mostly mapping ``RadialIndex -> complex``; absent
    indices have coefficient 0.  Only valid indices may be stored.
    """

    def __init__(self, terms=None):
        self._terms = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for key, value in items:
                self[key] = value

    @staticmethod
    def _key(key):
        if isinstance(key, RadialIndex):
            return key
        n, m = key
        return RadialIndex(int(n), int(m))

    def __getitem__(self, key):
        return self._terms.get(self._key(key), 0.0)

    def __setitem__(self, key, value):
        idx = self._key(key)
        if not idx.valid:
            raise InvalidIndex(f"cannot store coefficient for invalid index {idx}")
        self._terms[idx] = value

    def __contains__(self, key):
        return self._key(key) in self._terms

    def __iter__(self):
        return iter(sorted(self._terms))

    def __len__(self):
        return len(self._terms)

    def items(self):
        return [(k, self._terms[k]) for k in sorted(self._terms)]

    def add(self, key, value):
        """Accumulate ``value`` into the coefficient at ``key``."""
        idx = self._key(key)
        self[idx] = self._terms.get(idx, 0.0) + value

    @property
    def max_degree(self):
        return max((k.n for k in self._terms), default=-1)

    def __repr__(self):
        body = ", ".join(f"({k.n},{k.m}): {v!r}" for k, v in self.items())
        return f"ZernikeExpansion({{{body}}})"

    def __add__(self, other):
        out = ZernikeExpansion(self._terms)
        for k, v in other.items():
            out.add(k, v)
        return out

    def __eq__(self, other):
        if not isinstance(other, ZernikeExpansion):
            return NotImplemented
        return self._terms == other._terms

    def evaluate(self, rho, theta):
        """Sum of c * Z_n^m(rho, theta) over the stored terms."""
        total = 0.0
        for k, c in self.items():
            total = total + c * circle_eval(k.n, k.m, rho, theta)
        return total


@lru_cache(maxsize=None)
def radial_coefficients(n, m):
    """Exact integer coefficients of R_n^|m| as ``((power, coeff), ...)``.

    Highest power first.  Empty for an invalid index.
    """
    if not is_valid(n, m):
        return ()
    pb = (n - abs(m)) // 2
    return tuple(
        (n - 2 * s, (-1) ** s * comb(n - s, pb) * comb(pb, s)) for s in range(pb + 1)
    )


def radial_eval_exact(n, m, rho):
    """R_n^|m|(rho) from the explicit binomial sum in exact arithmetic.

    ``rho`` is converted with ``Fraction``; the result is a ``Fraction``.
    """
    rho = Fraction(rho)
    return sum((c * rho**k for k, c in radial_coefficients(n, m)), Fraction(0))


def radial_sequence(m, x, kmax):
    """R_{|m|+2k}^{|m|}(x) for k = 0, ..., kmax, shape ``(kmax + 1,) + x.shape``."""
    m = abs(m)
    x = np.asarray(x, dtype=float)
    return x**m * jacobi_sequence(kmax, 0, m, 2.0 * x * x - 1.0)


def radial_eval(n, m, rho):
    """Radial polynomial R_n^|m|(rho); zero for an invalid index.

    Evaluated as rho**|m| * P_p^(0,|m|)(2 rho**2 - 1) with the Jacobi
    recurrence.  ``Fraction`` input is evaluated exactly.
    """
    if isinstance(rho, Fraction):
        return radial_eval_exact(n, m, rho)
    scalar = np.ndim(rho) == 0
    if not is_valid(n, m):
        out = np.zeros(np.shape(rho))
    else:
        out = radial_sequence(m, rho, (n - abs(m)) // 2)[-1]
    return float(out) if scalar else out


def circle_eval(n, m, rho, theta):
    """Circle polynomial Z_n^m(rho, theta) = R_n^|m|(rho) exp(i m theta)."""
    return radial_eval(n, m, rho) * np.exp(1j * m * np.asarray(theta))


def chebyshev_u(n, x):
    """Chebyshev polynomial of the second kind U_n(x) by recurrence."""
    x = np.asarray(x, dtype=float)
    u_prev, u = np.ones_like(x), 2.0 * x
    if n == 0:
        return u_prev
    for _ in range(n - 1):
        u_prev, u = u, 2.0 * x * u - u_prev
    return u


def radial_eval_dct(n, m, rho, N):
    """R_n^m(rho) as a discrete cosine transform of U_n(rho cos t).

    ``(1/N) sum_k U_n(rho cos(2 pi k/N)) cos(2 pi m k/N)``, valid for any
    ``N > n + m``.
    """
    if m < 0:
        raise ValueError("radial_eval_dct needs m >= 0")
    if N <= n + m:
        raise ValueError(f"need N > n + m = {n + m}, got N = {N}")
    scalar = np.ndim(rho) == 0
    rho = np.asarray(rho, dtype=float)
    if not is_valid(n, m):
        out = np.zeros_like(rho)
    else:
        t = 2.0 * np.pi * np.arange(N) / N
        vals = chebyshev_u(n, np.multiply.outer(rho, np.cos(t)))
        out = vals @ np.cos(m * t) / N
    return float(out) if scalar else out


def scale_expansion(n_prime, m, eps):
    """Expansion of R_{n'}^|m|(eps rho) in R_n^|m|(rho), n = |m|, ..., n'.

    The coefficient of index (n, m) is R_{n'}^n(eps) - R_{n'}^{n+2}(eps).
    """
    if not is_valid(n_prime, m):
        raise InvalidIndex(f"(n', m) = ({n_prime}, {m}) is not a valid index")
    out = ZernikeExpansion()
    for n in range(abs(m), n_prime + 1, 2):
        out[n, m] = radial_eval(n_prime, n, eps) - radial_eval(n_prime, n + 2, eps)
    return out


def psf_point(n, m, r, phi):
    """Fourier transform of Z_n^m over the unit disk at x + iy = r exp(i phi).

    ``2 pi i**n J_{n+1}(2 pi r) / (2 pi r) exp(i m phi)``; the removable
    singularity at r = 0 returns its limit.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if not is_valid(n, m):
        return 0j
    x = 2.0 * np.pi * r
    ratio = (0.5 if n == 0 else 0.0) if x == 0 else bessel_j(n + 1, x) / x
    return 2.0 * np.pi * (1j**n) * ratio * np.exp(1j * m * phi)


def inner_product(f, g):
    """Disk inner product of two expansions: sum f * conj(g) * pi / (n + 1)."""
    total = 0j
    for k, v in f.items():
        if k in g:
            total += v * np.conj(g[k]) * np.pi / (k.n + 1)
    return total
