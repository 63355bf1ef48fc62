"""Zernike expansion of scaled-and-shifted circle polynomials.

For a pupil map z -> a + b z,

    Z_n^m(a + b rho' e^{i theta'}) = sum K_{nn'}^{mm'}(a, b) Z_{n'}^{m'}(rho', theta')

with K_{nn'}^{mm'} = T_{nn'}^{mm'} - T_{n,n'+2}^{mm'} and T a product of two
Jacobi polynomials evaluated at 1 - 2A**2 and 2B**2 - 1, where

    1 - 2A**2 =  y - x,    2B**2 - 1 = -y - x,
    x = (a + b)(a - b),    y = sqrt((1 - (a + b)**2)(1 - (a - b)**2)).

Every T is a polynomial in (a, b) (the Jacobi product is even in y), which
makes the formulas usable for any real (a, b), including the inverse map
z -> -a/b + z/b.
"""

import cmath
import math
from dataclasses import dataclass
from math import factorial

import numpy as np

from .exceptions import InvalidIndex, SingularTransform
from .specfun import jacobi_eval
from .zernike import RadialIndex, ZernikeExpansion, indices_up_to, is_valid

__all__ = [
    "PupilTransform",
    "TransformMatrix",
    "t_coeff",
    "k_coeff",
    "expand_shifted",
    "transform_matrix",
    "gram_matrix",
    "gram_condition",
    "jacobi_eigenvalues",
]

# relative size of the imaginary residue tolerated in extended-domain T values
_IMAG_RESIDUE = 1e-10


@dataclass(frozen=True)
class PupilTransform:
    """The pupil map z -> a + b z with its derived geometric parameters.

    The default constructor is the canonical domain a, b >= 0, a + b <= 1.
    Use :meth:`extended` for arbitrary real (a, b).
    """

    a: float
    b: float
    is_extended: bool = False

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not self.is_extended and (a < 0 or b < 0 or a + b > 1 + 1e-15):
            raise ValueError(
                f"canonical transform needs a, b >= 0 and a + b <= 1, got ({a}, {b})"
            )

    @classmethod
    def extended(cls, a, b):
        return cls(a, b, is_extended=True)

    def inverse(self):
        """Transform of the inverse map z -> -a/b + z/b."""
        if self.b == 0:
            raise SingularTransform("a transform with b = 0 has no inverse")
        return PupilTransform.extended(-self.a / self.b, 1.0 / self.b)

    @property
    def x(self):
        return (self.a + self.b) * (self.a - self.b)

    @property
    def y(self):
        """sqrt((1 - (a+b)^2)(1 - (a-b)^2)); complex outside the canonical domain."""
        s, d = self.a + self.b, self.a - self.b
        prod = (1 - s * s) * (1 - d * d)
        if prod >= 0:
            return math.sqrt(prod)
        return cmath.sqrt(prod)

    @property
    def one_minus_2A2(self):
        return self.y - self.x

    @property
    def two_B2_minus_1(self):
        return -self.y - self.x

    @property
    def A(self):
        return math.sqrt(max(0.0, (1 - self.one_minus_2A2) / 2))

    @property
    def B(self):
        return math.sqrt(max(0.0, (1 + self.two_B2_minus_1) / 2))

    @property
    def alpha(self):
        return math.asin(min(1.0, self.A))

    @property
    def beta(self):
        return math.asin(min(1.0, self.B))


def _check(n, m, name):
    if not is_valid(n, m):
        raise InvalidIndex(f"{name} = ({n}, {m}) needs n - |m| even and >= 0")


def _jacobi_product(k, g, d, pt):
    u, v = pt.one_minus_2A2, pt.two_B2_minus_1
    val = jacobi_eval(k, g, d, u) * jacobi_eval(k, g, d, v)
    if isinstance(val, complex):
        if abs(val.imag) > _IMAG_RESIDUE * (1 + abs(val.real)):
            raise ArithmeticError(
                f"extended-domain Jacobi product has imaginary residue {val.imag:.3g}"
            )
        val = val.real
    return val


def t_coeff(n, m, n2, m2, pt):
    """Closed-form T_{n n''}^{m m''}(a, b).

    Equals (-1)**(p - p'') int_0^inf J_{m-m''}(a u) J_{n''}(b u) J_{n+1}(u) du
    on the canonical domain, with p = (n - m)/2, p'' = (n'' - m'')/2.
    """
    _check(n, m, "(n, m)")
    _check(n2, m2, "(n'', m'')")
    a, b = pt.a, pt.b
    p, q = (n - m) // 2, (n + m) // 2
    p2, q2 = (n2 - m2) // 2, (n2 + m2) // 2
    dm = m - m2
    if n - n2 >= dm >= 0:
        ratio = factorial(q + p2) * factorial(p - p2) / (factorial(q - q2) * factorial(p + q2))
        k, gamma = p - p2, dm
    elif n - n2 >= -dm >= 0:
        ratio = factorial(p + q2) * factorial(q - q2) / (factorial(p - p2) * factorial(q + p2))
        k, gamma = q - q2, -dm
    else:
        return 0.0
    return ratio * a**gamma * b**n2 * _jacobi_product(k, gamma, n2, pt)


def k_coeff(n, m, n1, m1, pt):
    """Expansion coefficient K_{nn'}^{mm'}(a, b) = T_{nn'} - T_{n,n'+2}."""
    _check(n, m, "(n, m)")
    _check(n1, m1, "(n', m')")
    return t_coeff(n, m, n1, m1, pt) - t_coeff(n, m, n1 + 2, m1, pt)


def _support(n, m):
    """Indices (n', m') allowed by |m'| <= n' <= n - |m - m'|."""
    return [
        (n1, m1)
        for m1 in range(-n, n + 1)
        for n1 in range(abs(m1), n - abs(m - m1) + 1, 2)
    ]


def expand_shifted(n, m, pt):
    """Expansion of Z_n^m(a + b z) in circle polynomials of z."""
    _check(n, m, "(n, m)")
    out = ZernikeExpansion()
    for n1, m1 in sorted(_support(n, m)):
        out[n1, m1] = k_coeff(n, m, n1, m1, pt)
    return out


@dataclass(frozen=True)
class TransformMatrix:
    """Dense matrix of K coefficients over all indices with degree <= N.

    ``matrix[i, j]`` is K from ``indices[i]`` (source) to ``indices[j]``;
    indices are sorted by (n, m).
    """

    max_degree: int
    indices: tuple
    matrix: np.ndarray

    def position(self, n, m):
        return self.indices.index(RadialIndex(n, m))

    def __matmul__(self, other):
        if self.indices != other.indices:
            raise ValueError("matrices are built on different index sets")
        return TransformMatrix(self.max_degree, self.indices, self.matrix @ other.matrix)


def transform_matrix(N, pt):
    """Matrix of the pupil transform ``pt`` restricted to degrees <= N."""
    if N < 0:
        raise ValueError("N must be >= 0")
    idx = tuple(indices_up_to(N))
    pos = {k: i for i, k in enumerate(idx)}
    mat = np.zeros((len(idx), len(idx)))
    for i, src in enumerate(idx):
        for n1, m1 in _support(src.n, src.m):
            mat[i, pos[RadialIndex(n1, m1)]] = k_coeff(src.n, src.m, n1, m1, pt)
    mat.setflags(write=False)
    return TransformMatrix(N, idx, mat)


def gram_matrix(N, pt):
    """Grammian of the normalized polynomials sqrt((n+1)/pi) Z_n^m(a + b z) on |z| <= 1.

    Equals D M W M^T D with W = diag(pi/(n'+1)) and D = diag(sqrt((n+1)/pi)),
    so the identity transform gives the identity matrix.
    """
    tm = transform_matrix(N, pt)
    deg = np.array([k.n for k in tm.indices], dtype=float)
    w = np.pi / (deg + 1.0)
    d = np.sqrt((deg + 1.0) / np.pi)
    g = (tm.matrix * w) @ tm.matrix.T
    return d[:, None] * g * d[None, :]


def jacobi_eigenvalues(a, tol=1e-15, max_sweeps=60):
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Returns the eigenvalues in ascending order.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        if off <= tol * np.sqrt(np.sum(a.diagonal() ** 2)):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app, aqq = a[p, p], a[q, q]
                if abs(apq) < 1e-300 or abs(apq) <= 1e-18 * math.sqrt(abs(app * aqq)):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :]
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
    else:
        raise ArithmeticError("Jacobi eigenvalue iteration did not converge")
    return np.sort(a.diagonal())


def gram_condition(N, pt):
    """Condition number sqrt(lambda_max / lambda_min) of the normalized Grammian."""
    if pt.b == 0:
        raise SingularTransform("b = 0 collapses the pupil to a point")
    lam = jacobi_eigenvalues(gram_matrix(N, pt))
    if lam[0] <= 0:
        return math.inf
    return math.sqrt(lam[-1] / lam[0])
