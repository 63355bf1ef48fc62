"""Transient response of a baffled circular piston with a radial velocity profile.

The profile is expanded as v(sigma) = V_s sum_n u_n R_{2n}^0(sigma / a) and
the impulse response at a field point is

    Phi(t) = c Delta H(ct - z) / (pi a) * sum_n u_n q_triangle(sigma, a, w, n),

with sigma = sqrt(c^2 t^2 - z^2).  Each q_triangle is a finite arc integral
of a Legendre polynomial and equals (-1)^n times the triple-Bessel integral
int J_0(sigma u) J_0(w u) J_{2n+1}(a u) du.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import RankDeficient
from .zernike import radial_sequence

__all__ = [
    "PistonConfig",
    "FieldPoint",
    "RadialProfile",
    "arc_limit",
    "q_triangle",
    "transient_response",
    "expand_profile",
]

# tolerance for clamping the arccos argument at degenerate triangles
_CLAMP = 1e-12
_GL_CACHE = {}


@dataclass(frozen=True)
class PistonConfig:
    """Piston radius ``a``, sound speed ``c``, volume displacement and mean velocity."""

    a: float
    c: float
    Delta: float = 1.0
    Vs: float = 1.0

    def __post_init__(self):
        if not (self.a > 0 and self.c > 0):
            raise ValueError("piston radius a and sound speed c must be positive")


@dataclass(frozen=True)
class FieldPoint:
    """Observation point at cylindrical radius ``w`` and axial distance ``z``."""

    w: float
    z: float

    def __post_init__(self):
        if self.w < 0 or self.z < 0:
            raise ValueError("w and z must be non-negative")

    def sigma(self, t, c):
        """Radius sqrt(c^2 t^2 - z^2) of the intersection circle; NaN before arrival."""
        d = (c * t) ** 2 - self.z**2
        return math.sqrt(d) if d >= 0 else math.nan


@dataclass(frozen=True)
class RadialProfile:
    """Coefficients u_n of R_{2n}^0(sigma/a), n = 0..N.

    ``mean_velocity`` records the fitted V_s when the profile came from
    :func:`expand_profile`.
    """

    u: tuple
    mean_velocity: float = 1.0

    def __post_init__(self):
        u = tuple(float(x) for x in self.u)
        if not all(math.isfinite(x) for x in u):
            raise ValueError("profile coefficients must be finite")
        object.__setattr__(self, "u", u)

    def __add__(self, other):
        n = max(len(self.u), len(other.u))
        pad = lambda v: v + (0.0,) * (n - len(v))  # noqa: E731
        return RadialProfile(tuple(x + y for x, y in zip(pad(self.u), pad(other.u))))

    def velocity(self, sigma, a):
        """v(sigma) reconstructed from the coefficients."""
        rho = np.asarray(sigma, dtype=float) / a
        vals = radial_sequence(0, rho, len(self.u) - 1)
        return self.mean_velocity * np.tensordot(self.u, vals, axes=1)


def arc_limit(sigma, a, w):
    """Upper limit of the arc integral: the half-angle of circle sigma inside the piston."""
    if a >= w + sigma:
        return math.pi
    if a <= abs(w - sigma):
        return 0.0
    cosval = (w * w + sigma * sigma - a * a) / (2.0 * w * sigma)
    if abs(cosval) > 1.0 + _CLAMP:
        raise ArithmeticError(f"arc cosine argument {cosval} out of range")
    return math.acos(min(1.0, max(-1.0, cosval)))


def _gauss(npts):
    if npts not in _GL_CACHE:
        _GL_CACHE[npts] = np.polynomial.legendre.leggauss(npts)
    return _GL_CACHE[npts]


def _legendre_all(nmax, x):
    out = np.empty((nmax + 1,) + np.shape(x))
    out[0] = 1.0
    if nmax:
        out[1] = x
    for k in range(2, nmax + 1):
        out[k] = ((2 * k - 1) * x * out[k - 1] - (k - 1) * out[k - 2]) / k
    return out


def _arc_integrals(sigma, a, w, nmax, tol=1e-14):
    """(1/(pi a)) int_0^A P_n(arg(alpha)) d alpha for n = 0..nmax."""
    upper = arc_limit(sigma, a, w)
    if upper == 0.0:
        return np.zeros(nmax + 1)
    base = 2.0 * (w * w + sigma * sigma) / (a * a) - 1.0
    slope = 4.0 * w * sigma / (a * a)
    npts, prev = max(8, nmax + 2), None
    while True:
        x, wt = _gauss(npts)
        alpha = 0.5 * upper * (x + 1.0)
        vals = _legendre_all(nmax, base - slope * np.cos(alpha)) @ wt * (0.5 * upper)
        if prev is not None and np.max(np.abs(vals - prev)) <= tol * max(1.0, np.max(np.abs(vals))):
            return vals / (math.pi * a)
        if npts >= 4096:
            return vals / (math.pi * a)
        prev, npts = vals, 2 * npts


def q_triangle(sigma, a, w, n):
    """(-1)^n int_0^inf J_0(sigma u) J_0(w u) J_{2n+1}(a u) du via the arc integral.

    Equal to (1/(pi a)) int_0^A P_n(2(w^2 + sigma^2)/a^2 - 1 - (4 w sigma/a^2) cos t) dt.
    """
    if sigma < 0 or w < 0 or a <= 0 or n < 0:
        raise ValueError("need sigma, w >= 0, a > 0, n >= 0")
    return float(_arc_integrals(sigma, a, w, n)[n])


def transient_response(cfg, fp, profile, t):
    """Impulse response Phi(t) at ``fp`` for a piston with radial ``profile``."""
    if t < 0:
        raise ValueError("t must be >= 0")
    ct = cfg.c * t
    if ct < fp.z:
        return 0.0
    step = 0.5 if ct == fp.z else 1.0
    sigma = math.sqrt(max(0.0, ct * ct - fp.z * fp.z))
    u = np.asarray(profile.u, dtype=float)
    if u.size == 0:
        return 0.0
    arcs = _arc_integrals(sigma, cfg.a, fp.w, u.size - 1)
    return cfg.c * cfg.Delta * step / (math.pi * cfg.a) * float(u @ arcs)


def expand_profile(samples, cfg, N):
    """Least-squares fit of sampled velocities onto R_{2n}^0(sigma/a), n <= N.

    Parameters
    ----------
    samples : sequence of (sigma, v)
        Radii in [0, a] with velocity values.
    cfg : PistonConfig
        Supplies the piston radius.
    N : int
        Highest Legendre index; the fitted degree in sigma is 2N.

    Returns
    -------
    RadialProfile
        Coefficients normalized so that u_0 = 1; the fitted mean velocity
        is stored in ``mean_velocity``.

    Raises
    ------
    RankDeficient
        Fewer than 2N + 2 distinct radii, or a numerically singular design.
    """
    arr = np.asarray(samples, dtype=float).reshape(-1, 2)
    sig, vel = arr[:, 0], arr[:, 1]
    if np.any(sig < 0) or np.any(sig > cfg.a * (1 + 1e-12)):
        raise ValueError("sample radii must lie in [0, a]")
    distinct = np.unique(sig).size
    if distinct < 2 * N + 2:
        raise RankDeficient(f"need at least {2 * N + 2} distinct radii, got {distinct}")
    design = radial_sequence(0, sig / cfg.a, N).T
    coef, _, rank, _ = np.linalg.lstsq(design, vel, rcond=None)
    if rank < N + 1:
        raise RankDeficient(f"design has rank {rank} < {N + 1}")
    if coef[0] == 0:
        raise ValueError("profile has zero mean velocity; cannot normalize u_0 = 1")
    return RadialProfile(tuple(coef / coef[0]), mean_velocity=float(coef[0]))
