"""Numerical oracle for integrals of products of Bessel functions.

Computes

    I = int_0^inf u**s * prod_i J_{k_i}(c_i u) du

for two or three factors and s in {-2, -1, 0}.  The finite part [0, U] is
integrated with 16-point Gauss-Legendre panels of width pi / sum(c_i), so
each panel spans at most half a period of the fastest oscillation.  On
[U, inf) each factor is split as J = (H1 + H2) / 2.  A product of Hankel
functions behaves like exp(i w u) times a slowly varying amplitude, with
w = sum(+-c_i); its tail integral is moved onto the ray U + i sign(w) t,
where it decays exponentially.  Combinations with w = 0 (degenerate
triangles) are non-oscillatory and integrated along the real axis.

The tail is exact up to the quadrature error of the ray integrals, so no
series acceleration is needed; the error estimate is the change in the
result when the split point U is moved by several panels.
"""

import itertools
import os
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate as spi
from scipy import special

from .exceptions import InvalidSpec, NonConvergence

__all__ = ["BesselProduct", "QuadInfo", "integrate_product", "integrate", "default_tol"]

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)
PANEL_BUDGET = 100_000
# relative distance from the two-factor s = 0 discontinuity that is refused
BOUNDARY_GAP = 1e-6
# |w| / sum(c) below which a tail combination counts as non-oscillatory
_ZERO_FREQ = 1e-12
# |w| / sum(c) below which a spec is flagged slow-converging
_SLOW_FREQ = 1e-3


def default_tol():
    """Default absolute tolerance, overridable with ``ZK_DEFAULT_TOL``."""
    return float(os.environ.get("ZK_DEFAULT_TOL", 1e-8))


@dataclass(frozen=True)
class BesselProduct:
    """Specification of int_0^inf u**power prod J_order(scale u) du.

    Parameters
    ----------
    factors : sequence of (order, scale)
        Two or three factors; orders are non-negative integers, scales
        non-negative.  A zero scale makes the factor the constant
        J_order(0), i.e. 1 for order 0 and 0 otherwise.
    power : {0, -1, -2}
    tol : float
        Requested absolute accuracy, between 1e-12 and 1e-3.
    """

    factors: tuple
    power: int = 0
    tol: float = field(default_factory=default_tol)

    def __post_init__(self):
        raw = tuple(self.factors)
        facs = tuple((int(k), float(c)) for k, c in raw)
        object.__setattr__(self, "factors", facs)
        for (k, c), (k0, _) in zip(facs, raw):
            if k != k0 or k < 0:
                raise InvalidSpec(f"Bessel orders must be non-negative integers, got {k0!r}")
            if not np.isfinite(c) or c < 0:
                raise InvalidSpec(f"scales must be finite and >= 0, got {c!r}")
        if len(facs) not in (2, 3):
            raise InvalidSpec(f"need 2 or 3 factors, got {len(facs)}")
        if self.power not in (0, -1, -2):
            raise InvalidSpec(f"power must be 0, -1 or -2, got {self.power!r}")
        if not 1e-12 <= self.tol <= 1e-3:
            raise InvalidSpec(f"tol must lie in [1e-12, 1e-3], got {self.tol!r}")
        n_pos = sum(1 for k, _ in facs if k >= 1)
        if self.power == -2 and n_pos < 2:
            raise InvalidSpec("power -2 needs at least two factors of order >= 1")
        if self.power == -1 and n_pos < 1:
            raise InvalidSpec("power -1 needs at least one factor of order >= 1")
        live = [c for k, c in facs if c > 0]
        if self.power == 0 and len(live) == 2:
            c1, c2 = live
            if abs(c1 - c2) <= BOUNDARY_GAP * max(c1, c2):
                raise InvalidSpec(
                    "two-factor integral with equal scales sits on its "
                    "discontinuity; only a limiting value exists there"
                )

    def scaled(self, lam):
        """Same integral with every scale multiplied by ``lam``."""
        return BesselProduct(
            tuple((k, c * lam) for k, c in self.factors), self.power, self.tol
        )


@dataclass(frozen=True)
class QuadInfo:
    """Diagnostics of one :func:`integrate_product` call."""

    error: float
    panels: int
    split: float
    slow: bool


_ASYMPTOTIC_FROM = 1e7


def _hankel_e(sign, order, z):
    """Exponentially scaled Hankel function H1 (sign > 0) or H2 (sign < 0).

    Beyond |z| = 1e7 the two-term large-argument expansion is used, which
    scipy no longer evaluates there.
    """
    if abs(z) < _ASYMPTOTIC_FROM:
        return special.hankel1e(order, z) if sign > 0 else special.hankel2e(order, z)
    mu = 4.0 * order * order
    phase = np.exp(-1j * sign * (0.5 * order + 0.25) * np.pi)
    return np.sqrt(2.0 / (np.pi * z)) * phase * (
        1.0 + 1j * sign * (mu - 1.0) / (8.0 * z) - (mu - 1.0) * (mu - 9.0) / (128.0 * z * z)
    )


def _integrand(u, factors, power):
    out = u**power if power else np.ones_like(u)
    for k, c in factors:
        out = out * special.jv(k, c * u)
    return out


def _finite_part(factors, power, h, npanels):
    left = h * np.arange(npanels)[:, None]
    u = left + 0.5 * h * (_GL_X + 1.0)[None, :]
    vals = _integrand(u, factors, power)
    # fixed summation order: per panel, then panels in sequence
    return float(np.sum(vals @ _GL_W) * 0.5 * h)


def _tail(factors, power, U, tol):
    """int_U^inf of the integrand via scaled Hankel functions on complex rays."""
    k = len(factors)
    csum = sum(c for _, c in factors)
    total = 0.0
    err = 0.0
    signs_iter = itertools.product((1, -1), repeat=k - 1)
    for rest in signs_iter:
        signs = (1,) + rest
        w = sum(s * c for s, (_, c) in zip(signs, factors))

        def amp(z, signs=signs):
            out = z**power if power else 1.0 + 0j
            for s, (order, c) in zip(signs, factors):
                out = out * _hankel_e(s, order, c * z)
            return out

        if abs(w) <= _ZERO_FREQ * csum:
            d, w = 1.0, 0.0
        else:
            d = 1j if w > 0 else -1j

        def f(t, d=d, w=w, amp=amp):
            if not np.isfinite(t):
                return np.zeros(2)
            z = U + d * t
            v = amp(z) * np.exp(1j * w * z) * d
            return np.array([v.real, v.imag])

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", spi.IntegrationWarning)
            val, e = spi.quad_vec(
                f, 0.0, np.inf, epsabs=tol * 1e-2, epsrel=1e-13, limit=2000
            )
        total += val[0]
        err += float(np.hypot(*np.atleast_1d(e))) if np.ndim(e) else float(e)
    scale = 2.0 ** (1 - k)
    return scale * total, scale * err


def _live_factors(spec):
    """Factors with positive scale, or None when a J_k(0) = 0 factor kills I."""
    live = []
    for k, c in spec.factors:
        if c > 0.0:
            live.append((k, c))
        elif k != 0:
            return None
    return live


def _evaluate(factors, power, U, h, tol):
    npanels = int(np.ceil(U / h))
    if npanels > PANEL_BUDGET:
        raise NonConvergence(
            f"split point needs {npanels} panels, budget is {PANEL_BUDGET}"
        )
    U = npanels * h
    head = _finite_part(factors, power, h, npanels)
    tail, terr = _tail(factors, power, U, tol)
    return head + tail, terr, npanels, U


def integrate_product(spec, full_output=False):
    """Evaluate the integral described by ``spec``.

    Parameters
    ----------
    spec : BesselProduct
    full_output : bool
        Also return a :class:`QuadInfo` with error estimate and diagnostics.

    Returns
    -------
    float or (float, QuadInfo)

    Raises
    ------
    NonConvergence
        The two split points disagree by more than ``spec.tol``.
    """
    factors = _live_factors(spec)
    if factors is None:
        return (0.0, QuadInfo(0.0, 0, 0.0, False)) if full_output else 0.0
    if not factors:
        raise InvalidSpec("all factors have zero scale; the integral diverges")
    power = spec.power
    if power == -2 and sum(1 for k, _ in factors if k >= 1) < 2:
        raise InvalidSpec("integrand is singular at u = 0 after dropping zero-scale factors")
    if power == -1 and all(k == 0 for k, _ in factors):
        raise InvalidSpec("integrand is singular at u = 0 after dropping zero-scale factors")
    csum = sum(c for _, c in factors)
    h = np.pi / csum
    U = max((k + 10.0) / c for k, c in factors)
    v1, e1, npanels, U1 = _evaluate(factors, power, U, h, spec.tol)
    v2, e2, _, _ = _evaluate(factors, power, U1 + 8 * h, h, spec.tol)
    error = abs(v1 - v2) + e1 + e2
    if error > spec.tol:
        raise NonConvergence(
            f"estimated error {error:.3g} exceeds tolerance {spec.tol:.3g}"
        )
    slow = False
    if len(factors) > 1:
        for signs in itertools.product((1, -1), repeat=len(factors) - 1):
            w = factors[0][1] + sum(s * c for s, (_, c) in zip(signs, factors[1:]))
            slow |= abs(w) < _SLOW_FREQ * csum
    value = 0.5 * (v1 + v2)
    if full_output:
        return value, QuadInfo(error, npanels, U1, slow)
    return value


def integrate(factors, power=0, tol=None, full_output=False):
    """Convenience wrapper: ``integrate([(k1, c1), (k2, c2)], power=-1)``."""
    spec = BesselProduct(tuple(factors), power, default_tol() if tol is None else tol)
    return integrate_product(spec, full_output=full_output)
