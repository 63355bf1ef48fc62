"""Radial-polynomial series for triple-Bessel integrals.

Each function returns the value of an integral

    int_0^inf J_i(u c1) J_j(u c2) J_k(u c3) du

through a series whose terms are products of radial polynomials or Jacobi
polynomials evaluated at angle-derived arguments.  The scales are
parametrized by angles as in Watson's general formula; see the individual
docstrings for the mapping.

The terms typically decay like r**-1.5 with an oscillating sign, so plain
truncation is slow.  :func:`sum_series` stops early when three consecutive
terms drop below 1e-12 and otherwise takes a Hann-weighted average of the
partial sums over the window [K/2, K], doubling K until two averages
agree.  The smooth weights cancel the oscillating part of the tail far
better than a plain mean.
"""

import math

import numpy as np

from .exceptions import NonConvergence
from .specfun import jacobi_sequence
from .zernike import radial_sequence

__all__ = [
    "sum_series",
    "angles_from_scales",
    "series_j0_jm_jn1",
    "series_j0_jn1_jm",
    "series_jn_jl_jn1",
    "series_jn_jn1_jl",
]

SMALL_TERM = 1e-12
_START = 256
_MAX_TERMS = 1 << 18


def sum_series(terms_upto, tol=1e-10, max_terms=_MAX_TERMS):
    """Sum a slowly converging oscillatory series.

    Parameters
    ----------
    terms_upto : callable
        ``terms_upto(K)`` returns the first ``K`` terms as an array.
    tol : float
        Agreement required between consecutive window averages.

    Returns
    -------
    value : float
    info : dict
        ``terms`` used and ``error`` estimate.
    """
    K = _START
    prev = None
    while K <= max_terms:
        t = terms_upto(K)
        small = np.abs(t) < SMALL_TERM
        run = small[:-2] & small[1:-1] & small[2:]
        hit = np.flatnonzero(run)
        if hit.size:
            stop = int(hit[0])
            return float(np.sum(t[:stop])), {"terms": stop, "error": SMALL_TERM * 3}
        window = np.cumsum(t)[K // 2:]
        weights = np.sin(np.linspace(0.0, np.pi, window.size)) ** 2
        est = float(weights @ window / weights.sum())
        if prev is not None and abs(est - prev) < tol:
            return est, {"terms": K, "error": abs(est - prev)}
        prev = est
        K *= 2
    raise NonConvergence(f"series did not settle within {max_terms} terms")


def angles_from_scales(s_prod, c_prod):
    """Angles (alpha, beta) with sin(alpha) sin(beta) = s_prod, cos(alpha) cos(beta) = c_prod.

    Requires |c_prod - s_prod| <= c_prod + s_prod <= 1.
    """
    diff = math.acos(min(1.0, c_prod + s_prod))
    total = math.acos(max(-1.0, min(1.0, c_prod - s_prod)))
    return 0.5 * (total + diff), 0.5 * (total - diff)


def _diff_radial(order, x, start, count):
    """R^{order}_{order+2(start+r)} - R^{order}_{order+2(start+r-1)} for r < count.

    Indices below ``order`` contribute the zero polynomial.
    """
    seq = radial_sequence(order, x, start + count)
    hi = seq[start:start + count]
    lo = np.zeros(count)
    if start > 0:
        lo[:] = seq[start - 1:start - 1 + count]
    else:
        lo[1:] = seq[:count - 1]
    return hi - lo


def series_j0_jm_jn1(n, m, alpha, beta, theta, tol=1e-10, full_output=False):
    """int J_0(u sin a sin b) J_m(u cos a cos b) J_{n+1}(u cos theta) du.

    Sum over r >= 0 of (R^{n+1}_{n+2r+1} - R^{n+1}_{n+2r-1})(cos theta)
    times R^{|m|}_{n+2r}(cos a) R^{|m|}_{n+2r}(cos b), with overall sign
    (-1)**((n - m)/2).  Needs n - |m| even and >= 0.
    """
    p = (n - m) // 2
    pa = (n - abs(m)) // 2
    ca, cb, ct = math.cos(alpha), math.cos(beta), math.cos(theta)

    def terms(K):
        d = _diff_radial(n + 1, ct, 0, K)
        ra = radial_sequence(abs(m), ca, pa + K - 1)[pa:]
        rb = radial_sequence(abs(m), cb, pa + K - 1)[pa:]
        return d * ra * rb

    val, info = sum_series(terms, tol)
    val *= (-1) ** (p % 2)
    return (val, info) if full_output else val


def series_j0_jn1_jm(n, m, alpha, beta, theta, tol=1e-10, full_output=False):
    """int J_0(u sin a sin b) J_{n+1}(u cos a cos b) J_m(u cos theta) du.

    Sum over k >= 0 of (R^{|m|}_{n+2k} - R^{|m|}_{n+2k+2})(cos theta)
    times R^{n+1}_{n+1+2k}(cos a) R^{n+1}_{n+1+2k}(cos b), with overall
    sign (-1)**((n - m)/2).
    """
    p = (n - m) // 2
    pa = (n - abs(m)) // 2
    ca, cb, ct = math.cos(alpha), math.cos(beta), math.cos(theta)

    def terms(K):
        r = radial_sequence(abs(m), ct, pa + K)[pa:]
        d = r[:-1] - r[1:]
        ra = radial_sequence(n + 1, ca, K - 1)
        rb = radial_sequence(n + 1, cb, K - 1)
        return d * ra * rb

    val, info = sum_series(terms, tol)
    val *= (-1) ** (p % 2)
    return (val, info) if full_output else val


def _binomial_ratio(top_shift, order, k):
    """C(top_shift + k + order, order) / C(k + order, order) as floats over array k."""
    out = np.ones_like(k, dtype=float)
    for j in range(1, order + 1):
        out *= (top_shift + k + j) / (k + j)
    return out


def series_jn_jl_jn1(n, l, n1, phi, Phi, theta, tol=1e-10, full_output=False):
    """int J_n(u cos phi cos Phi) J_l(u sin phi sin Phi) J_{n1+1}(u cos theta) du.

    Needs n, n1 >= 0 and n - n1, l of equal parity.  The sum runs over all
    k >= 0; terms with n + 2k + |l| < n1 vanish by the zero convention for
    radial polynomials.  At theta = 0 a single term survives and the value reduces to the shift/scale closed form.
    The Jacobi factors are P_k^(|l|, n)(cos 2 phi) P_k^(|l|, n)(cos 2 Phi);
    this parameter order is what the general series produces and what the
    quadrature oracle confirms.
    """
    al = abs(l)
    if (n - n1 - al) % 2:
        raise ValueError("n - n1 and l must have the same parity")
    cc = math.cos(phi) * math.cos(Phi)
    ss = math.sin(phi) * math.sin(Phi)
    ct = math.cos(theta)
    x1, x2 = math.cos(2 * phi), math.cos(2 * Phi)
    pre = (-1) ** (((n - n1 + l) // 2) % 2) * cc**n * ss**al
    # R^{n1+1}_{N+1} - R^{n1+1}_{N-1} with N = n + 2k + |l|; in steps of two
    # above the order n1 + 1 the upper index sits at position shift + k
    shift = (n + al - n1) // 2
    # terms before the first non-negative position vanish identically; skip
    # them so that leading zeros do not trip the small-term stop
    first = max(0, -shift)

    def terms(K):
        k = np.arange(first, first + K)
        seq = radial_sequence(n1 + 1, ct, shift + first + K)
        hi_pos, lo_pos = shift + k, shift + k - 1
        hi = seq[hi_pos]
        lo = np.where(lo_pos >= 0, seq[np.clip(lo_pos, 0, None)], 0.0)
        j1 = jacobi_sequence(first + K - 1, al, n, x1)[first:]
        j2 = jacobi_sequence(first + K - 1, al, n, x2)[first:]
        return (hi - lo) * _binomial_ratio(n, al, k.astype(float)) * j1 * j2

    val, info = sum_series(terms, tol / max(abs(pre), 1e-300))
    val *= pre
    return (val, info) if full_output else val


def series_jn_jn1_jl(n, n1, l, phi, Phi, theta, tol=1e-10, full_output=False):
    """int J_n(u cos phi cos Phi) J_{n1+1}(u sin phi sin Phi) J_l(u cos theta) du.

    Needs n, n1 >= 0, n - n1 and l of equal parity and n + n1 >= |l|.
    Vanishes at theta = 0.
    """
    al = abs(l)
    if (n - n1 - al) % 2 or n + n1 < al:
        raise ValueError("need n - n1 = l (mod 2) and n + n1 >= |l|")
    cc = math.cos(phi) * math.cos(Phi)
    ss = math.sin(phi) * math.sin(Phi)
    ct = math.cos(theta)
    x1, x2 = math.cos(2 * phi), math.cos(2 * Phi)
    pre = (-1) ** (((n + n1 - l) // 2) % 2) * cc**n * ss ** (n1 + 1)
    off = (n + n1 - al) // 2

    def terms(K):
        k = np.arange(K, dtype=float)
        r = radial_sequence(al, ct, off + K)[off:]
        d = r[:-1] - r[1:]
        j1 = jacobi_sequence(K - 1, n1 + 1, n, x1)
        j2 = jacobi_sequence(K - 1, n1 + 1, n, x2)
        return d * _binomial_ratio(n1 + 1, n, k) * j1 * j2

    val, info = sum_series(terms, tol / max(abs(pre), 1e-300))
    val *= pre
    return (val, info) if full_output else val
