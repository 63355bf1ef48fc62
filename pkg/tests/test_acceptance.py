"""Acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line with the measured error and wall
time; the lines are repeated in the pytest terminal summary.  Run this file
directly (``python tests/test_acceptance.py``) to get only those lines.
"""

import io
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, signed_triple  # noqa: E402
from test_cosinerep import TABLE  # noqa: E402
from zernike_bessel.acoustics import (  # noqa: E402
    FieldPoint,
    PistonConfig,
    RadialProfile,
    q_triangle,
    transient_response,
)
from zernike_bessel.besselquad import integrate  # noqa: E402
from zernike_bessel.cli import run  # noqa: E402
from zernike_bessel.cosinerep import cosine_coeffs, eval_cosine  # noqa: E402
from zernike_bessel.otf import corr_point, gamma_coeff  # noqa: E402
from zernike_bessel.shiftscale import (  # noqa: E402
    PupilTransform,
    expand_shifted,
    k_coeff,
    t_coeff,
    transform_matrix,
)
from zernike_bessel.watson import angles_from_scales, series_j0_jm_jn1, series_jn_jl_jn1  # noqa: E402
from zernike_bessel.zernike import indices_up_to, radial_eval  # noqa: E402


def report(number, title, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail}; {elapsed:.2f} s of {limit:g} s)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_01_cosine_table():
    start = time.perf_counter()
    out = io.StringIO()
    code = run(["cosine-table", "--nmax", "8"], out=out, err=io.StringIO())
    rows = json.loads(out.getvalue())["results"]
    mismatched = 0
    for row in rows:
        got = {c["k"]: Fraction(c["a"]["num"], c["a"]["den"]) for c in row["coeffs"]}
        got = {k: v for k, v in got.items() if v != 0}
        want = {k: Fraction(v) for k, v in TABLE.get((row["n"], row["m"]), {}).items()}
        mismatched += got != want
    elapsed = time.perf_counter() - start
    ok = code == 0 and len(rows) == len(TABLE) and mismatched == 0
    report(1, "cosine table exact", ok, f"{len(rows)} rows, {mismatched} mismatched", elapsed, 1.0)


def z4_reference(a, b):
    k41 = 12 * a**3 * b + 8 * a * b**3 - 6 * a * b
    return {
        (0, 0): 6 * a**4 + 2 * b**4 + 12 * a**2 * b**2 - 6 * a**2 - 3 * b**2 + 1,
        (2, 0): 3 * b**4 + 12 * a**2 * b**2 - 3 * b**2,
        (4, 0): b**4,
        (1, 1): k41,
        (1, -1): k41,
        (3, 1): 4 * a * b**3,
        (3, -1): 4 * a * b**3,
        (2, 2): 6 * a**2 * b**2,
        (2, -2): 6 * a**2 * b**2,
    }


def z31_reference(a, b):
    return {
        (1, -1): 3 * a**2 * b,
        (0, 0): 3 * a**3 + 3 * a * b**2 - 2 * a,
        (2, 0): 3 * a * b**2,
        (1, 1): 6 * a**2 * b + 2 * b**3 - 2 * b,
        (3, 1): b**3,
        (2, 2): 3 * a * b**2,
    }


def _expansion_error(got, ref):
    keys = {(k.n, k.m) for k in got} | set(ref)
    return max(abs(got[key] - ref.get(key, 0.0)) for key in keys)


def test_criterion_02_worked_expansions():
    rng = np.random.default_rng(2)
    start = time.perf_counter()
    worst, draws = 0.0, 0
    while draws < 20:
        a, b = rng.uniform(0, 1, 2)
        if a + b > 1:
            continue
        draws += 1
        pt = PupilTransform(a, b)
        worst = max(worst, _expansion_error(expand_shifted(4, 0, pt), z4_reference(a, b)))
        worst = max(worst, _expansion_error(expand_shifted(3, 1, pt), z31_reference(a, b)))
    elapsed = time.perf_counter() - start
    report(2, "shifted Z_4^0 and Z_3^1 expansions", worst <= 1e-12, f"max error {worst:.2e}", elapsed, 1.0)


def test_criterion_03_gamma_golden():
    start = time.perf_counter()
    golden = {0: math.pi / 4, 2: -3 * math.pi / 8, 4: 5 * math.pi / 32}
    worst = max(abs(math.pi / 4 * (n2 + 1) * gamma_coeff(0, 0, 0, 0, n2, 0) - ref) for n2, ref in golden.items())
    elapsed = time.perf_counter() - start
    report(3, "Gamma golden values", worst <= 1e-12, f"max error {worst:.2e}", elapsed, 1.0)


def test_criterion_04_autocorrelation():
    start = time.perf_counter()
    worst = 0.0
    for rho in np.arange(0, 2.0001, 0.25):
        h = 0.5 * rho
        ref = 2 * (math.acos(h) - h * math.sqrt(max(0.0, 1 - h * h)))
        worst = max(worst, abs(corr_point(0, 0, 0, 0, float(rho)) - ref))
    elapsed = time.perf_counter() - start
    report(4, "disk autocorrelation closed form", worst <= 1e-8, f"max error {worst:.2e}", elapsed, 10.0)


def test_criterion_05_noll_oracle():
    start = time.perf_counter()
    worst_in, worst_out = 0.0, 0.0
    for idx in indices_up_to(10):
        sign = (-1) ** ((idx.n - abs(idx.m)) // 2)
        for rho in (0.0, 0.3, 0.7, 0.99):
            val = sign * integrate([(idx.n + 1, 1.0), (abs(idx.m), rho)], tol=1e-8)
            worst_in = max(worst_in, abs(val - radial_eval(idx.n, idx.m, rho)))
        for rho in (1.05, 1.5):
            worst_out = max(worst_out, abs(integrate([(idx.n + 1, 1.0), (abs(idx.m), rho)], tol=1e-8)))
    elapsed = time.perf_counter() - start
    ok = worst_in <= 1e-6 and worst_out < 1e-6
    report(5, "Noll integral oracle", ok, f"inside {worst_in:.2e}, outside {worst_out:.2e}", elapsed, 60.0)


def test_criterion_06_bailey_oracle():
    rng = np.random.default_rng(6)
    start = time.perf_counter()
    worst, draws, negative = 0.0, 0, 0
    while draws < 50:
        a, b = rng.uniform(0.01, 0.95, 2)
        if a + b > 0.95:
            continue
        n = int(rng.integers(0, 7))
        m = int(rng.choice(np.arange(-n, n + 1, 2)))
        n2 = int(rng.integers(0, n + 1))
        m2 = int(rng.choice(np.arange(-n2, n2 + 1, 2)))
        if abs(m - m2) > n - n2:
            continue
        draws += 1
        negative += m - m2 < 0
        sign = (-1) ** (((n - m) // 2 - (n2 - m2) // 2) % 2)
        oracle = sign * signed_triple([(m - m2, a), (n2, b), (n + 1, 1.0)], tol=1e-9)
        worst = max(worst, abs(t_coeff(n, m, n2, m2, PupilTransform(a, b)) - oracle))
    elapsed = time.perf_counter() - start
    detail = f"max error {worst:.2e} over 50 draws, {negative} with m - m'' < 0"
    report(6, "closed-form T against quadrature", worst <= 1e-6, detail, elapsed, 120.0)


def test_criterion_07_inverse_composition():
    start = time.perf_counter()
    worst = 0.0
    for a, b in [(0.2, 0.5), (0.1, 0.8)]:
        pt = PupilTransform(a, b)
        prod = transform_matrix(8, pt) @ transform_matrix(8, PupilTransform.extended(-a / b, 1 / b))
        worst = max(worst, np.max(np.abs(prod.matrix - np.eye(len(prod.indices)))))
    elapsed = time.perf_counter() - start
    report(7, "inverse transform composition", worst <= 1e-10, f"max deviation {worst:.2e}", elapsed, 5.0)


def test_criterion_08_scaling_degeneration():
    start = time.perf_counter()
    worst = 0.0
    for eps in np.linspace(0.0, 1.0, 11):
        pt = PupilTransform(0.0, eps)
        for src in indices_up_to(10):
            for n in range(abs(src.m), src.n + 1, 2):
                ref = radial_eval(src.n, n, eps) - radial_eval(src.n, n + 2, eps)
                worst = max(worst, abs(k_coeff(src.n, src.m, n, src.m, pt) - ref))
    elapsed = time.perf_counter() - start
    report(8, "pure scaling coefficients", worst <= 1e-13, f"max error {worst:.2e}", elapsed, 1.0)


def test_criterion_09_cosine_properties():
    start = time.perf_counter()
    x = np.linspace(0, np.pi, 100)
    negatives, bad_sums, worst = 0, 0, 0.0
    for idx in indices_up_to(30, nonneg_m=True):
        rep = cosine_coeffs(idx.n, idx.m)
        negatives += sum(a < 0 for _, a in rep.coeffs)
        bad_sums += rep.total() != 1
        worst = max(worst, np.max(np.abs(eval_cosine(rep, x) - radial_eval(idx.n, idx.m, np.cos(x)))))
    elapsed = time.perf_counter() - start
    ok = negatives == 0 and bad_sums == 0 and worst <= 1e-13
    detail = f"{negatives} negative, {bad_sums} bad sums, max error {worst:.2e}"
    report(9, "cosine representation properties", ok, detail, elapsed, 5.0)


def test_criterion_10_transient_physics():
    rng = np.random.default_rng(10)
    start = time.perf_counter()
    cfg = PistonConfig(a=0.8, c=1.5, Delta=2.0)
    fp = FieldPoint(0.0, 1.2)
    uniform = RadialProfile((1.0,))
    level = cfg.c * cfg.Delta / (math.pi * cfg.a**2)
    t_lo, t_hi = fp.z / cfg.c, math.hypot(fp.z, cfg.a) / cfg.c
    worst_axis = 0.0
    for t in np.linspace(t_lo, t_hi, 41)[1:-1]:
        worst_axis = max(worst_axis, abs(transient_response(cfg, fp, uniform, t) - level))
    for t in np.concatenate([np.linspace(0, t_lo, 20, endpoint=False), np.linspace(t_hi, 3 * t_hi, 21)[1:]]):
        worst_axis = max(worst_axis, abs(transient_response(cfg, fp, uniform, t)))
    worst_q, draws = 0.0, 0
    while draws < 100:
        s, a, w = rng.uniform(0.05, 2.0, 3)
        if min(abs(a - abs(w - s)), abs(a - (w + s))) < 0.02:
            continue
        draws += 1
        n = int(rng.integers(0, 5))
        oracle = (-1) ** n * integrate([(0, s), (0, w), (2 * n + 1, a)], tol=1e-9)
        worst_q = max(worst_q, abs(q_triangle(s, a, w, n) - oracle))
    elapsed = time.perf_counter() - start
    ok = worst_axis <= 1e-8 and worst_q <= 1e-6
    detail = f"on-axis error {worst_axis:.2e}, arc vs quadrature {worst_q:.2e}"
    report(10, "transient response physics", ok, detail, elapsed, 60.0)


def _triangle(rng, margin=0.05):
    while True:
        s, c = rng.uniform(0.05, 0.7, 2)
        if s + c > 1:
            continue
        lo, hi = abs(c - s) + margin, c + s - margin
        if lo < hi:
            return s, c, float(rng.uniform(lo, hi))


def test_criterion_11_series_identities():
    rng = np.random.default_rng(11)
    start = time.perf_counter()
    worst_124 = 0.0
    for _ in range(20):
        s, c, t = _triangle(rng)
        n = int(rng.integers(0, 5))
        m = int(rng.choice(np.arange(-n, n + 1, 2)))
        alpha, beta = angles_from_scales(s, c)
        val = series_j0_jm_jn1(n, m, alpha, beta, math.acos(t))
        worst_124 = max(worst_124, abs(val - signed_triple([(0, s), (m, c), (n + 1, t)], tol=1e-9)))
    worst_131, draws = 0.0, 0
    while draws < 20:
        s, c, t = _triangle(rng)
        n, n1 = (int(v) for v in rng.integers(0, 5, 2))
        l = int(rng.integers(-4, 5))
        if (n - n1 - l) % 2:
            continue
        draws += 1
        phi, Phi = angles_from_scales(s, c)
        val = series_jn_jl_jn1(n, l, n1, phi, Phi, math.acos(t))
        worst_131 = max(worst_131, abs(val - signed_triple([(n, c), (l, s), (n1 + 1, t)], tol=1e-9)))
    worst_edge = 0.0
    for a, b in [(0.2, 0.5), (0.1, 0.8), (0.35, 0.35), (0.05, 0.3)]:
        phi, Phi = angles_from_scales(a, b)
        for src in indices_up_to(6):
            for dst in indices_up_to(src.n):
                l = src.m - dst.m
                if abs(l) > src.n - dst.n:
                    continue
                sign = (-1) ** (((src.n - src.m) // 2 - (dst.n - dst.m) // 2) % 2)
                ref = sign * t_coeff(src.n, src.m, dst.n, dst.m, PupilTransform(a, b))
                val = series_jn_jl_jn1(dst.n, l, src.n, phi, Phi, 0.0)
                worst_edge = max(worst_edge, abs(val - ref))
    elapsed = time.perf_counter() - start
    ok = worst_124 <= 1e-5 and worst_131 <= 1e-5 and worst_edge <= 1e-10
    detail = f"first series {worst_124:.2e}, second series {worst_131:.2e}, zero-angle collapse {worst_edge:.2e}"
    report(11, "radial-polynomial series identities", ok, detail, elapsed, 120.0)


if __name__ == "__main__":
    failures = 0
    for name, func in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                func()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
