"""
Circle polynomials on a shifted and scaled pupil
================================================

A circle polynomial on a smaller pupil, scaled by b and shifted by a,
is again a finite sum of circle polynomials in the coordinates of the
small pupil.  We expand
Z_3^1, reconstruct it pointwise, and look at how the Grammian condition
number grows as the small pupil shrinks.
"""

import numpy as np

from zernike_bessel.shiftscale import PupilTransform, expand_shifted, gram_condition
from zernike_bessel.zernike import circle_eval

pt = PupilTransform(0.1, 0.2)
coeffs = expand_shifted(3, 1, pt)
for key, value in sorted(coeffs.items()):
    print(f"K({key.n},{key.m}) = {value:+.6f}")

# Z_3^1 at a + b rho e^{i theta} equals the expansion evaluated at (rho, theta)
rng = np.random.default_rng(0)
rho, theta = np.sqrt(rng.uniform(0, 1, 5)), rng.uniform(0, 2 * np.pi, 5)
pts = pt.a + pt.b * rho * np.exp(1j * theta)
direct = circle_eval(3, 1, np.abs(pts), np.angle(pts))
recon = sum(v * circle_eval(k.n, k.m, rho, theta) for k, v in coeffs.items())
print("pointwise mismatch:", np.max(np.abs(direct - recon)))

# Smaller pupils make the expansion harder to invert
for b in (0.8, 0.5, 0.3, 0.1):
    print(f"b = {b}: condition number at N = 6 is {gram_condition(6, PupilTransform(0.1, b)):.3e}")
