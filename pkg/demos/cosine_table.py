"""
Cosine form of the radial polynomials
=====================================

Each radial polynomial R_n^m(cos x) is a finite cosine series with
non-negative rational coefficients that sum to one.  This script prints
the table for n <= 8 and checks it against direct evaluation.
"""

import numpy as np

from zernike_bessel.cosinerep import cosine_coeffs, eval_cosine
from zernike_bessel.zernike import indices_up_to, radial_eval

for idx in indices_up_to(8, nonneg_m=True):
    rep = cosine_coeffs(idx.n, idx.m)
    terms = "  ".join(f"{a}*cos({k}x)" for k, a in rep.coeffs if a)
    print(f"R_{idx.n}^{idx.m}: {terms}")

# The coefficients reproduce the polynomial on the whole circle
x = np.linspace(0, np.pi, 200)
worst = max(
    np.max(np.abs(eval_cosine(cosine_coeffs(i.n, i.m), x) - radial_eval(i.n, i.m, np.cos(x))))
    for i in indices_up_to(8, nonneg_m=True)
)
print(f"largest deviation from direct evaluation: {worst:.1e}")
