"""
Integrals of products of Bessel functions
=========================================

The quadrature engine handles slowly decaying oscillatory integrands on
the half line.  Several products have known closed forms, which makes
them a handy check.
"""

from zernike_bessel.besselquad import integrate

# A discontinuous integral: 1/a inside the disk, 0 outside
for s in (0.3, 0.9, 1.1):
    print(f"int J0({s}u) J1(u) du = {integrate([(0, s), (1, 1.0)], tol=1e-10):.10f}")

# A Weber-Schafheitlin case: int J2(u) J0(s u) / u du = (1 - s^2)/2 for s < 1
s = 0.4
value = integrate([(2, 1.0), (0, s)], power=-1, tol=1e-10, full_output=True)
print("with diagnostics:", value)
print("closed form (1 - s^2)/2 =", (1 - s * s) / 2)
