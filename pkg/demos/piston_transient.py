"""
Transient field of a baffled piston
===================================

A circular piston with a radial velocity profile radiates a transient
pressure pulse.  We fit the profile 1 - (sigma/a)^2 with two radial terms,
then trace the on-axis and off-axis response over time.
"""

import numpy as np

from zernike_bessel.acoustics import FieldPoint, PistonConfig, expand_profile, transient_response

cfg = PistonConfig(a=0.5, c=1.0)
sig = np.linspace(0, cfg.a, 12)
profile = expand_profile(list(zip(sig, 1 - (sig / cfg.a) ** 2)), cfg, 1)
print("profile coefficients:", profile.u, "mean velocity:", profile.mean_velocity)

for point in (FieldPoint(0.0, 1.0), FieldPoint(0.4, 1.0)):
    times = np.linspace(0.95, 1.25, 13)
    trace = [transient_response(cfg, point, profile, t) for t in times]
    print(f"w = {point.w}:")
    for t, phi in zip(times, trace):
        print(f"  t={t:.3f}  phi={phi:+.6f}")
