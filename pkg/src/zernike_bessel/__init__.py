"""Zernike circle-polynomial calculus with a Bessel-integral quadrature oracle."""

from .acoustics import FieldPoint, PistonConfig, RadialProfile, expand_profile, q_triangle, transient_response
from .besselquad import BesselProduct, integrate, integrate_product
from .cosinerep import CosineRep, cosine_coeffs, cosine_coeffs_scaled, eval_cosine
from .exceptions import InvalidIndex, InvalidSpec, NonConvergence, RankDeficient, SingularTransform, ZernikeError
from .otf import corr_point, gamma_coeff, gamma_coeff_exact, otf_expand, q_unit, q_unit_exact
from .shiftscale import PupilTransform, TransformMatrix, expand_shifted, gram_condition, k_coeff, t_coeff, transform_matrix
from .specfun import Rational, bessel_j, jacobi_at_zero, jacobi_eval, legendre_eval
from .zernike import (
    RadialIndex,
    ZernikeExpansion,
    circle_eval,
    inner_product,
    psf_point,
    radial_eval,
    radial_eval_dct,
    scale_expansion,
)

__version__ = "0.1.0"
