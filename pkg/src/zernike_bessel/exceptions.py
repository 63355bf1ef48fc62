"""Exception types raised across the package."""


class ZernikeError(Exception):
    """Base class for all package errors."""


class InvalidIndex(ZernikeError, ValueError):
    """An (n, m) pair violates the parity/range rule n - |m| even and >= 0."""


class InvalidSpec(ZernikeError, ValueError):
    """A Bessel-product integral specification is malformed or divergent."""


class NonConvergence(ZernikeError, ArithmeticError):
    """A numerical procedure did not reach the requested tolerance."""


class SingularTransform(ZernikeError, ArithmeticError):
    """A pupil transform with zero scale was asked for an inverse or a Grammian."""


class RankDeficient(ZernikeError, ArithmeticError):
    """A least-squares design cannot resolve the requested degree."""
