"""Exception types shared across the package."""


class OtruledError(Exception):
    """Base class for all domain and numerical errors raised by otruled."""


class OutOfDomain(OtruledError):
    """Parameter value lies outside the declared domain of a curve or grid."""


class CurvatureVanishes(OtruledError):
    """Frenet frame is undefined because the curvature is (numerically) zero."""


class SingularPoint(OtruledError):
    """Surface normal is undefined: f^2 + g^2 fell below the singular threshold."""


class CylindricalDirection(OtruledError):
    """Director derivative vanishes, so striction point / ruled frame is undefined."""


class DegenerateMetric(OtruledError):
    """First fundamental form is degenerate (EG - F^2 not positive)."""


class InsufficientSamples(OtruledError):
    """Too few valid samples survived filtering to evaluate a global property."""


class NotUnitSpeed(OtruledError):
    """A curve that must be unit speed is not, beyond tolerance."""


class ConfigParseError(OtruledError):
    """Command line or config file input could not be parsed."""
