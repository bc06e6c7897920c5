"""Exception types shared across the package."""


class SwirlStabError(Exception):
    """Base class for all package errors."""


class ParameterError(SwirlStabError, ValueError):
    """An argument is out of range or structurally invalid; message names the field."""


class DomainError(SwirlStabError, ValueError):
    """A coordinate lies outside the interval on which the operation is defined."""


class UnsupportedModeError(ParameterError):
    """Tangential wavenumber outside the bending-mode set {-1, +1}."""


class IngestionError(SwirlStabError, ValueError):
    """A tabulated profile failed validation; message lists the offending rows."""


class SingularTensorError(SwirlStabError, ValueError):
    """A 1/r-weighted inner-product table would diverge (swirl not vanishing on axis)."""


class NumericalError(SwirlStabError, RuntimeError):
    """The eigensolver (or another numerical backend) failed; carries the problem echo."""
