# Authors: Federico Raimondo <f.raimondo@fz-juelich.de>
#          Sami Hamdan <s.hamdan@fz-juelich.de>
# License: AGPL


class AdaCGError(Exception):
    """Base class for all the errors raised by adacg"""


class ParseError(AdaCGError, ValueError):
    """Malformed Matrix Market input"""


class NotSymmetric(AdaCGError, ValueError):
    """The matrix is not square or not numerically symmetric"""


class DimensionError(AdaCGError, ValueError):
    """Operand dimensions do not match"""


class SingularRow(AdaCGError, ValueError):
    """A row has no nonzero entry (equilibration is undefined)"""


class ConfigError(AdaCGError, ValueError):
    """Invalid solver or experiment configuration"""


class NotPositiveDefinite(AdaCGError, ArithmeticError):
    """A quantity that must be positive for an SPD operator is not"""

    def __init__(self, msg, trace=None):
        super().__init__(msg)
        self.trace = trace


class SolverError(AdaCGError, RuntimeError):
    """A solver run that ended without reaching the requested accuracy.

    Parameters
    ----------
    msg : str
        The error message.
    trace : adacg.solvers.ConvergenceTrace | None
        The trace recorded up to the failure.
    """

    def __init__(self, msg, trace=None):
        super().__init__(msg)
        self.trace = trace


class BreakdownIndefinite(SolverError):
    """Nonpositive quadratic form in the coordinate iterations"""


class Diverged(SolverError):
    """The true residual grew beyond the divergence threshold"""


class Stagnation(SolverError):
    """The true residual stopped decreasing"""


class NotConverged(SolverError):
    """The iteration budget was exhausted"""


class IoError(AdaCGError, OSError):
    """Reading or writing a file failed"""

    def __init__(self, msg, path=None):
        super().__init__(msg)
        self.path = path


class FetchError(AdaCGError, RuntimeError):
    """A matrix could not be downloaded"""


class CorruptDownload(FetchError):
    """A downloaded archive could not be extracted or parsed"""
