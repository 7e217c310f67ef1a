"""
Custom exception hierarchy for the solver library and experiment harness.
"""
from typing import Optional


class DelayDDError(Exception):
    """Base exception for all delay-dd errors."""
    pass


class GridError(DelayDDError):
    """Base exception for grid construction errors."""
    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field


class NonIntegerDelay(GridError):
    """Raised when the delay is not an integer multiple of the time step."""
    pass


class NonIntegerHorizon(GridError):
    """Raised when the time horizon is not an integer multiple of the time step."""
    pass


class GridMismatchError(GridError):
    """Raised when a grid does not match the problem it is used with."""
    pass


class SolverError(DelayDDError):
    """Base exception for numerical kernel failures."""
    pass


class ZeroPivot(SolverError):
    """Raised when tridiagonal elimination meets a vanishing pivot."""
    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class LengthMismatch(DelayDDError):
    """Raised when two traces (or a trace and a grid) disagree in length."""
    def __init__(self, message: str, expected: Optional[int] = None, actual: Optional[int] = None):
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class NonConforming(DelayDDError):
    """Raised when a partition interface does not fall on a grid node."""
    def __init__(self, message: str, location: Optional[float] = None):
        super().__init__(message)
        self.location = location


class OverlapTooLarge(DelayDDError):
    """Raised when an overlap leaves a Schwarz subdomain with no width."""
    pass


class BranchFailure(DelayDDError):
    """Raised when a symbol is evaluated outside the right half-plane."""
    pass


class ConfigurationError(DelayDDError):
    """Exception raised when configuration cannot be loaded."""
    def __init__(self, message: str, config_path: Optional[str] = None):
        super().__init__(message)
        self.config_path = config_path


class ParseError(ConfigurationError):
    """Exception raised when a spec document is malformed."""
    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        key: Optional[str] = None,
        config_path: Optional[str] = None
    ):
        super().__init__(message, config_path)
        self.line = line
        self.key = key


class ValidationError(DelayDDError):
    """Exception raised when validation fails."""
    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field


class ExperimentError(DelayDDError):
    """Exception raised when an experiment run fails; wraps the module error."""
    def __init__(self, message: str, spec_name: Optional[str] = None, method: Optional[str] = None):
        super().__init__(message)
        self.spec_name = spec_name
        self.method = method


class OutputError(DelayDDError):
    """Exception raised when result files cannot be written."""
    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(message)
        self.path = path
