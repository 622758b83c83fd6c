class PTSpectraError(Exception):
    """Base exception for spectral and trajectory computations"""

    pass


class DomainError(PTSpectraError, ValueError):
    """Raised when a parameter lies outside the supported domain"""

    pass


class IntegrationError(PTSpectraError):
    """Raised when an ODE integration fails before reaching its endpoint"""

    def __init__(self, message: str, last_r: float | None = None):
        super().__init__(message)
        self.last_r = last_r


class ContourConfigurationError(PTSpectraError):
    """Raised when the decaying branch at a ray endpoint cannot be identified"""

    pass


class ConvergenceError(PTSpectraError):
    """Raised when an iterative solver does not converge"""

    def __init__(self, message: str, best: complex | None = None, index: int | None = None):
        super().__init__(message)
        self.best = best
        self.index = index


class BracketError(PTSpectraError):
    """Raised when a bisection bracket does not straddle a change"""

    pass
