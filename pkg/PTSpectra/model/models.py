import cmath
from dataclasses import dataclass

from PTSpectra.model.exceptions import DomainError


@dataclass(frozen=True)
class HamiltonianSpec:
    """Member of the family H = p^2 + m2 x^2 - (ix)^N"""
    N: float
    m2: float = 0.0

    def __post_init__(self):
        if not self.N > 0:
            raise DomainError(f"N must be > 0, got {self.N}")
        if self.m2 < 0:
            raise DomainError(f"m2 must be >= 0, got {self.m2}")

    @property
    def massless(self) -> bool:
        return self.m2 == 0

    def __str__(self) -> str:
        return f"N={self.N:g}, m2={self.m2:g}"


@dataclass(frozen=True)
class BranchedPoint:
    """
    Polar point with an unwound argument.

    theta is never reduced mod 2*pi, so (ix)^N evaluated from it stays on the sheet the
    caller tracked. Spectral code keeps theta inside the cut chart (-3pi/2, pi/2].
    """
    r: float
    theta: float

    def __post_init__(self):
        if self.r < 0:
            raise DomainError(f"modulus must be >= 0, got {self.r}")

    def to_complex(self) -> complex:
        return cmath.rect(self.r, self.theta)


@dataclass(frozen=True)
class WedgeGeometry:
    """Anti-Stokes ray angles of the left and right Stokes wedges"""
    theta_left: float
    theta_right: float
    opening: float

    @property
    def half_opening(self) -> float:
        return 0.5 * self.opening


@dataclass(frozen=True)
class TurningPair:
    """Classical turning points x_- and x_+ continued off the real axis"""
    x_minus: complex
    x_plus: complex

    def __iter__(self):
        yield self.x_minus
        yield self.x_plus
