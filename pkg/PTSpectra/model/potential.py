"""
Branch-correct evaluation of (ix)^N and the complex-plane geometry of the family.

Convention: arg(ix) = theta + pi/2 where theta is the argument of x. Spectral computations use
the chart theta in (-3pi/2, pi/2], i.e. a cut along the positive-imaginary x axis; the negative
real axis is theta = -pi.
"""
import cmath
import math
from typing import Literal, Optional

import numpy as np

from PTSpectra.model.exceptions import DomainError
from PTSpectra.model.models import BranchedPoint, TurningPair, WedgeGeometry

HALF_PI = 0.5 * math.pi


def _require_positive_n(N: float) -> None:
    if not N > 0:
        raise DomainError(f"N must be > 0, got {N}")


def _is_integer(N: float) -> bool:
    return float(N).is_integer() and abs(N) < 64


def ix_pow_polar(r, theta, N: float):
    """(ix)^N at x = r e^{i theta}; r and theta may be numpy arrays."""
    return np.power(r, N) * np.exp(1j * N * (theta + HALF_PI))


def ix_pow(x: BranchedPoint, N: float) -> complex:
    """
    Evaluate (ix)^N on the sheet selected by the unwound argument of x.

    Returns r^N exp(iN(theta + pi/2)); integer N is evaluated by repeated multiplication, which
    is branch independent and exact in the sense that N=2 gives -x^2.
    """
    if x.r == 0:
        if N < 0:
            raise DomainError("(ix)^N is singular at x = 0 for N < 0")
        return 0j if N > 0 else 1 + 0j
    if _is_integer(N):
        return (1j * x.to_complex()) ** int(N)
    return complex(x.r ** N * cmath.exp(1j * N * (x.theta + HALF_PI)))


def ix_pow_real_line(x: np.ndarray, N: float) -> np.ndarray:
    """(ix)^N for real x: |x|^N [cos(N pi/2) + i sin(N pi/2) sgn(x)]."""
    x = np.asarray(x, dtype=float)
    return np.abs(x) ** N * (math.cos(N * HALF_PI) + 1j * math.sin(N * HALF_PI) * np.sign(x))


def branched(z: complex) -> BranchedPoint:
    """Place a Cartesian point in the cut chart theta in (-3pi/2, pi/2]."""
    theta = cmath.phase(z)
    if theta > HALF_PI:
        theta -= 2 * math.pi
    return BranchedPoint(r=abs(z), theta=theta)


def display_angle(theta: float) -> float:
    """Reduce an angle to (-pi, pi] for reporting."""
    return math.atan2(math.sin(theta), math.cos(theta))


def wedge_geometry(N: float) -> WedgeGeometry:
    """Anti-Stokes centres of the left/right wedges continued from the harmonic oscillator."""
    _require_positive_n(N)
    tilt = (N - 2) * math.pi / (2 * (N + 2))
    return WedgeGeometry(
        theta_left=-math.pi + tilt,
        theta_right=-tilt,
        opening=2 * math.pi / (N + 2),
    )


def in_wedge(theta: float, N: float) -> Optional[Literal["left", "right"]]:
    """Which wedge (if any) contains the direction theta, measured in the cut chart."""
    wedges = wedge_geometry(N)
    if abs(theta - wedges.theta_right) < wedges.half_opening:
        return "right"
    if abs(theta - wedges.theta_left) < wedges.half_opening:
        return "left"
    return None


def turning_points_branched(E: float, N: float) -> tuple[BranchedPoint, BranchedPoint]:
    """The pair (x_-, x_+) as BranchedPoints: arguments -pi/2 -+ pi/N."""
    if not E > 0:
        raise DomainError(f"E must be > 0, got {E}")
    _require_positive_n(N)
    r = E ** (1.0 / N)
    return (
        BranchedPoint(r=r, theta=-HALF_PI - math.pi / N),
        BranchedPoint(r=r, theta=-HALF_PI + math.pi / N),
    )


def turning_points(E: float, N: float) -> TurningPair:
    """x_- = E^{1/N} e^{i pi(3/2 - 1/N)}, x_+ = E^{1/N} e^{-i pi(1/2 - 1/N)}."""
    x_minus, x_plus = turning_points_branched(E, N)
    return TurningPair(x_minus=x_minus.to_complex(), x_plus=x_plus.to_complex())


def turning_angle(n: int, N: float) -> float:
    """Argument of the n-th turning point along the anticlockwise spiral (n=0 is x_+)."""
    if n < 0:
        raise DomainError(f"turning point index must be >= 0, got {n}")
    _require_positive_n(N)
    return (4 * n - N + 2) * math.pi / (2 * N)
