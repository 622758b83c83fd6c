"""
The N = 1 boundary case H = p^2 - ix.

Here psi'' = (-ix - E) psi is solved by psi(x) = Ai(z) with z = e^{-i pi/6} x - E e^{i pi/3}, which
decays along the ray theta = pi/6. The flux d/dx |psi|^2 at the origin is -1/(2 pi) for every
real E, so the PT-symmetric patching d/dx |psi|^2 = 0 can never hold and there is no real level.
"""
import cmath
import math
from typing import Optional, Tuple

from loguru import logger

from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.solver.config import SHOOTING_CONFIG
from PTSpectra.solver.models import ContourRay
from PTSpectra.solver.shooting import integrate_inward

AIRY_RAY_ANGLE = math.pi / 6
AIRY_DEFECT = -1.0 / (2.0 * math.pi)

# Coefficients of the large-|z| series for Ai and Ai'
_AI_TERMS = (1.0, 5.0 / 72.0, 385.0 / 10368.0)
_AI_PRIME_TERMS = (1.0, -7.0 / 72.0, -455.0 / 10368.0)


def airy_argument(E: float, r: float) -> complex:
    return r - E * cmath.exp(1j * math.pi / 3)


def airy_asymptotic(z: complex) -> Tuple[complex, complex]:
    """Ai(z) and Ai'(z) for large |z| with |arg z| < pi, three terms of each series."""
    zeta = (2.0 / 3.0) * z ** 1.5
    decay = cmath.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    ai = sum((-1) ** k * c / zeta ** k for k, c in enumerate(_AI_TERMS))
    ai_prime = sum((-1) ** k * c / zeta ** k for k, c in enumerate(_AI_PRIME_TERMS))
    return decay * ai / z ** 0.25, -decay * ai_prime * z ** 0.25


def airy_radius(E: float, threshold: Optional[float] = None) -> float:
    """Radius where (2/3) z^{3/2} has grown to the exponent threshold."""
    threshold = SHOOTING_CONFIG["exponent_threshold"] if threshold is None else threshold
    return max(SHOOTING_CONFIG["min_radius"], abs(E) + (1.5 * threshold) ** (2.0 / 3.0) + 1.0)


def airy_boundary_values(E: float, threshold: Optional[float] = None) -> Tuple[complex, complex]:
    """psi(0) and dpsi/dx(0) of the decaying N = 1 solution, integrated in from the series data."""
    R = airy_radius(E, threshold)
    ray = ContourRay(
        angle=AIRY_RAY_ANGLE,
        outer_radius=R,
        rel_tol=SHOOTING_CONFIG["rel_tol"],
        abs_tol=SHOOTING_CONFIG["abs_tol"],
    )
    # du/dr = e^{i pi/6} dpsi/dx = Ai'(z)
    initial = airy_asymptotic(airy_argument(E, R))
    return integrate_inward(HamiltonianSpec(N=1.0), complex(E), ray, initial)


def airy_defect(E: float, threshold: Optional[float] = None) -> float:
    """d/dx |psi|^2 at x = 0 for the right-wedge solution of H = p^2 - ix."""
    psi0, dpsi0 = airy_boundary_values(E, threshold)
    defect = 2.0 * (psi0.conjugate() * dpsi0).real
    logger.debug(f"airy defect at E={E:g}: {defect:.8f} (exact {AIRY_DEFECT:.8f})")
    return defect
