"""
Ground state of H = p^2 - (ix)^{1+eps} for small eps.

The eigenvalue condition reduces to the implicit relation

    eps e^{(4/3) E^{3/2}} E^{-3/2} [sqrt3 ln(2 sqrt E) + pi - (1 - gamma) sqrt3] / 8 = 1,

solved here in logarithmic form so large E does not overflow.
"""
import math

from loguru import logger
from scipy.optimize import brentq

from PTSpectra.model.exceptions import BracketError, DomainError
from PTSpectra.semiclassics.models import EULER_GAMMA, EpsilonEnergy

E_BRACKET = (0.5, 50.0)
EPS_MAX = 0.5


def _bracket_term(E: float) -> float:
    sqrt3 = math.sqrt(3.0)
    return (sqrt3 * math.log(2.0 * math.sqrt(E)) + math.pi - (1.0 - EULER_GAMMA) * sqrt3) / 8.0


def eq13_residual(E: float, eps: float) -> float:
    """Left side of the implicit relation minus one."""
    if not E > 0:
        raise DomainError(f"E must be > 0, got {E}")
    if not eps > 0:
        raise DomainError(f"eps must be > 0, got {eps}")
    exponent = math.log(eps) + (4.0 / 3.0) * E ** 1.5 - 1.5 * math.log(E)
    return math.exp(min(exponent, 700.0)) * _bracket_term(E) - 1.0


def log_residual(E: float, eps: float) -> float:
    """log of the left side; same root as eq13_residual, monotone on the bracket."""
    term = _bracket_term(E)
    if term <= 0:
        return -math.inf
    return math.log(eps) + (4.0 / 3.0) * E ** 1.5 - 1.5 * math.log(E) + math.log(term)


def ground_energy_near_one(eps: float, xtol: float = 1e-12) -> float:
    if not 0 < eps <= EPS_MAX:
        raise DomainError(f"eps must be in (0, {EPS_MAX}], got {eps}")
    lo, hi = E_BRACKET
    try:
        E = brentq(log_residual, lo, hi, args=(eps,), xtol=xtol)
    except ValueError as e:
        raise BracketError(f"no root of the eps={eps:g} relation in E in [{lo}, {hi}]: {e}") from e
    logger.debug(f"eps={eps:g}: asymptotic ground energy {E:.8f}")
    return E


def epsilon_energy(eps: float) -> EpsilonEnergy:
    return EpsilonEnergy(eps=eps, E=ground_energy_near_one(eps))


def scaling_ratio(eps: float) -> float:
    """E(eps) / (-ln eps)^{2/3}"""
    return epsilon_energy(eps).scaling_ratio
