"""
Leading-order complex WKB for H = p^2 - (ix)^N.

For N >= 2 the phase integral runs from x_- to x_+ along the two rays through the origin on
which E + (ix)^N = E - r^N is real, which gives

    (n + 1/2) pi = 2 sin(pi/N) E^{1/N + 1/2} int_0^1 sqrt(1 - s^N) ds.

The Hermitian |x|^N potential has the same relation without the sin(pi/N) factor.
"""
import cmath
import math
from typing import List

from loguru import logger
from scipy.integrate import quad
from scipy.special import gamma

from PTSpectra.model.exceptions import DomainError
from PTSpectra.model.potential import ix_pow_polar, turning_points_branched
from PTSpectra.semiclassics.models import WkbEstimate
from PTSpectra.solver.models import EigenvalueRecord


def _require_complex_wkb(N: float) -> None:
    if N < 2:
        raise DomainError(
            f"complex WKB needs N >= 2 (the turning-point path crosses the cut below), got N={N}"
        )


def _require_level(n: int) -> None:
    if n < 0:
        raise DomainError(f"level index must be >= 0, got {n}")


def _closed_form(n: int, N: float, sin_factor: float) -> float:
    base = gamma(1.5 + 1.0 / N) * math.sqrt(math.pi) * (n + 0.5) / (sin_factor * gamma(1.0 + 1.0 / N))
    return float(base ** (2.0 * N / (N + 2.0)))


def wkb_energy(n: int, N: float) -> float:
    """E_n ~ [Gamma(3/2+1/N) sqrt(pi) (n+1/2) / (sin(pi/N) Gamma(1+1/N))]^{2N/(N+2)}"""
    _require_level(n)
    _require_complex_wkb(N)
    return _closed_form(n, N, math.sin(math.pi / N))


def hermitian_wkb_energy(n: int, N: float) -> float:
    """Same estimate for the Hermitian potential |x|^N."""
    _require_level(n)
    if not N > 0:
        raise DomainError(f"N must be > 0, got {N}")
    return _closed_form(n, N, 1.0)


def _shape_integral(N: float) -> float:
    value, _ = quad(lambda s: math.sqrt(max(0.0, 1.0 - s ** N)), 0.0, 1.0, epsabs=1e-12, epsrel=1e-10)
    return value


def wkb_quantization_integral(E: float, N: float) -> float:
    """2 sin(pi/N) E^{1/N+1/2} int_0^1 sqrt(1 - s^N) ds"""
    if not E > 0:
        raise DomainError(f"E must be > 0, got {E}")
    _require_complex_wkb(N)
    return 2.0 * math.sin(math.pi / N) * E ** (1.0 / N + 0.5) * _shape_integral(N)


def hermitian_quantization_integral(E: float, N: float) -> float:
    """2 E^{1/N+1/2} int_0^1 sqrt(1 - s^N) ds, the phase integral of p^2 + |x|^N."""
    if not E > 0:
        raise DomainError(f"E must be > 0, got {E}")
    if not N > 0:
        raise DomainError(f"N must be > 0, got {N}")
    return 2.0 * E ** (1.0 / N + 0.5) * _shape_integral(N)


def _ray_integral(E: float, N: float, r_max: float, theta: float) -> complex:
    """int_0^{r_max} sqrt(E + (ix)^N) dx along x = r e^{i theta}"""

    def integrand(r: float) -> complex:
        return cmath.sqrt(E + complex(ix_pow_polar(r, theta, N))) * cmath.exp(1j * theta)

    re, _ = quad(lambda r: integrand(r).real, 0.0, r_max, epsabs=1e-12, epsrel=1e-10, limit=200)
    im, _ = quad(lambda r: integrand(r).imag, 0.0, r_max, epsabs=1e-12, epsrel=1e-10, limit=200)
    return complex(re, im)


def phase_integral_contour(E: float, N: float) -> complex:
    """
    int sqrt(E + (ix)^N) dx from x_- through the origin to x_+, by direct complex quadrature.

    For N >= 2 the result is real and equals wkb_quantization_integral(E, N).
    """
    _require_complex_wkb(N)
    x_minus, x_plus = turning_points_branched(E, N)
    value = _ray_integral(E, N, x_plus.r, x_plus.theta) - _ray_integral(E, N, x_minus.r, x_minus.theta)
    logger.debug(f"contour phase integral at E={E:g}, N={N:g}: {value:.10g}")
    return value


def wkb_estimates(count: int, N: float, hermitian: bool = False) -> List[WkbEstimate]:
    energy = hermitian_wkb_energy if hermitian else wkb_energy
    return [WkbEstimate(n=n, E=energy(n, N), N=N) for n in range(count)]


def wkb_spectrum(count: int, N: float) -> List[EigenvalueRecord]:
    return [estimate.to_record() for estimate in wkb_estimates(count, N)]


def hermitian_wkb_spectrum(count: int, N: float) -> List[EigenvalueRecord]:
    return [estimate.to_record() for estimate in wkb_estimates(count, N, hermitian=True)]
