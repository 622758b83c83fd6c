"""Secant polishing, grid minima and bisection used by the spectral scans."""
from dataclasses import dataclass
from typing import Callable, List

from loguru import logger
import numpy as np

from PTSpectra.model.exceptions import BracketError


@dataclass(frozen=True)
class SecantResult:
    root: complex
    residual: float
    iterations: int
    converged: bool


def secant(
        func: Callable[[complex], complex],
        x0: complex,
        x1: complex,
        tol: float = 1e-9,
        ftol: float = 1e-13,
        maxiter: int = 60,
) -> SecantResult:
    """
    Complex secant iteration.

    Stops when the step falls below tol * max(1, |x|) or |f| below ftol. Never raises; the
    caller decides what a non-converged result means.
    """
    p0, p1 = complex(x0), complex(x1)
    q0, q1 = func(p0), func(p1)
    if abs(q0) < abs(q1):
        p0, p1, q0, q1 = p1, p0, q1, q0

    best, best_q = p1, abs(q1)
    for iteration in range(1, maxiter + 1):
        if abs(q1) < ftol:
            return SecantResult(p1, abs(q1), iteration, True)
        if q1 == q0:
            break
        p = p1 - q1 * (p1 - p0) / (q1 - q0)
        if not np.isfinite(p):
            break
        if abs(p - p1) < tol * max(1.0, abs(p)):
            return SecantResult(p, abs(q1), iteration, True)
        p0, q0 = p1, q1
        p1, q1 = p, func(p)
        logger.trace(f"secant {iteration}: x={p1}, |f|={abs(q1):.3e}")
        if abs(q1) < best_q:
            best, best_q = p1, abs(q1)
    return SecantResult(best, best_q, maxiter, False)


def local_minima(values: np.ndarray) -> List[int]:
    """Indices of local minima of a sampled curve, endpoints included when lower than their neighbour."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return list(range(values.size))
    minima = []
    for i in range(values.size):
        left = values[i - 1] if i > 0 else np.inf
        right = values[i + 1] if i < values.size - 1 else np.inf
        if values[i] <= left and values[i] <= right:
            minima.append(i)
    return minima


def bisect_predicate(
        predicate: Callable[[float], bool],
        lo: float,
        hi: float,
        tol: float,
) -> float:
    """
    Locate the switch of a boolean predicate between lo and hi.

    Returns the midpoint of the final bracket, whose width is below tol.
    """
    p_lo, p_hi = predicate(lo), predicate(hi)
    if p_lo == p_hi:
        raise BracketError(
            f"predicate is {p_lo} at both ends of [{lo}, {hi}]; no switch inside the bracket"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        p_mid = predicate(mid)
        logger.debug(f"bisection [{lo:.6f}, {hi:.6f}] mid={mid:.6f} -> {p_mid}")
        if p_mid == p_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
