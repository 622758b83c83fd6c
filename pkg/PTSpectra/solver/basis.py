"""
Truncated matrix of H = p^2 + m2 x^2 - (ix)^N in unit-frequency oscillator eigenfunctions.

The kinetic and mass terms come from ladder algebra. For the potential, h_m h_n has parity
(-1)^{m+n}, so with (ix)^N = |x|^N e^{+-i N pi/2} on the two half-lines every element is a single
half-line integral I_mn = int_0^inf h_m h_n x^N dx times 2cos(N pi/2) (m+n even) or
2i sin(N pi/2) (m+n odd). In t = x^2 those integrals carry the weight t^alpha e^{-t} and are
evaluated exactly by generalized Gauss-Laguerre nodes.
"""
import math
from typing import List, Optional, Tuple

from loguru import logger
import numpy as np
from scipy.linalg import LinAlgError, eig
from scipy.special import roots_genlaguerre

from PTSpectra.model.exceptions import ConvergenceError, DomainError
from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.model.potential import ix_pow_real_line
from PTSpectra.solver.config import BASIS_CONFIG
from PTSpectra.solver.models import BasisTruncation, ComplexDenseMatrix, EigenvalueRecord, classify


def check_domain(spec: HamiltonianSpec) -> None:
    n_lo, n_hi = BASIS_CONFIG["n_lo"], BASIS_CONFIG["n_hi"]
    if not n_lo < spec.N < n_hi:
        raise DomainError(
            f"oscillator basis needs N in ({n_lo}, {n_hi}) where both wedges contain the real axis, "
            f"got N={spec.N}"
        )


def hermite_functions(K: int, x: np.ndarray) -> np.ndarray:
    """Rows h_0..h_{K-1} of the normalized oscillator eigenfunctions at the points x."""
    x = np.asarray(x, dtype=float)
    h = np.zeros((K, x.size))
    h[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if K > 1:
        h[1] = math.sqrt(2.0) * x * h[0]
    for n in range(1, K - 1):
        h[n + 1] = math.sqrt(2.0 / (n + 1)) * x * h[n] - math.sqrt(n / (n + 1)) * h[n - 1]
    return h


def kinetic_matrix(K: int, m2: float) -> np.ndarray:
    """<m| p^2 + m2 x^2 |n> with x = (a + a^+)/sqrt2, p = i(a^+ - a)/sqrt2."""
    n = np.arange(K)
    T = np.diag((1.0 + m2) * (n + 0.5))
    off = 0.5 * (m2 - 1.0) * np.sqrt((n[:-2] + 1.0) * (n[:-2] + 2.0))
    T[n[:-2], n[:-2] + 2] = off
    T[n[:-2] + 2, n[:-2]] = off
    return T.astype(complex)


def _half_line_moments(K: int, N: float, order: int, alpha: float, odd: bool) -> np.ndarray:
    """I_mn = int_0^inf h_m h_n x^N dx for all m, n (only the requested parity is meaningful)."""
    t, w = roots_genlaguerre(order, alpha)
    # e^{t} restores the Gaussian already contained in h_m h_n
    scaled = np.exp(np.log(w) + t)
    x = np.sqrt(t)
    h = hermite_functions(K, x)
    weights = 0.5 * scaled / x if odd else 0.5 * scaled
    return (h * weights) @ h.T


def potential_matrix(K: int, N: float, order: Optional[int] = None) -> np.ndarray:
    """<m| (ix)^N |n> on the real line."""
    order = order or BasisTruncation.for_exponent(K, N, BASIS_CONFIG["quadrature_headroom"]).quadrature_order
    parity = np.add.outer(np.arange(K), np.arange(K)) % 2
    even = _half_line_moments(K, N, order, 0.5 * (N - 1.0), odd=False)
    odd = _half_line_moments(K, N, order, 0.5 * N, odd=True)
    # h_m h_n (ix)^N on x < 0 mirrors x > 0 up to (-1)^{m+n} and the phase of (ix)^N at x = -1
    right, left = ix_pow_real_line(np.array([1.0, -1.0]), N)
    return np.where(parity == 0, (right + left) * even, (right - left) * odd)


def ho_matrix(spec: HamiltonianSpec, trunc: BasisTruncation) -> ComplexDenseMatrix:
    check_domain(spec)
    T = kinetic_matrix(trunc.K, spec.m2)
    V = potential_matrix(trunc.K, spec.N, trunc.quadrature_order)
    return ComplexDenseMatrix(entries=T - V)


def _eig(M: ComplexDenseMatrix, residual_tol: Optional[float]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Eigenvalues, unit eigenvectors (columns) and relative residuals, ordered by Re then Im."""
    if M.dim < 2:
        raise DomainError(f"matrix dimension must be >= 2, got {M.dim}")
    residual_tol = BASIS_CONFIG["residual_tol"] if residual_tol is None else residual_tol
    try:
        values, vectors = eig(M.entries)
    except LinAlgError as e:
        raise ConvergenceError(f"dense eigensolver failed: {e}") from e

    norm = np.linalg.norm(M.entries) or 1.0
    residuals = np.linalg.norm(M.entries @ vectors - vectors * values, axis=0) / norm
    for i, residual in enumerate(residuals):
        if not residual <= residual_tol:
            raise ConvergenceError(
                f"eigenpair {i} (lambda={values[i]}) has residual {residual:.2e} > {residual_tol:.0e}",
                best=complex(values[i]),
                index=i,
            )
    order = np.lexsort((values.imag, values.real))
    return values[order], vectors[:, order], residuals[order]


def diagonalize(M: ComplexDenseMatrix, residual_tol: Optional[float] = None) -> List[Tuple[complex, float]]:
    """All eigenvalues of a dense complex matrix with relative residuals, ordered by Re then Im."""
    values, _, residuals = _eig(M, residual_tol)
    return [(complex(value), float(residual)) for value, residual in zip(values, residuals)]


def _tail_weight(vectors: np.ndarray, fraction: float) -> np.ndarray:
    """Share of each unit eigenvector carried by the top (1 - fraction) of the basis."""
    start = int(math.ceil(fraction * vectors.shape[0]))
    return np.linalg.norm(vectors[start:], axis=0) / np.linalg.norm(vectors, axis=0)


def _resolved_eigenpairs(spec: HamiltonianSpec, K: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigenvalues whose eigenvectors live in the low part of the basis, with their residuals.

    Truncation also produces eigenvalues carried by the highest oscillator states, often with
    runaway |Im E|; those are dropped before the spectrum is ordered.
    """
    trunc = BasisTruncation.for_exponent(K, spec.N, BASIS_CONFIG["quadrature_headroom"])
    values, vectors, residuals = _eig(ho_matrix(spec, trunc), None)
    resolved = _tail_weight(vectors, BASIS_CONFIG["resolved_fraction"]) < BASIS_CONFIG["tail_tol"]
    if not resolved.all():
        logger.debug(f"{spec}: dropping {int((~resolved).sum())} truncation eigenvalues at K={K}")
    return values[resolved], residuals[resolved]


def matrix_spectrum(spec: HamiltonianSpec, K: Optional[int] = None, count: int = 5,
                    tol_real: Optional[float] = None) -> List[EigenvalueRecord]:
    """
    Lowest `count` resolved eigenvalues by Re with a convergence estimate |lambda(K) - lambda(K/2)|.

    The half-size spectrum is matched by nearest value, since ordering by Re may shuffle
    levels between truncations. Fewer than `count` records come back when the basis resolves
    fewer levels.
    """
    K = BASIS_CONFIG["default_basis"] if K is None else K
    tol_real = BASIS_CONFIG["tol_real"] if tol_real is None else tol_real
    if not 1 <= count <= K:
        raise DomainError(f"count must be in [1, K={K}], got {count}")
    check_domain(spec)

    full, residuals = _resolved_eigenpairs(spec, K)
    half, _ = _resolved_eigenpairs(spec, max(2, K // 2))
    if full.size < count:
        logger.warning(f"{spec}: only {full.size} of {count} levels resolved at K={K}")
    records = []
    for n, value in enumerate(full[:count]):
        estimate = float(np.min(np.abs(half - value))) if half.size else math.inf
        converged = estimate < BASIS_CONFIG["converged_tol"]
        if not converged:
            logger.warning(f"{spec}: matrix level {n} not converged at K={K} (drift {estimate:.2e})")
        records.append(EigenvalueRecord(
            n=n,
            E=complex(value),
            method="matrix",
            residual=float(residuals[n]),
            classification=classify(complex(value), tol_real),
            estimate=estimate,
            converged=converged,
        ))
    logger.info(f"{spec}: {sum(r.is_real for r in records)} of {len(records)} matrix levels real at K={K}")
    return records
