from dataclasses import dataclass, replace
import math
from typing import Dict, List, Literal, Optional

import numpy as np

from PTSpectra.model.exceptions import DomainError

Method = Literal["shoot", "matrix", "wkb", "asymptotic"]
Classification = Literal["real", "complex-pair"]


def classify(E: complex, tol_real: float = 1e-8) -> Classification:
    """real iff |Im E| <= tol_real * max(1, |Re E|)"""
    if abs(E.imag) <= tol_real * max(1.0, abs(E.real)):
        return "real"
    return "complex-pair"


@dataclass(frozen=True)
class ContourRay:
    """Integration ray x = r e^{i angle}, r from outer_radius down to 0"""
    angle: float
    outer_radius: float
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12

    def __post_init__(self):
        if not self.outer_radius > 0:
            raise DomainError(f"outer_radius must be > 0, got {self.outer_radius}")

    @property
    def direction(self) -> complex:
        return complex(math.cos(self.angle), math.sin(self.angle))

    def rotated(self, delta: float) -> "ContourRay":
        return replace(self, angle=self.angle + delta)

    def scaled(self, factor: float) -> "ContourRay":
        return replace(self, outer_radius=self.outer_radius * factor)


@dataclass(frozen=True)
class MatchResult:
    """Boundary values of the left/right ray solutions at x = 0"""
    psi_left0: complex
    psi_right0: complex
    dpsi_left0: complex
    dpsi_right0: complex

    @property
    def W(self) -> complex:
        return self.psi_left0 * self.dpsi_right0 - self.dpsi_left0 * self.psi_right0

    @property
    def normalized(self) -> complex:
        """W over the norms of the two boundary vectors (psi, dpsi); |w| <= 1, zero only at a root."""
        scale = (math.hypot(abs(self.psi_left0), abs(self.dpsi_left0))
                 * math.hypot(abs(self.psi_right0), abs(self.dpsi_right0)))
        if scale == 0:
            return 0j
        return self.W / scale


@dataclass(frozen=True)
class EigenvalueRecord:
    """One spectral point of one method"""
    n: int
    E: complex
    method: Method
    residual: float = 0.0
    classification: Optional[Classification] = None
    estimate: Optional[float] = None
    converged: bool = True

    @property
    def is_real(self) -> bool:
        return self.classification == "real"

    def sort_key(self):
        return (self.E.real, self.E.imag)

    def with_index(self, n: int) -> "EigenvalueRecord":
        return replace(self, n=n)

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "re_e": self.E.real,
            "im_e": self.E.imag,
            "method": self.method,
            "residual": self.residual,
            "classification": self.classification or "",
        }

    def __str__(self) -> str:
        return (
            f"E_{self.n} = {self.E.real:.10g}{self.E.imag:+.3g}i "
            f"[{self.method}, {self.classification or 'unclassified'}, residual={self.residual:.2g}]"
        )


def sort_records(records: List[EigenvalueRecord]) -> List[EigenvalueRecord]:
    """Order by Re E then Im E and renumber the level index."""
    ordered = sorted(records, key=EigenvalueRecord.sort_key)
    return [record.with_index(i) for i, record in enumerate(ordered)]


@dataclass(frozen=True)
class BasisTruncation:
    """Harmonic-oscillator basis size K and half-line quadrature order"""
    K: int
    quadrature_order: int

    def __post_init__(self):
        if self.K < 2:
            raise DomainError(f"basis dimension must be >= 2, got {self.K}")
        if self.quadrature_order < self.K:
            raise DomainError(
                f"quadrature order {self.quadrature_order} is below basis dimension {self.K}"
            )

    @classmethod
    def for_exponent(cls, K: int, N: float, headroom: int = 8) -> "BasisTruncation":
        return cls(K=K, quadrature_order=K + math.ceil(N) + headroom)


@dataclass(frozen=True)
class ComplexDenseMatrix:
    """Truncated Hamiltonian; complex symmetric and PT structured"""
    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def symmetry_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.T)))

    def pt_defect(self) -> float:
        """max |M - Pi conj(M) Pi| with Pi = diag((-1)^i)."""
        parity = (-1.0) ** np.arange(self.dim)
        mirrored = parity[:, None] * np.conj(self.entries) * parity[None, :]
        return float(np.max(np.abs(self.entries - mirrored)))
