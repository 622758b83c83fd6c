"""
Complex-contour shooting for -psi'' + [m2 x^2 - (ix)^N] psi = E psi.

Each wedge contributes one ray x = r e^{i theta}. Along a ray u(r) = psi(r e^{i theta}) obeys
u'' = e^{2i theta} Q(x) u with Q = m2 x^2 - (ix)^N - E, written as four coupled real equations.
The outward-decaying solution is started at the outer radius and followed inward, where it
grows, so the integration is stable. The two rays are patched at x = 0 through their Wronskian.
"""
import cmath
import math
from typing import Callable, List, Optional, Tuple

from loguru import logger
import numpy as np
from scipy.integrate import cumulative_trapezoid, solve_ivp
from scipy.optimize import brentq, minimize_scalar

from PTSpectra.model.exceptions import (
    ContourConfigurationError,
    ConvergenceError,
    DomainError,
    IntegrationError,
)
from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.model.potential import in_wedge, ix_pow_polar, wedge_geometry
from PTSpectra.solver.config import BASIS_CONFIG, SCAN_CONFIG, SHOOTING_CONFIG
from PTSpectra.solver.models import ContourRay, EigenvalueRecord, MatchResult, classify, sort_records
from PTSpectra.semiclassics.wkb import wkb_energy
from PTSpectra.solver.roots import bisect_predicate, local_minima, secant

RayPair = Tuple[ContourRay, ContourRay]
# (lo, hi, mismatch whose phase fixes the projection)
Bracket = Tuple[float, float, complex]


def check_domain(spec: HamiltonianSpec) -> None:
    """Shooting accepts N in (1, 12]; with a mass term N = 1 is allowed as well."""
    n_min, n_max = SHOOTING_CONFIG["n_min"], SHOOTING_CONFIG["n_max"]
    lower_ok = spec.N >= n_min if spec.m2 > 0 else spec.N > n_min
    if not lower_ok or spec.N > n_max:
        bound = f"[{n_min}, {n_max}]" if spec.m2 > 0 else f"({n_min}, {n_max}]"
        raise DomainError(f"shooting supports N in {bound} for m2={spec.m2:g}, got N={spec.N}")


def q_on_ray(spec: HamiltonianSpec, E: complex, theta: float, r):
    """Q(x) = m2 x^2 - (ix)^N - E at x = r e^{i theta}."""
    return spec.m2 * np.square(r) * np.exp(2j * theta) - ix_pow_polar(r, theta, spec.N) - E


def decay_exponent_profile(spec: HamiltonianSpec, E: complex, theta: float, R: float,
                           samples: int) -> Tuple[np.ndarray, np.ndarray]:
    """Cumulative |Re| of the local decay rate e^{i theta} sqrt(Q) from the origin out to R."""
    r = np.linspace(0.0, R, samples)
    rates = np.abs((np.exp(1j * theta) * np.sqrt(q_on_ray(spec, E, theta, r).astype(complex))).real)
    return r, cumulative_trapezoid(rates, r, initial=0.0)


def outer_radius(spec: HamiltonianSpec, E: complex, theta: float,
                 threshold: Optional[float] = None) -> float:
    """Smallest radius whose accumulated decay exponent reaches the threshold."""
    threshold = SHOOTING_CONFIG["exponent_threshold"] if threshold is None else threshold
    samples = SHOOTING_CONFIG["radius_samples"]
    R = max(SHOOTING_CONFIG["min_radius"], 2.0 * abs(E) ** (1.0 / spec.N))
    while R <= SHOOTING_CONFIG["max_radius"]:
        r, phi = decay_exponent_profile(spec, E, theta, R, samples)
        if phi[-1] >= threshold:
            return float(r[np.argmax(phi >= threshold)])
        R *= 2.0
    raise ContourConfigurationError(
        f"decay exponent {threshold} not reached within radius {SHOOTING_CONFIG['max_radius']} "
        f"on ray theta={theta:.6f} for {spec}, E={E}"
    )


def default_rays(spec: HamiltonianSpec, E: complex) -> RayPair:
    """Left and right anti-Stokes rays with radii from the exponent threshold."""
    check_domain(spec)
    wedges = wedge_geometry(spec.N)
    R = max(outer_radius(spec, E, wedges.theta_left), outer_radius(spec, E, wedges.theta_right))
    rel_tol, abs_tol = SHOOTING_CONFIG["rel_tol"], SHOOTING_CONFIG["abs_tol"]
    return (
        ContourRay(angle=wedges.theta_left, outer_radius=R, rel_tol=rel_tol, abs_tol=abs_tol),
        ContourRay(angle=wedges.theta_right, outer_radius=R, rel_tol=rel_tol, abs_tol=abs_tol),
    )


def wkb_initial_data(spec: HamiltonianSpec, E: complex, ray: ContourRay) -> Tuple[complex, complex]:
    """u(R) = Q^{-1/4}, u'(R) = -k u(R) with k = e^{i theta} sqrt(Q), Re k > 0."""
    q = complex(q_on_ray(spec, E, ray.angle, ray.outer_radius))
    root = cmath.sqrt(q)
    k = ray.direction * root
    if abs(k.real) < 1e-8 * abs(k):
        raise ContourConfigurationError(
            f"decay branch is ambiguous at r={ray.outer_radius} on ray theta={ray.angle:.6f}"
        )
    if k.real < 0:
        root, k = -root, -k
    u = 1.0 / cmath.sqrt(root)
    return u, -k * u


def _rhs_factory(spec: HamiltonianSpec, E: complex, theta: float) -> Callable:
    e2 = cmath.exp(2j * theta)
    phase = cmath.exp(1j * spec.N * (theta + 0.5 * math.pi))
    m2, N = spec.m2, spec.N

    def rhs(r, y):
        c = e2 * (m2 * r * r * e2 - r ** N * phase - E)
        upp = c * complex(y[0], y[1])
        return [y[2], y[3], upp.real, upp.imag]

    return rhs


def _rk4_fixed(rhs: Callable, R: float, y0: np.ndarray, steps: int) -> np.ndarray:
    h = -R / steps
    y, r = np.asarray(y0, dtype=float), R
    for _ in range(steps):
        k1 = np.asarray(rhs(r, y))
        k2 = np.asarray(rhs(r + 0.5 * h, y + 0.5 * h * k1))
        k3 = np.asarray(rhs(r + 0.5 * h, y + 0.5 * h * k2))
        k4 = np.asarray(rhs(r + h, y + h * k3))
        y = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        r += h
    return y


def integrate_ray(
        spec: HamiltonianSpec,
        E: complex,
        ray: ContourRay,
        initial: Optional[Tuple[complex, complex]] = None,
        fixed_steps: Optional[int] = None,
) -> Tuple[complex, complex]:
    """
    Integrate the ray ODE from the outer radius to the origin.

    initial overrides the (u, du/dr) data at the outer radius; fixed_steps switches to a
    fixed-step RK4 used for verification. Returns psi(0) and dpsi/dx(0).
    """
    check_domain(spec)
    if in_wedge(ray.angle, spec.N) is None:
        raise DomainError(f"ray angle {ray.angle:.6f} lies outside both wedges for N={spec.N}")
    if initial is None:
        initial = wkb_initial_data(spec, E, ray)
    return integrate_inward(spec, E, ray, initial, fixed_steps)


def integrate_inward(
        spec: HamiltonianSpec,
        E: complex,
        ray: ContourRay,
        initial: Tuple[complex, complex],
        fixed_steps: Optional[int] = None,
) -> Tuple[complex, complex]:
    """
    Follow (u, du/dr) given at the outer radius down to r = 0, without domain checks.

    The system is linear, so the start data are scaled to unit size before integrating and
    the result is scaled back; abs_tol then stays meaningful for tiny start values.
    """
    u, du = initial
    size = max(abs(u), abs(du)) or 1.0
    u, du = u / size, du / size
    y0 = np.array([u.real, u.imag, du.real, du.imag])
    rhs = _rhs_factory(spec, complex(E), ray.angle)

    if fixed_steps:
        y = _rk4_fixed(rhs, ray.outer_radius, y0, fixed_steps)
    else:
        sol = solve_ivp(
            rhs,
            (ray.outer_radius, 0.0),
            y0,
            method=SHOOTING_CONFIG["method"],
            rtol=ray.rel_tol,
            atol=ray.abs_tol,
        )
        if not sol.success:
            raise IntegrationError(
                f"ray integration failed at r={sol.t[-1]:.6g}: {sol.message}", last_r=float(sol.t[-1])
            )
        y = sol.y[:, -1]
    if not np.all(np.isfinite(y)):
        raise IntegrationError("ray integration overflowed", last_r=0.0)
    psi0 = complex(y[0], y[1]) * size
    dpsi0 = complex(y[2], y[3]) * cmath.exp(-1j * ray.angle) * size
    return psi0, dpsi0


def is_mirror_pair(rays: RayPair) -> bool:
    """True when the left ray is the PT image (theta -> -pi - theta) of the right one."""
    left, right = rays
    return (
        abs(left.angle + math.pi + right.angle) < 1e-12
        and left.outer_radius == right.outer_radius
        and left.rel_tol == right.rel_tol
        and left.abs_tol == right.abs_tol
    )


def mismatch(spec: HamiltonianSpec, E: complex, rays: Optional[RayPair] = None,
             use_mirror: bool = True) -> MatchResult:
    """
    Patch the left and right ray solutions at the origin.

    For real E on a PT-mirrored ray pair the left solution is c conj(psi_R(-conj x)), with the
    unimodular c fixed by the two sets of start data, so a single integration suffices;
    use_mirror=False forces both integrations.
    """
    E = complex(E)
    rays = default_rays(spec, E) if rays is None else rays
    left, right = rays
    psi_r, dpsi_r = integrate_ray(spec, E, right)
    if use_mirror and E.imag == 0 and is_mirror_pair(rays):
        c = wkb_initial_data(spec, E, left)[0] / wkb_initial_data(spec, E, right)[0].conjugate()
        psi_l, dpsi_l = c * psi_r.conjugate(), -c * dpsi_r.conjugate()
    else:
        psi_l, dpsi_l = integrate_ray(spec, E, left)
    return MatchResult(psi_left0=psi_l, psi_right0=psi_r, dpsi_left0=dpsi_l, dpsi_right0=dpsi_r)


def wronskian(spec: HamiltonianSpec, rays: RayPair) -> Callable[[complex], complex]:
    """Scale-free mismatch function E -> w(E) on fixed rays."""

    def w(E: complex) -> complex:
        return mismatch(spec, E, rays).normalized

    return w


def scan_ceiling(spec: HamiltonianSpec, count: int) -> float:
    """Scan ceiling that comfortably covers the lowest `count` levels."""
    mass = math.sqrt(spec.m2)
    if spec.N >= 2:
        return wkb_energy(count + 2, spec.N) * (1.0 + mass)
    return (2.0 * (count + 2) + 1.0) * max(1.0, mass)


def default_scan_step(spec: HamiltonianSpec, E_max: float) -> float:
    """
    A quarter of the predicted level spacing, and never more than a quarter of the lowest level.

    WKB predicts both for N >= 2; below, an oscillator-like spacing 2 min(1, m) is assumed.
    """
    if spec.N >= 2:
        ground = wkb_energy(0, spec.N)
        spacing = min(wkb_energy(1, spec.N) - ground, ground)
    else:
        spacing = 2.0 * (min(1.0, math.sqrt(spec.m2)) if spec.m2 > 0 else 1.0)
    return SCAN_CONFIG["spacing_fraction"] * min(spacing, E_max)


def _dedupe(records: List[EigenvalueRecord], tol: float) -> List[EigenvalueRecord]:
    unique: List[EigenvalueRecord] = []
    for record in sorted(records, key=EigenvalueRecord.sort_key):
        if unique and abs(record.E - unique[-1].E) < tol * max(1.0, abs(record.E)):
            if record.residual < unique[-1].residual:
                unique[-1] = record
            continue
        unique.append(record)
    return unique


def _projected(w: Callable[[complex], complex], reference: complex) -> Callable[[float], float]:
    """Component of w along the phase of a reference value, a real function of real E."""
    phase = reference.conjugate() / abs(reference)

    def g(E: float) -> float:
        return (w(E) * phase).real

    return g


def _split_pair(w: Callable[[complex], complex], lo: float, hi: float,
                reference: complex) -> List[Bracket]:
    """Two brackets when the projected mismatch dips below zero inside (lo, hi), else none."""
    g = _projected(w, reference)
    dip = minimize_scalar(g, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12 * max(1.0, hi)})
    if not dip.fun < 0:
        return []
    logger.debug(f"close pair inside [{lo:.6g}, {hi:.6g}], projected minimum {dip.fun:.3e}")
    return [(lo, float(dip.x), reference), (float(dip.x), hi, reference)]


def find_real_eigenvalues(
        spec: HamiltonianSpec,
        E_max: float,
        scan_step: Optional[float] = None,
        rays: Optional[RayPair] = None,
        tol_real: Optional[float] = None,
) -> List[EigenvalueRecord]:
    """
    Scan w(E) on [0, E_max], bracket its real roots and polish each with the secant.

    On real E the mismatch is a real function times a slowly turning phase (a constant one on
    the mirrored default rays), so a root shows up as a sign flip of w projected on the phase
    of its neighbour. A local minimum of |w| without a flip may hide a close pair between two
    grid points; a bounded minimization of the projection splits it. Non-converged polishes
    come back as unclassified records with converged=False.
    """
    if not E_max > 0:
        raise DomainError(f"E_max must be > 0, got {E_max}")
    check_domain(spec)
    step = default_scan_step(spec, E_max) if scan_step is None else scan_step
    if not step > 0:
        raise DomainError(f"scan step must be > 0, got {step}")
    tol_real = SCAN_CONFIG["tol_real"] if tol_real is None else tol_real
    rays = default_rays(spec, E_max) if rays is None else rays
    w = wronskian(spec, rays)

    grid = np.linspace(0.0, E_max, math.ceil(E_max / step) + 1)
    values = np.array([w(E) for E in grid])
    magnitudes = np.abs(values)
    scale = float(magnitudes.max())
    accept = SCAN_CONFIG["accept_fraction"] * scale
    noise = SCAN_CONFIG["noise_floor"]
    logger.debug(f"scan {spec}: {grid.size} points up to E={E_max:.4g}, max|w|={scale:.3e}")

    brackets: List[Bracket] = []
    candidates: List[EigenvalueRecord] = []
    flipped = set()
    for i in range(grid.size - 1):
        if (values[i + 1] * values[i].conjugate()).real < 0 and max(magnitudes[i:i + 2]) >= noise:
            brackets.append((float(grid[i]), float(grid[i + 1]), complex(values[i])))
            flipped.update((i, i + 1))
    for index in local_minima(magnitudes):
        lo, hi = max(0, index - 1), min(grid.size - 1, index + 1)
        if index in flipped or magnitudes[lo:hi + 1].max() < noise:
            continue
        if magnitudes[index] == 0:
            # grid point on a root
            candidates.append(EigenvalueRecord(
                n=-1, E=complex(grid[index]), method="shoot", residual=0.0,
                classification=classify(complex(grid[index]), tol_real),
            ))
            continue
        brackets.extend(_split_pair(w, float(grid[lo]), float(grid[hi]), complex(values[index])))

    for lo, hi, reference in brackets:
        seed = brentq(_projected(w, reference), lo, hi, xtol=1e-13)
        offset = min(SCAN_CONFIG["seed_offset"] * max(1.0, seed), 0.1 * (hi - lo))
        result = secant(w, seed, seed + offset, tol=SCAN_CONFIG["secant_tol"],
                        maxiter=SCAN_CONFIG["secant_max_iter"])
        if not result.converged:
            logger.warning(f"secant from E={seed:.6g} did not converge (best {result.root})")
            candidates.append(EigenvalueRecord(
                n=-1, E=complex(result.root), method="shoot", residual=result.residual, converged=False,
            ))
            continue
        E, residual = complex(result.root), result.residual
        if not lo <= E.real <= hi:
            # the polish left the bracket for a neighbouring root
            E, residual = complex(seed), abs(w(seed))
        if not 0 < E.real <= E_max * (1 + 1e-9):
            continue
        if residual > accept:
            logger.debug(f"rejecting root {E} (residual {residual:.2e})")
            continue
        candidates.append(EigenvalueRecord(
            n=-1, E=E, method="shoot", residual=residual, classification=classify(E, tol_real),
        ))

    records = sort_records(_dedupe(candidates, SCAN_CONFIG["duplicate_tol"]))
    logger.info(
        f"{spec}: {sum(r.is_real for r in records)} real roots below E={E_max:.4g}"
    )
    return records


def count_real_levels(spec: HamiltonianSpec, E_max: float, scan_step: Optional[float] = None) -> int:
    return sum(record.is_real for record in find_real_eigenvalues(spec, E_max, scan_step))


def refine_complex(spec: HamiltonianSpec, E0: complex, rays: Optional[RayPair] = None,
                   tol_real: Optional[float] = None) -> EigenvalueRecord:
    """Polish a complex seed with the complex secant; raises ConvergenceError on failure."""
    E0 = complex(E0)
    tol_real = SCAN_CONFIG["tol_real"] if tol_real is None else tol_real
    rays = default_rays(spec, abs(E0)) if rays is None else rays
    w = wronskian(spec, rays)
    offset = SCAN_CONFIG["seed_offset"] * max(1.0, abs(E0)) * cmath.exp(0.25j * math.pi)
    result = secant(w, E0, E0 + offset, tol=SCAN_CONFIG["secant_tol"],
                    maxiter=SCAN_CONFIG["secant_max_iter"])
    if not result.converged:
        raise ConvergenceError(
            f"complex secant from E0={E0} did not converge; best iterate {result.root}",
            best=result.root,
        )
    E = result.root
    if abs(E.imag) <= tol_real * max(1.0, abs(E.real)):
        E = complex(E.real, 0.0)
    return EigenvalueRecord(n=-1, E=E, method="shoot", residual=result.residual,
                            classification=classify(E, tol_real))


def _complex_supplement(spec: HamiltonianSpec, count: int) -> List[EigenvalueRecord]:
    from PTSpectra.solver.basis import matrix_spectrum

    seeds = matrix_spectrum(spec, K=BASIS_CONFIG["seed_basis"], count=count + 6)
    supplement = []
    for seed in seeds:
        if seed.E.imag <= 0 or seed.is_real:
            continue
        try:
            root = refine_complex(spec, seed.E)
        except ConvergenceError as e:
            logger.warning(f"dropping matrix seed {seed.E}: {e}")
            continue
        if root.is_real:
            continue
        supplement.append(root)
        supplement.append(EigenvalueRecord(
            n=-1, E=root.E.conjugate(), method="shoot", residual=root.residual,
            classification=root.classification,
        ))
    return supplement


def spectrum(spec: HamiltonianSpec, count: int) -> List[EigenvalueRecord]:
    """Lowest `count` levels by Re E: real roots from the scan, complex pairs from matrix seeds."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    check_domain(spec)
    E_max = scan_ceiling(spec, count)
    real: List[EigenvalueRecord] = []
    for _ in range(3):
        real = [r for r in find_real_eigenvalues(spec, E_max) if r.is_real]
        if len(real) >= count or spec.N < 2:
            break
        E_max *= 1.5

    records = list(real)
    if len(records) < count and BASIS_CONFIG["n_lo"] < spec.N < BASIS_CONFIG["n_hi"]:
        records.extend(_complex_supplement(spec, count))
    records = sort_records(_dedupe(records, SCAN_CONFIG["duplicate_tol"]))
    return records[:count]


def find_merge_N(
        m2: float,
        pair_index: int,
        N_lo: float,
        N_hi: float,
        n_tol: Optional[float] = None,
        E_max: Optional[float] = None,
) -> float:
    """
    Bisect on N for the point where levels pair_index and pair_index+1 stop being both real.

    The predicate at a given N is "at least pair_index + 2 real roots below E_max", i.e. the
    pair and every level beneath it are real.
    """
    if pair_index < 0:
        raise DomainError(f"pair index must be >= 0, got {pair_index}")
    if not N_lo < N_hi:
        raise DomainError(f"empty bracket [{N_lo}, {N_hi}]")
    n_tol = SCAN_CONFIG["merge_n_tol"] if n_tol is None else n_tol
    E_max = 2.0 * (2 * pair_index + 3) + 2.0 if E_max is None else E_max

    def pair_is_real(N: float) -> bool:
        spec = HamiltonianSpec(N=N, m2=m2)
        return count_real_levels(spec, E_max) >= pair_index + 2

    N_star = bisect_predicate(pair_is_real, N_lo, N_hi, n_tol)
    logger.info(f"levels ({pair_index}, {pair_index + 1}) merge at N*={N_star:.6f} (m2={m2:g})")
    return N_star
