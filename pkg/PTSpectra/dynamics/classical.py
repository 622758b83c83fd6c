"""
Complex classical motion for H = p^2 - (ix)^N at energy E.

Hamilton's equations x' = 2p, p' = iN (ix)^{N-1} are stepped with fixed-step RK4. The velocity
v = 2p is a state variable, so the sign of sqrt(E + (ix)^N) stays continuous through turning
points. The argument of x is unwound step by step, which keeps (ix)^{N-1} on the sheet the path
has actually reached as it spirals.
"""
import cmath
import math
from typing import List, Optional, Tuple

from loguru import logger
from scipy.optimize import brentq
from scipy.special import gamma

from PTSpectra.dynamics.config import CLASSICAL_CONFIG
from PTSpectra.dynamics.models import TrajectoryResult, TrajectoryState, TurningPointPassage
from PTSpectra.model.exceptions import ConvergenceError, DomainError, IntegrationError
from PTSpectra.model.models import BranchedPoint, HamiltonianSpec
from PTSpectra.model.potential import HALF_PI, ix_pow, turning_angle, turning_points_branched


def _require_massless(spec: HamiltonianSpec) -> None:
    if not spec.massless:
        raise DomainError(f"classical dynamics covers m2 = 0 only, got m2={spec.m2}")


def classical_period(E: float, N: float) -> float:
    """T = 2 E^{(2-N)/(2N)} cos[(N-2)pi/(2N)] Gamma(1+1/N) sqrt(pi) / Gamma(1/2+1/N)"""
    if N < 2:
        raise DomainError(f"the orbit is periodic only for N >= 2 (period is infinite below), got N={N}")
    if not E > 0:
        raise DomainError(f"E must be > 0, got {E}")
    return float(
        2.0 * E ** ((2.0 - N) / (2.0 * N)) * math.cos((N - 2.0) * math.pi / (2.0 * N))
        * gamma(1.0 + 1.0 / N) * math.sqrt(math.pi) / gamma(0.5 + 1.0 / N)
    )


def spiral_escape_angle(N: float) -> float:
    """N pi / (2 - N): the unwound asymptotic argument of x^2 on the escaping spiral."""
    if not 0 < N < 2:
        raise DomainError(f"trajectories escape only for 0 < N < 2, got N={N}")
    return N * math.pi / (2.0 - N)


def escape_direction(N: float) -> float:
    """Unwound asymptotic argument of x itself, half of spiral_escape_angle."""
    return 0.5 * spiral_escape_angle(N)


def default_time_step(E: float, N: float) -> float:
    if N >= 2:
        return classical_period(E, N) / CLASSICAL_CONFIG["steps_per_period"]
    return CLASSICAL_CONFIG["dt_scale"] * E ** ((2.0 - N) / (2.0 * N))


def default_t_max(E: float, N: float) -> float:
    if N >= 2:
        return CLASSICAL_CONFIG["period_margin"] * classical_period(E, N)
    return CLASSICAL_CONFIG["escape_time_scale"] * E ** ((2.0 - N) / (2.0 * N))


def _force(x: complex, theta: float, N: float) -> complex:
    """p' = iN (ix)^{N-1} with arg(ix) = theta + pi/2."""
    r = abs(x)
    if r == 0:
        return 0j
    return 1j * N * r ** (N - 1.0) * cmath.exp(1j * (N - 1.0) * (theta + HALF_PI))


def _rk4_step(x: complex, theta: float, p: complex, dt: float, N: float) -> Tuple[complex, float, complex]:
    def unwound(y: complex) -> float:
        return theta + cmath.phase(y / x) if x != 0 else cmath.phase(y)

    k1x, k1p = 2.0 * p, _force(x, theta, N)
    x2, p2 = x + 0.5 * dt * k1x, p + 0.5 * dt * k1p
    k2x, k2p = 2.0 * p2, _force(x2, unwound(x2), N)
    x3, p3 = x + 0.5 * dt * k2x, p + 0.5 * dt * k2p
    k3x, k3p = 2.0 * p3, _force(x3, unwound(x3), N)
    x4, p4 = x + dt * k3x, p + dt * k3p
    k4x, k4p = 2.0 * p4, _force(x4, unwound(x4), N)
    x_new = x + dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
    p_new = p + dt / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p)
    return x_new, unwound(x_new), p_new


def _hermite(s: float, h: float, x0: complex, v0: complex, x1: complex, v1: complex) -> Tuple[complex, complex]:
    """Cubic Hermite position and velocity on a step of length h at fraction s."""
    s2, s3 = s * s, s * s * s
    x = (2 * s3 - 3 * s2 + 1) * x0 + (s3 - 2 * s2 + s) * h * v0 + (-2 * s3 + 3 * s2) * x1 + (s3 - s2) * h * v1
    v = ((6 * s2 - 6 * s) * x0 + (3 * s2 - 4 * s + 1) * h * v0
         + (-6 * s2 + 6 * s) * x1 + (3 * s2 - 2 * s) * h * v1) / h
    return x, v


def _refine_return(start: complex, t0: float, h: float, x0: complex, v0: complex,
                   x1: complex, v1: complex) -> Tuple[float, float]:
    """Time and distance of the closest return to start inside one step."""

    def approach(s: float) -> float:
        x, v = _hermite(s, h, x0, v0, x1, v1)
        return ((x - start).conjugate() * v).real

    s = brentq(approach, 0.0, 1.0, xtol=1e-14) if approach(0.0) < 0 < approach(1.0) else 1.0
    x, _ = _hermite(s, h, x0, v0, x1, v1)
    return t0 + s * h, abs(x - start)


def _asymptotic_angle(x: complex, theta: float, v: complex, N: float) -> float:
    """
    Extrapolated unwound argument of x for an escaping path.

    w = x^{1-N/2} grows linearly in t, so arg w tends to arg(dw/dt); the principal difference
    of the two is the remaining rotation.
    """
    a = 1.0 - 0.5 * N
    arg_w = a * theta
    arg_dw = -0.5 * N * theta + cmath.phase(v)
    remaining = math.atan2(math.sin(arg_dw - arg_w), math.cos(arg_dw - arg_w))
    return (arg_w + remaining) / a


def _same_sheet(theta: float, theta0: float, N: float) -> bool:
    """Integer N has a single sheet, so only the principal angular distance matters."""
    delta = theta - theta0
    if float(N).is_integer():
        delta = math.atan2(math.sin(delta), math.cos(delta))
    return abs(delta) < HALF_PI


def _branch_sign(x: BranchedPoint, v: complex, E: float, N: float) -> int:
    principal = 2.0 * cmath.sqrt(E + ix_pow(x, N))
    return 1 if abs(v - principal) <= abs(v + principal) else -1


def integrate_trajectory(
        spec: HamiltonianSpec,
        E: float,
        x0: Optional[BranchedPoint] = None,
        dt: Optional[float] = None,
        t_max: Optional[float] = None,
        branch_sign: int = 1,
        escape_radius: Optional[float] = None,
) -> TrajectoryResult:
    """
    Follow one classical path from x0 (default x_+).

    Stops on return to the start on the same sheet (closed-orbit), on |x| > escape_radius
    (escaped) or at t_max (step-limit). For escaped paths escape_angle is the extrapolated
    unwound argument of x^2.
    """
    _require_massless(spec)
    if not E > 0:
        raise DomainError(f"E must be > 0, got {E}")
    N = spec.N
    start = turning_points_branched(E, N)[1] if x0 is None else x0
    dt = default_time_step(E, N) if dt is None else dt
    if not dt > 0:
        raise DomainError(f"dt must be > 0, got {dt}")
    t_max = default_t_max(E, N) if t_max is None else t_max
    scale = E ** (1.0 / N)
    escape_radius = CLASSICAL_CONFIG["escape_factor"] * scale if escape_radius is None else escape_radius
    close_tol = CLASSICAL_CONFIG["close_fraction"] * scale

    x_start = start.to_complex()
    x, theta, t = x_start, start.theta, 0.0
    kinetic = E + ix_pow(start, N)
    # starting on a turning point leaves the direction to the force
    p = 0j if abs(kinetic) < 1e-12 * E else branch_sign * cmath.sqrt(kinetic)
    path = [(t, x, theta)]
    defect, approach_prev = 0.0, 0.0
    result_kwargs = {}

    for _ in range(CLASSICAL_CONFIG["max_steps"]):
        if t >= t_max:
            break
        x_new, theta_new, p_new = _rk4_step(x, theta, p, dt, N)
        t_new = t + dt
        if not (cmath.isfinite(x_new) and cmath.isfinite(p_new)):
            raise IntegrationError(f"trajectory overflowed at t={t:.6g}", last_r=abs(x))
        defect = max(defect, abs(p_new * p_new - E - ix_pow(BranchedPoint(abs(x_new), theta_new), N)))
        path.append((t_new, x_new, theta_new))

        approach = ((x_new - x_start).conjugate() * p_new).real
        if (approach_prev < 0 <= approach and abs(x_new - x_start) < close_tol
                and _same_sheet(theta_new, start.theta, N)):
            period, distance = _refine_return(x_start, t, dt, x, 2.0 * p, x_new, 2.0 * p_new)
            result_kwargs = {"outcome": "closed-orbit", "period": period, "return_distance": distance}
        elif abs(x_new) > escape_radius:
            result_kwargs = {
                "outcome": "escaped",
                "escape_angle": 2.0 * _asymptotic_angle(x_new, theta_new, 2.0 * p_new, N),
            }
        approach_prev = approach
        x, theta, p, t = x_new, theta_new, p_new, t_new
        if result_kwargs:
            break

    final = BranchedPoint(abs(x), theta)
    state = TrajectoryState(x=final, t=t, branch_sign=_branch_sign(final, 2.0 * p, E, N), v=2.0 * p)
    result = TrajectoryResult(path=path, energy_defect=defect, final=state, **result_kwargs)
    logger.info(
        f"N={N:g}, E={E:g}: {result.outcome} after {len(path) - 1} steps "
        f"(period={result.period}, escape angle={result.escape_angle}, defect={defect:.2e})"
    )
    return result


def measure_period(spec: HamiltonianSpec, E: float, dt: Optional[float] = None) -> float:
    """First-return time of the path started at x_+."""
    if spec.N < 2:
        raise DomainError(f"periodic orbits need N >= 2, got N={spec.N}")
    result = integrate_trajectory(spec, E, dt=dt)
    if result.outcome != "closed-orbit":
        raise ConvergenceError(f"trajectory at N={spec.N:g}, E={E:g} did not close ({result.outcome})")
    return result.period


def measure_escape_angle(spec: HamiltonianSpec, E: float, escape_radius: Optional[float] = None,
                         dt: Optional[float] = None) -> float:
    """Unwound asymptotic argument of x^2 for the spiral started at x_+; compare spiral_escape_angle."""
    if not 1 < spec.N < 2:
        raise DomainError(f"escape angles are measured for 1 < N < 2, got N={spec.N}")
    result = integrate_trajectory(spec, E, dt=dt, escape_radius=escape_radius)
    if result.outcome != "escaped":
        raise IntegrationError(
            f"trajectory at N={spec.N:g}, E={E:g} did not escape before t_max ({result.outcome})",
            last_r=abs(result.path[-1][1]),
        )
    return result.escape_angle


def turning_point_passages(result: TrajectoryResult, E: float, N: float) -> List[TurningPointPassage]:
    """
    Closest approaches of the path to the turning points x_n = E^{1/N} e^{i turning_angle(n)}.

    Only points on the sheet the path visits count, i.e. path samples within pi of the turning
    point's unwound angle; approaches farther than passage_fraction * E^{1/N} are dropped.
    """
    radius = E ** (1.0 / N)
    limit = CLASSICAL_CONFIG["passage_fraction"] * radius
    max_theta = max(theta for _, _, theta in result.path)
    passages = []
    n = 0
    while turning_angle(n, N) <= max_theta + math.pi:
        angle = turning_angle(n, N)
        target = cmath.rect(radius, angle)
        nearby = [
            (abs(cmath.rect(abs(x), theta) - target), theta, t)
            for t, x, theta in result.path
            if abs(theta - angle) < math.pi
        ]
        if nearby:
            distance, theta, t = min(nearby)
            if distance < limit:
                passages.append(TurningPointPassage(n=n, angle=theta, distance=distance, t=t))
        n += 1
    return passages


def turning_points_on_spiral(N: float) -> int:
    """
    Number of turning points whose unwound angle lies below escape_direction(N).

    The point with n = (N - 1)/(2 - N), when that is an integer, sits on the escape asymptote
    itself and is not counted; the path approaches it only in the limit t -> infinity.
    """
    limit = escape_direction(N) * (1.0 - 1e-12)
    count = 0
    while turning_angle(count, N) < limit:
        count += 1
    return count
