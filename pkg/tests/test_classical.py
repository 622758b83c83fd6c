import math

import pytest

from PTSpectra.dynamics.classical import (
    classical_period,
    escape_direction,
    integrate_trajectory,
    measure_escape_angle,
    measure_period,
    spiral_escape_angle,
    turning_point_passages,
    turning_points_on_spiral,
)
from PTSpectra.dynamics.models import TrajectoryResult, TrajectoryState
from PTSpectra.model.exceptions import DomainError
from PTSpectra.model.models import BranchedPoint, HamiltonianSpec
from PTSpectra.model.potential import turning_angle


@pytest.mark.parametrize(
    "E, N, expected",
    [(1.0, 2.0, math.pi), (7.0, 2.0, math.pi), (1.0, 3.0, 2.4286), (1.0, 4.0, 1.8541)],
)
def test_closed_form_period(E, N, expected):
    assert classical_period(E, N) == pytest.approx(expected, abs=1e-4)


def test_period_scales_with_energy():
    assert classical_period(8.0, 3.0) == pytest.approx(classical_period(1.0, 3.0) * 8.0 ** (-1.0 / 6.0))


@pytest.mark.parametrize("E, N", [(1.0, 2.0), (7.0, 2.0), (1.0, 3.0), (1.0, 4.0)])
def test_measured_period(E, N):
    spec = HamiltonianSpec(N=N)
    assert measure_period(spec, E) == pytest.approx(classical_period(E, N), rel=1e-3)


def test_closed_orbit_returns_to_start(cubic):
    result = integrate_trajectory(cubic, 1.0)
    assert result.outcome == "closed-orbit"
    assert result.return_distance < 1e-6
    assert result.energy_defect < 1e-8
    assert result.final.branch_sign in (-1, 1)


def test_linear_potential_escapes_straight_up():
    # x(t) = i(E + t^2) exactly
    result = integrate_trajectory(HamiltonianSpec(N=1.0), 1.0)
    assert result.outcome == "escaped"
    assert result.escape_angle == pytest.approx(spiral_escape_angle(1.0), abs=1e-6)


def test_spiral_angles():
    assert spiral_escape_angle(1.0) == pytest.approx(math.pi)
    assert spiral_escape_angle(1.5) == pytest.approx(3 * math.pi)
    assert spiral_escape_angle(1.999) > 100 * math.pi
    assert escape_direction(1.5) == pytest.approx(1.5 * math.pi)


@pytest.mark.parametrize("N, expected", [(1.5, 3 * math.pi), (1.2, 1.5 * math.pi)])
def test_measured_escape_angle(N, expected):
    assert measure_escape_angle(HamiltonianSpec(N=N), 1.0) == pytest.approx(expected, rel=0.05)


@pytest.mark.slow
def test_escape_angle_near_two():
    assert measure_escape_angle(HamiltonianSpec(N=1.9), 1.0) == pytest.approx(19 * math.pi, rel=0.1)


@pytest.mark.slow
def test_escape_angle_grows_with_n():
    angles = [measure_escape_angle(HamiltonianSpec(N=N), 1.0) for N in (1.2, 1.5, 1.8, 1.9)]
    assert angles == sorted(angles)
    assert angles[-1] > 15 * math.pi


def test_turning_point_passages_start_at_x_plus():
    result = integrate_trajectory(HamiltonianSpec(N=1.5), 1.0)
    passages = turning_point_passages(result, 1.0, 1.5)
    assert [p.n for p in passages] == [0]
    assert passages[0].distance == pytest.approx(0.0, abs=1e-12)
    assert passages[0].t == 0.0


def test_path_stays_below_escape_direction():
    # the n = 1 turning point at N = 1.5 lies on the asymptote and is never reached
    result = integrate_trajectory(HamiltonianSpec(N=1.5), 1.0)
    assert max(theta for _, _, theta in result.path) < escape_direction(1.5)
    assert turning_angle(1, 1.5) == pytest.approx(escape_direction(1.5))


@pytest.mark.parametrize("N, expected", [(1.2, 1), (1.5, 1), (1.8, 4), (1.9, 9)])
def test_turning_points_on_spiral(N, expected):
    assert turning_points_on_spiral(N) == expected


def test_trajectory_frame():
    result = integrate_trajectory(HamiltonianSpec(N=2.0), 1.0)
    frame = result.to_frame()
    assert list(frame.columns) == ["t", "re_x", "im_x", "theta"]
    assert len(frame) == result.summary()["steps"]
    assert frame["re_x"].iloc[0] == pytest.approx(1.0)


def test_step_limit_without_closure():
    result = integrate_trajectory(HamiltonianSpec(N=3.0), 1.0, t_max=0.5)
    assert result.outcome == "step-limit"
    assert result.period is None


def test_domain_errors(cubic):
    with pytest.raises(DomainError):
        classical_period(1.0, 1.5)
    with pytest.raises(DomainError):
        spiral_escape_angle(2.0)
    with pytest.raises(DomainError):
        integrate_trajectory(HamiltonianSpec(N=3.0, m2=1.0), 1.0)
    with pytest.raises(DomainError):
        integrate_trajectory(cubic, -1.0)
    with pytest.raises(DomainError):
        measure_period(HamiltonianSpec(N=1.5), 1.0)
    with pytest.raises(DomainError):
        measure_escape_angle(cubic, 1.0)
    with pytest.raises(DomainError):
        TrajectoryState(x=BranchedPoint(1.0, 0.0), t=0.0, branch_sign=0, v=0j)
    with pytest.raises(DomainError):
        TrajectoryResult(outcome="closed-orbit")


def test_energy_defect_is_fourth_order(cubic):
    period = classical_period(1.0, 3.0)
    coarse = integrate_trajectory(cubic, 1.0, dt=period / 100).energy_defect
    fine = integrate_trajectory(cubic, 1.0, dt=period / 200).energy_defect
    assert coarse / fine > 8.0
