import math

import numpy as np
import pytest
from scipy.special import airy

from PTSpectra.experiment.tables import EXACT_LEVELS, PUBLISHED_TOL
from PTSpectra.model.exceptions import BracketError, ContourConfigurationError, DomainError
from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.semiclassics.wkb import wkb_energy
from PTSpectra.solver.airy import AIRY_DEFECT, airy_asymptotic, airy_defect
from PTSpectra.solver.basis import matrix_spectrum
from PTSpectra.solver.models import ContourRay
from PTSpectra.solver.roots import bisect_predicate, local_minima, secant
from PTSpectra.solver.shooting import (
    check_domain,
    count_real_levels,
    decay_exponent_profile,
    default_rays,
    find_merge_N,
    find_real_eigenvalues,
    integrate_ray,
    mismatch,
    outer_radius,
    refine_complex,
    spectrum,
    wronskian,
)

FIVE_DEGREES = math.radians(5.0)


def energies(records):
    return [record.E.real for record in records]


def test_harmonic_levels():
    records = spectrum(HamiltonianSpec(N=2.0), 10)
    assert energies(records) == pytest.approx([2 * n + 1 for n in range(10)], abs=1e-6)
    assert all(record.classification == "real" for record in records)
    assert [record.n for record in records] == list(range(10))


@pytest.mark.parametrize("m2, shift, spacing", [(0.25, 1.5, 1.0), (1.0, 1.25, 2.0), (4.0, 2.0625, 4.0)])
def test_shifted_oscillator_at_n_one(m2, shift, spacing):
    # p^2 + m2 x^2 - ix is an oscillator centred at x = i/(2 m2)
    records = spectrum(HamiltonianSpec(N=1.0, m2=m2), 10)
    assert energies(records) == pytest.approx([shift + spacing * n for n in range(10)], abs=1e-6)
    assert all(record.E.imag == 0 for record in records)


@pytest.mark.parametrize("N", sorted(EXACT_LEVELS))
def test_reference_levels(N):
    references = EXACT_LEVELS[N]
    records = spectrum(HamiltonianSpec(N=N), len(references))
    assert energies(records) == pytest.approx(list(references), abs=PUBLISHED_TOL)


def test_count_real_levels(cubic):
    assert count_real_levels(cubic, 8.0) == 3


def test_mirror_matches_two_integrations(cubic):
    mirrored = mismatch(cubic, 2.0).normalized
    direct = mismatch(cubic, 2.0, use_mirror=False).normalized
    assert abs(mirrored - direct) < 1e-7


def test_left_solution_is_pt_image_of_right(cubic):
    match = mismatch(cubic, 2.7, use_mirror=False)
    scale = match.psi_left0 / match.psi_right0.conjugate()
    assert -match.dpsi_left0 / match.dpsi_right0.conjugate() == pytest.approx(scale, rel=1e-6)
    assert abs(scale) == pytest.approx(1.0, rel=1e-6)


def test_wronskian_vanishes_at_level(cubic):
    w = wronskian(cubic, default_rays(cubic, 5.0))
    ground = find_real_eigenvalues(cubic, 5.0)[0].E
    assert abs(w(ground)) < 1e-8
    assert abs(w(ground.real + 1.0)) > 1e-3


@pytest.mark.parametrize(
    "transform",
    [
        lambda left, right: (left.rotated(-FIVE_DEGREES), right.rotated(FIVE_DEGREES)),
        lambda left, right: (left.rotated(FIVE_DEGREES), right.rotated(FIVE_DEGREES)),
        lambda left, right: (left.scaled(2.0), right.scaled(2.0)),
    ],
    ids=["mirrored-rotation", "common-rotation", "doubled-radius"],
)
def test_levels_do_not_depend_on_contour(cubic, transform):
    reference = energies(find_real_eigenvalues(cubic, 5.0))
    left, right = default_rays(cubic, 5.0)
    moved = energies(find_real_eigenvalues(cubic, 5.0, rays=transform(left.scaled(1.2), right.scaled(1.2))))
    assert moved == pytest.approx(reference, abs=1e-7)


def test_fixed_step_integration_agrees(cubic):
    _, right = default_rays(cubic, 2.0)
    psi, dpsi = integrate_ray(cubic, 2.0, right)
    psi_rk4, dpsi_rk4 = integrate_ray(cubic, 2.0, right, fixed_steps=4000)
    assert dpsi_rk4 / psi_rk4 == pytest.approx(dpsi / psi, rel=1e-4)


def test_outer_radius_reaches_threshold(quartic):
    theta = default_rays(quartic, 3.0)[1].angle
    R = outer_radius(quartic, 3.0, theta)
    _, phi = decay_exponent_profile(quartic, 3.0, theta, R, 400)
    assert phi[-1] >= 24.0
    with pytest.raises(ContourConfigurationError):
        outer_radius(quartic, 3.0, theta, threshold=1e9)


def test_domain_errors(cubic):
    with pytest.raises(DomainError):
        check_domain(HamiltonianSpec(N=1.0))
    check_domain(HamiltonianSpec(N=1.0, m2=1.0))
    with pytest.raises(DomainError):
        check_domain(HamiltonianSpec(N=13.0))
    with pytest.raises(DomainError):
        find_real_eigenvalues(cubic, -1.0)
    with pytest.raises(DomainError):
        spectrum(cubic, 0)
    with pytest.raises(DomainError):
        integrate_ray(cubic, 1.0, ContourRay(angle=0.5 * math.pi, outer_radius=5.0))
    with pytest.raises(DomainError):
        find_merge_N(0.0, -1, 1.3, 1.6)


@pytest.mark.parametrize("E", [0.0, 1.0, 5.0])
def test_no_real_level_at_n_one(E):
    assert airy_defect(E) == pytest.approx(AIRY_DEFECT, abs=1e-5)


def test_airy_series_against_scipy():
    z = 20.0 + 5.0j
    ai, ai_prime, _, _ = airy(z)
    series, series_prime = airy_asymptotic(z)
    assert series == pytest.approx(ai, rel=1e-6)
    assert series_prime == pytest.approx(ai_prime, rel=1e-6)


def test_merge_bracket_without_switch():
    with pytest.raises(BracketError):
        find_merge_N(0.0, 1, 1.9, 2.1)


@pytest.mark.slow
def test_first_pair_merges_near_1_42():
    assert find_merge_N(0.0, 1, 1.3, 1.6, n_tol=1e-3) == pytest.approx(1.42207, abs=5e-3)


@pytest.mark.slow
def test_refine_complex_pair_from_matrix_seed():
    spec = HamiltonianSpec(N=1.5)
    seed = next(r for r in matrix_spectrum(spec, K=80, count=10) if r.E.imag > 0 and not r.is_real)
    root = refine_complex(spec, seed.E)
    assert root.classification == "complex-pair"
    assert abs(root.E - seed.E) < 1e-3 * abs(root.E)
    rays = default_rays(spec, abs(root.E))
    assert abs(wronskian(spec, rays)(root.E.conjugate())) < 1e-6


def test_secant_and_minima_helpers():
    result = secant(lambda z: z * z - 2.0, 1.0, 1.5)
    assert result.converged
    assert result.root.real == pytest.approx(math.sqrt(2.0))
    assert local_minima(np.array([3.0, 1.0, 2.0, 0.5, 4.0])) == [1, 3]
    assert local_minima(np.array([0.1, 1.0, 2.0])) == [0]
    assert bisect_predicate(lambda x: x > 0.3, 0.0, 1.0, 1e-8) == pytest.approx(0.3, abs=1e-8)
    with pytest.raises(BracketError):
        bisect_predicate(lambda x: True, 0.0, 1.0, 1e-3)


@pytest.mark.parametrize(
    "spec, E, vanishes",
    [
        (HamiltonianSpec(N=2.0), 1.0, True),
        (HamiltonianSpec(N=2.0), 3.0, True),
        (HamiltonianSpec(N=2.0), 2.0, False),
        (HamiltonianSpec(N=2.0), 1.0 + 0.5j, False),
        (HamiltonianSpec(N=1.0, m2=1.0), 1.25, True),
    ],
)
def test_mismatch_at_known_points(spec, E, vanishes):
    w = abs(mismatch(spec, E).normalized)
    assert (w < 1e-7) if vanishes else (w > 1e-3)


def test_refine_complex_falls_back_to_real_level():
    spec = HamiltonianSpec(N=2.0)
    root = refine_complex(spec, 1.1 + 0.1j)
    assert root.E == pytest.approx(1.0, abs=1e-8)
    assert root.classification == "real"


def test_spectrum_low_counts():
    assert energies(spectrum(HamiltonianSpec(N=4.0), 2)) == pytest.approx([1.4771, 6.0033], abs=1e-4)
    ground = spectrum(HamiltonianSpec(N=1.3), 1)
    assert len(ground) == 1 and ground[0].classification == "real"


def test_pair_is_real_at_harmonic_point():
    assert count_real_levels(HamiltonianSpec(N=2.0), 12.0) >= 3


@pytest.mark.slow
def test_higher_pair_merges_later():
    N_star = find_merge_N(0.0, 3, 1.5, 2.0, n_tol=1e-2)
    assert 1.42207 < N_star < 2.0


@pytest.mark.parametrize("N", [3.5, 4.0, 8.0, 12.0])
def test_ground_state_found_at_large_n(N):
    levels = energies(spectrum(HamiltonianSpec(N=N), 3))
    assert len(levels) == 3
    assert levels == sorted(levels)
    assert levels[0] < 0.5 * (wkb_energy(0, N) + wkb_energy(1, N))


def test_ground_state_rises_with_n():
    ground = energies(spectrum(HamiltonianSpec(N=3.5), 1))[0]
    assert EXACT_LEVELS[3.0][0] < ground < EXACT_LEVELS[4.0][0]


@pytest.mark.parametrize("N", sorted(EXACT_LEVELS))
def test_wkb_within_one_percent_above_ground_pair(N):
    levels = energies(spectrum(HamiltonianSpec(N=N), len(EXACT_LEVELS[N])))
    for n, level in enumerate(levels[2:], start=2):
        assert wkb_energy(n, N) == pytest.approx(level, rel=1e-2)


@pytest.mark.slow
def test_refine_complex_near_harmonic_point():
    spec = HamiltonianSpec(N=1.8)
    seed = next(r for r in matrix_spectrum(spec, K=96, count=20) if r.E.imag > 0 and not r.is_real)
    root = refine_complex(spec, seed.E)
    assert root.classification == "complex-pair"
    assert abs(root.E - seed.E) < max(1e-6, 10 * seed.estimate)
