from PTSpectra.utils.constants import config_section

SHOOTING_CONFIG = config_section("shooting", {
    "exponent_threshold": 25.0,
    "rel_tol": 1e-10,
    "abs_tol": 1e-12,
    "method": "DOP853",
    "min_radius": 4.0,
    "max_radius": 400.0,
    "radius_samples": 400,
    "n_min": 1.0,
    "n_max": 12.0,
})

SCAN_CONFIG = config_section("scan", {
    "tol_real": 1e-8,
    "spacing_fraction": 0.25,
    "secant_tol": 1e-9,
    "secant_max_iter": 60,
    "seed_offset": 1e-3,
    "accept_fraction": 1e-6,
    "noise_floor": 1e-7,
    "duplicate_tol": 1e-7,
    "merge_n_tol": 1e-4,
})

BASIS_CONFIG = config_section("basis", {
    "residual_tol": 1e-10,
    "quadrature_headroom": 8,
    "converged_tol": 1e-3,
    "resolved_fraction": 0.75,
    "tail_tol": 1e-2,
    "tol_real": 1e-8,
    "n_lo": 1.0,
    "n_hi": 4.0,
    "seed_basis": 60,
    "default_basis": 80,
})
