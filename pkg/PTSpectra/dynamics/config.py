from PTSpectra.utils.constants import config_section

CLASSICAL_CONFIG = config_section("classical", {
    "steps_per_period": 2000,
    "dt_scale": 1e-3,
    "escape_factor": 1e3,
    "close_fraction": 0.05,
    "period_margin": 1.5,
    "escape_time_scale": 1e3,
    "max_steps": 2_000_000,
    "passage_fraction": 0.5,
})
