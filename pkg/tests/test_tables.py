import math
import time

import pytest

from PTSpectra.experiment.tables import (
    EXACT_LEVELS,
    NEAR_ONE_GROUND,
    PUBLISHED_TOL,
    format_table,
    level_table,
    near_one_table,
)
from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.solver.shooting import spectrum


def test_level_table_reproduces_exact_column_quickly():
    start = time.perf_counter()
    frame = level_table(exact=True)
    assert time.perf_counter() - start < 30.0
    exact = frame[frame["column"] == "exact"]
    assert len(exact) == sum(len(levels) for levels in EXACT_LEVELS.values())
    assert exact["deviation"].max() <= PUBLISHED_TOL


def test_level_table_wkb_columns():
    frame = level_table(exact=False)
    wkb = frame[frame["column"] == "wkb"]
    assert wkb["deviation"].max() <= PUBLISHED_TOL
    hermitian = frame[frame["column"] == "hermitian_wkb"]
    assert hermitian["reference"].isna().all()
    assert (hermitian["computed"] > 0).all()


@pytest.mark.parametrize("eps", [1e-1, 1e-2, 1e-3])
def test_near_one_exact_ground_state(eps):
    ground = spectrum(HamiltonianSpec(N=1.0 + eps), 1)[0]
    assert ground.E.real == pytest.approx(NEAR_ONE_GROUND[eps][0], abs=1e-3)


def test_near_one_table_skips_shooting_below_threshold():
    frame = near_one_table(exact=False)
    assert set(frame["column"]) == {"asymptotic"}
    assert len(frame) == len(NEAR_ONE_GROUND)
    text = format_table(frame, "near one")
    assert text.startswith("near one\n")
    assert not math.isnan(frame["deviation"].iloc[0])
