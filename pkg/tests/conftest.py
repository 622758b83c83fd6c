import pytest

from PTSpectra.model.models import HamiltonianSpec
from PTSpectra.utils.helper import configure_logging


@pytest.fixture(autouse=True)
def quiet_logging():
    configure_logging("WARNING")
    yield


@pytest.fixture
def cubic() -> HamiltonianSpec:
    return HamiltonianSpec(N=3.0)


@pytest.fixture
def quartic() -> HamiltonianSpec:
    return HamiltonianSpec(N=4.0)


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    """Route default task folders into a temporary directory."""
    from PTSpectra.utils import helper, task_manager

    monkeypatch.setattr(helper, "OUTPUT_DIR", tmp_path)
    monkeypatch.setattr(task_manager, "OUTPUT_DIR", tmp_path)
    return tmp_path
