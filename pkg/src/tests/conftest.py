import logging
from pathlib import Path

import pytest

from core import settings
from common.utils import write_json
from modules.geometry.models import Design
from modules.mechanics.catalog import get_tape, get_substrate
from modules.mechanics.models import TapeSpec, SubstrateSpec
from modules.planner import PlanParams, MotionProgram, plan
from modules.simulator import NoiseModel, load_noise
from tests.helpers import line_design


@pytest.fixture(autouse=True, scope="session")
def test_settings():
    settings.SENTRY_DSN = None
    settings.SIMULATION_WORKERS = 1


@pytest.fixture(autouse=True)
def cap_log(caplog):
    # trying to print out logs for failed tests
    caplog.set_level(logging.INFO)
    for name in ("modules", "common", "cli"):
        # cli.main() applies settings.LOGGING, which stops propagation to caplog's handler
        logging.getLogger(name).propagate = True
    logging.getLogger("modules").setLevel(logging.INFO)


@pytest.fixture
def tape() -> TapeSpec:
    return get_tape("copper-6.35")


@pytest.fixture
def substrate() -> SubstrateSpec:
    return get_substrate("acrylic")


@pytest.fixture
def zero_noise() -> NoiseModel:
    return load_noise("zero")


@pytest.fixture
def default_noise() -> NoiseModel:
    return load_noise("default")


@pytest.fixture
def line() -> Design:
    return line_design(0.15)


@pytest.fixture
def line_program(line: Design, tape: TapeSpec, substrate: SubstrateSpec) -> MotionProgram:
    return plan(line, tape, substrate, PlanParams(speed=0.025))


@pytest.fixture
def design_file(tmp_path: Path) -> Path:
    path = tmp_path / "design.json"
    write_json(
        path,
        {
            "schema_version": "1",
            "name": "line",
            "features": [{"kind": "polyline", "vertices": [[0.0, 0.0], [0.15, 0.0]]}],
        },
    )
    return path
