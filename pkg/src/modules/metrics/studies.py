import logging
from pathlib import Path

import pandas as pd

from common.enums import ToolpathMode
from common.exceptions import InvalidParameterError
from modules.geometry.generators import gen_polygon
from modules.geometry.models import Design
from modules.mechanics.catalog import get_substrate
from modules.mechanics.models import TapeSpec, SubstrateSpec
from modules.planner.compiler import plan
from modules.planner.models import PlanParams
from modules.simulator.engine import batch_simulate
from modules.simulator.models import NoiseModel
from modules.metrics.stats import QualityReport, batch_stats

__all__ = ["STUDY_LEVELS", "run_study", "study_frame", "write_study_csv"]
logger = logging.getLogger(__name__)

STUDY_LEVELS = {
    "length": (0.05, 0.10, 0.15, 0.20),
    "speed": (0.010, 0.025, 0.050, 0.075, 0.100),
    "compaction": (2.0, 4.0, 6.0, 8.0),
    "substrate": ("metal", "acrylic", "wood"),
}
STUDY_LENGTH = 0.15


def _line(length: float) -> Design:
    return Design(features=(gen_polygon([(0.0, 0.0), (length, 0.0)], closed=False),), name="line")


def _study_case(study: str, level) -> tuple[float, PlanParams, str | None]:
    """(line length, plan params, substrate name override) of one study level"""
    match study:
        case "length":
            return level, PlanParams(), None
        case "speed":
            return STUDY_LENGTH, PlanParams(speed=level), None
        case "compaction":
            params = PlanParams(mode=ToolpathMode.COMPACTION, compaction_force=level)
            return STUDY_LENGTH, params, None
        case "substrate":
            return STUDY_LENGTH, PlanParams(), level
        case _:
            raise InvalidParameterError(f"Unknown study '{study}'. Known: {sorted(STUDY_LEVELS)}")


def run_study(
    study: str,
    tape: TapeSpec,
    substrate: SubstrateSpec,
    noise: NoiseModel,
    n: int = 9,
    levels: tuple | None = None,
) -> dict:
    """Batch statistics of a straight test line at every level of one study parameter"""
    if study not in STUDY_LEVELS:
        raise InvalidParameterError(f"Unknown study '{study}'. Known: {sorted(STUDY_LEVELS)}")

    reports: dict = {}
    for level in levels or STUDY_LEVELS[study]:
        length, params, substrate_name = _study_case(study, level)
        level_substrate = get_substrate(substrate_name) if substrate_name else substrate
        program = plan(_line(length), tape, level_substrate, params)
        outcomes = batch_simulate(program, tape, level_substrate, noise, n)
        reports[level] = batch_stats(outcomes)
        logger.info("Study %s, level %s: %i outcome(s)", study, level, n)
    return reports


def study_frame(study: str, reports: dict[object, QualityReport]) -> pd.DataFrame:
    """Table of metric mean/std per study level (one row per level)"""
    rows = []
    for level, report in reports.items():
        row = {"study": study, "level": level, "n": report.n}
        for name, stats in report.metrics.items():
            row[f"{name}_mean"] = stats.mean
            row[f"{name}_std"] = stats.std
        rows.append(row)
    return pd.DataFrame(rows).set_index(["study", "level"])


def write_study_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    frame.to_csv(path, float_format="%.9g")
    logger.info("Study table written to %s", path)
    return path
