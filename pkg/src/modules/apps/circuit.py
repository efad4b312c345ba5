import logging
import math

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from core import settings
from common.exceptions import InvalidParameterError, InvalidInputError
from modules.geometry.conformal import project_conformal
from modules.geometry.generators import gen_polygon
from modules.geometry.layers import expand_layers
from modules.geometry.models import (
    Design,
    PathFeature,
    ConformalPatch,
    LayerStack,
    OverhangFeature,
    FeatureOverrides,
)
from modules.geometry.paths import arc_length
from modules.mechanics.catalog import get_tape
from modules.mechanics.forces import trace_resistance
from modules.mechanics.models import TapeSpec
from modules.planner.models import PlanParams
from modules.planner.units import overhang_unit
from modules.apps.models import SensorGrid, CircuitReport

__all__ = ["trace_pieces", "circuit_check", "build_sensor_design"]
logger = logging.getLogger(__name__)


def trace_pieces(design: Design, tape: TapeSpec) -> list[np.ndarray]:
    """World-space polylines of every piece of tape the design lays down"""
    pieces = []
    for feature in design.features:
        match feature:
            case PathFeature():
                pieces.append(feature.samples)
            case ConformalPatch():
                pieces.append(project_conformal(feature).path.samples)
            case LayerStack():
                pieces.extend(placement.path.samples for placement in expand_layers(feature))
            case OverhangFeature():
                pieces.append(overhang_unit(feature, 0, PlanParams(), tape).samples)
            case _:
                raise InvalidParameterError(f"Unsupported design feature: {type(feature).__name__}")
    return pieces


def _components(pieces: list[np.ndarray], reach: float) -> int:
    """Pieces touch when an end of one lies within `reach` of any sample of the other"""
    count = len(pieces)
    rows, cols = [], []
    for first in range(count):
        ends = pieces[first][[0, -1]]
        for second in range(count):
            if first == second:
                continue
            distances = np.linalg.norm(pieces[second][None, :, :] - ends[:, None, :], axis=2)
            if distances.min() <= reach:
                rows.append(first)
                cols.append(second)

    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(count, count))
    return connected_components(graph, directed=False)[0]


def circuit_check(
    design: Design,
    tape: TapeSpec,
    supply: float,
    load: float,
    drop_budget: float = settings.CIRCUIT_DROP_BUDGET,
) -> CircuitReport:
    """
    Resistive divider of the printed trace and the load: the trace passes when it drops
    at most `drop_budget` of the supply voltage. `load` may be math.inf (open circuit).
    """
    if supply <= 0 or load <= 0:
        raise InvalidParameterError(f"Supply and load must be positive: {supply} V, {load} Ohm")

    pieces = trace_pieces(design, tape)
    components = _components(pieces, tape.width)
    if components > 1:
        raise InvalidInputError(
            details={"reason": "trace is not connected", "components": int(components)}
        )

    length = sum(arc_length(piece) for piece in pieces)
    resistance = trace_resistance(length, tape)
    drop = 0.0 if math.isinf(load) else supply * resistance / (resistance + load)
    report = CircuitReport(
        trace_length=length,
        trace_resistance=resistance,
        voltage_drop=drop,
        drop_budget=drop_budget * supply,
        passed=drop <= drop_budget * supply,
    )
    logger.info(
        "Circuit '%s': %.4g m of %s, R=%.4g Ohm, drop %.4g V (%s)",
        design.name,
        length,
        tape.name,
        resistance,
        drop,
        "pass" if report.passed else "fail",
    )
    return report


def build_sensor_design(
    grid: SensorGrid | None = None,
    conductor: str = "copper-6.35",
    dielectric: str = "vinyl-6.35",
) -> Design:
    """
    Three-layer capacitive array: conductor strips along y, dielectric strips across them,
    then conductor strips along x on top of the dielectric.
    """
    grid = grid or SensorGrid()
    bottom, spacer = get_tape(conductor), get_tape(dielectric)
    length_x = grid.cols * grid.pitch
    length_y = grid.rows * grid.pitch
    columns = [(col + 0.5) * grid.pitch for col in range(grid.cols)]
    rows = [(row + 0.5) * grid.pitch for row in range(grid.rows)]

    features, overrides = [], []
    for x in columns:
        features.append(gen_polygon([(x, 0.0, 0.0), (x, length_y, 0.0)], closed=False))
        overrides.append(FeatureOverrides(tape=bottom.name))
    stacked = ((bottom.thickness, spacer.name), (bottom.thickness + spacer.thickness, bottom.name))
    for z, tape_name in stacked:
        for y in rows:
            features.append(gen_polygon([(0.0, y, z), (length_x, y, z)], closed=False))
            overrides.append(FeatureOverrides(tape=tape_name))

    return Design(features=tuple(features), overrides=tuple(overrides), name="sensor-array")
