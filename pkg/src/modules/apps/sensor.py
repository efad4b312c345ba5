import logging
from pathlib import Path
from typing import Sequence

import numpy as np
from marshmallow import fields

from common.exceptions import InvalidParameterError, InvalidInputError
from common.schemas import FloatArray, VersionedSchema
from common.utils import read_json, load_with
from modules.apps.models import SensorGrid, TouchEvent

__all__ = [
    "sensor_response",
    "force_from_response",
    "synthesize_touch",
    "decode_touch",
    "decode_replay",
    "load_replay",
]
logger = logging.getLogger(__name__)
# response ratio cap for the inverse (forces above it are indistinguishable from saturation)
MAX_RESPONSE_RATIO = 1.0 - 1e-9


def sensor_response(force: float, grid: SensorGrid) -> float:
    """Capacitance change of one node: dC_max * (1 - exp(-force / F_sat))"""
    if force < 0:
        raise InvalidParameterError(f"Force must be >= 0, got {force}")
    return grid.dC_max * -np.expm1(-force / grid.F_sat)


def force_from_response(dC: float, grid: SensorGrid) -> float:
    ratio = min(max(dC / grid.dC_max, 0.0), MAX_RESPONSE_RATIO)
    return float(-grid.F_sat * np.log1p(-ratio))


def synthesize_touch(
    row: int, col: int, force: float, grid: SensorGrid, crosstalk: float | None = None
) -> np.ndarray:
    """dC map of a single touch; neighbours in the same row/column leak `crosstalk` of it"""
    if not (0 <= row < grid.rows and 0 <= col < grid.cols):
        raise InvalidParameterError(f"Touch node ({row}, {col}) is off the {grid.shape} grid")

    crosstalk = grid.crosstalk if crosstalk is None else crosstalk
    dC_map = np.zeros(grid.shape)
    peak = sensor_response(force, grid)
    if crosstalk:
        for d_row, d_col in ((-1, 0), (1, 0), (0, -1), (0, 1)):
            neighbour = row + d_row, col + d_col
            if 0 <= neighbour[0] < grid.rows and 0 <= neighbour[1] < grid.cols:
                dC_map[neighbour] = crosstalk * peak

    dC_map[row, col] = peak
    return dC_map


def decode_touch(dC_map: np.ndarray, grid: SensorGrid) -> TouchEvent | None:
    """
    Strongest node of the map and the force that produced it; ties go to the lowest
    (row, col). Returns None when nothing is touched.
    """
    dC_map = np.asarray(dC_map, dtype=float)
    if dC_map.shape != grid.shape:
        raise InvalidInputError(f"dC map shape {dC_map.shape} does not match grid {grid.shape}")

    index = int(np.argmax(dC_map))
    row, col = divmod(index, grid.cols)
    if dC_map[row, col] <= 0:
        return None

    force = force_from_response(dC_map[row, col], grid)
    return TouchEvent(row=row, col=col, force=force, dC_map=dC_map)


def decode_replay(maps: Sequence[np.ndarray], grid: SensorGrid) -> list[TouchEvent | None]:
    """Decodes a recorded sequence of dC maps frame by frame"""
    events = [decode_touch(dC_map, grid) for dC_map in maps]
    touches = sum(event is not None for event in events)
    logger.debug("Replayed %i frame(s): %i touch(es)", len(events), touches)
    return events


class TouchReplaySchema(VersionedSchema):
    frames = fields.List(FloatArray(), required=True)


def load_replay(path: str | Path) -> list[np.ndarray]:
    """dC map frames of a touch replay file"""
    return load_with(TouchReplaySchema(), read_json(path))["frames"]
