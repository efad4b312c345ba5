import dataclasses
import math

import numpy as np

from core import settings
from common.exceptions import InvalidParameterError

__all__ = [
    "SensorGrid",
    "TouchEvent",
    "HandRegion",
    "HandLayout",
    "HandCommand",
    "CircuitReport",
    "default_saturation_force",
]


def default_saturation_force() -> float:
    """Force scale that puts the response at SENSOR_SATURATION_LEVEL of full scale at 4.9 N"""
    return settings.SENSOR_SATURATION_FORCE / -math.log(1.0 - settings.SENSOR_SATURATION_LEVEL)


@dataclasses.dataclass(frozen=True)
class SensorGrid:
    """
    Printed capacitive array: copper rows and columns crossing over a dielectric layer.
    Capacitances in farads; absolute values are free parameters.
    """

    rows: int = 6
    cols: int = 6
    pitch: float = 0.015
    C0: float = 10e-12
    dC_max: float = 2e-12
    F_sat: float = dataclasses.field(default_factory=default_saturation_force)
    crosstalk: float = 0.0

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InvalidParameterError(f"Grid needs rows, cols >= 1: {self.rows}x{self.cols}")
        if min(self.C0, self.dC_max, self.F_sat, self.pitch) <= 0:
            raise InvalidParameterError("C0, dC_max, F_sat and pitch must be positive")
        if not 0 <= self.crosstalk < 1:
            raise InvalidParameterError(f"Crosstalk must be in [0, 1): {self.crosstalk}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols


@dataclasses.dataclass(frozen=True, eq=False)
class TouchEvent:
    row: int
    col: int
    force: float
    dC_map: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dC_map", np.asarray(self.dC_map, dtype=float))
        rows, cols = self.dC_map.shape
        if not (0 <= self.row < rows and 0 <= self.col < cols):
            raise InvalidParameterError(f"Touch node ({self.row}, {self.col}) is off the grid")
        if self.force < 0:
            raise InvalidParameterError(f"Touch force must be >= 0: {self.force}")

    @property
    def dC(self) -> float:
        return float(self.dC_map[self.row, self.col])


@dataclasses.dataclass(frozen=True)
class HandRegion:
    """Inclusive row/column ranges of the grid that drive one finger"""

    finger: int
    rows: tuple[int, int]
    cols: tuple[int, int]

    def contains(self, row: int, col: int) -> bool:
        return self.rows[0] <= row <= self.rows[1] and self.cols[0] <= col <= self.cols[1]


@dataclasses.dataclass(frozen=True)
class HandLayout:
    regions: tuple[HandRegion, ...]
    grid: SensorGrid = dataclasses.field(default_factory=SensorGrid)

    def __post_init__(self):
        object.__setattr__(self, "regions", tuple(self.regions))
        for number, region in enumerate(self.regions):
            for other in self.regions[number + 1 :]:
                rows_overlap = region.rows[0] <= other.rows[1] and other.rows[0] <= region.rows[1]
                cols_overlap = region.cols[0] <= other.cols[1] and other.cols[0] <= region.cols[1]
                if rows_overlap and cols_overlap:
                    raise InvalidParameterError(
                        f"Regions of fingers {region.finger} and {other.finger} overlap"
                    )

    def finger_at(self, row: int, col: int) -> int | None:
        for region in self.regions:
            if region.contains(row, col):
                return region.finger
        return None


@dataclasses.dataclass(frozen=True)
class HandCommand:
    finger: int
    bend: float


@dataclasses.dataclass(frozen=True)
class CircuitReport:
    trace_length: float
    trace_resistance: float
    voltage_drop: float
    drop_budget: float
    passed: bool

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)
