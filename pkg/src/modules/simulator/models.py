import dataclasses

import numpy as np

from core import settings
from common.exceptions import InvalidParameterError
from common.typing import Points

__all__ = ["NoiseModel", "FeaturePlacement", "PlacementOutcome"]


@dataclasses.dataclass(frozen=True)
class NoiseModel:
    """
    Placement error sources. Sigmas in meters (lateral walk in m per sqrt(m) of tape),
    speed gains per m/s of print speed.
    """

    cut_irregularity_sigma: float = 0.0
    repeatability_sigma: float = 0.0
    lateral_walk_sigma: float = 0.0
    accel_overshoot_gain: float = 0.0
    width_spread_gain: float = 0.0
    spur_width_fraction: tuple[float, float] = (0.25, 0.30)
    seed: int = 0
    name: str = "custom"
    calibration_version: str | None = None

    def __post_init__(self):
        for field in (
            "cut_irregularity_sigma",
            "repeatability_sigma",
            "lateral_walk_sigma",
            "accel_overshoot_gain",
            "width_spread_gain",
        ):
            if getattr(self, field) < 0:
                raise InvalidParameterError(f"NoiseModel.{field} must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise InvalidParameterError(f"Seed must be a 64-bit unsigned integer, got {self.seed}")

        low, high = self.spur_width_fraction
        if not 0 < low <= high < 0.5:
            raise InvalidParameterError("Spur width fraction must lie in (0, 0.5)")
        object.__setattr__(self, "spur_width_fraction", (float(low), float(high)))

    @property
    def is_zero(self) -> bool:
        return not any(
            (
                self.cut_irregularity_sigma,
                self.repeatability_sigma,
                self.lateral_walk_sigma,
                self.accel_overshoot_gain,
                self.width_spread_gain,
            )
        )

    def with_seed(self, seed: int) -> "NoiseModel":
        return dataclasses.replace(self, seed=seed)


@dataclasses.dataclass(frozen=True, eq=False)
class FeaturePlacement:
    """As-placed tape of one printed feature (per-sample profiles share the centerline index)"""

    feature: int
    centerline: Points
    lateral_deviation: np.ndarray
    width_profile: np.ndarray
    end_cut_offsets: tuple[float, float]
    nominal_width: float
    planned_length: float
    straight: bool = False
    closed: bool = False
    speed: float = settings.DEFAULT_SPEED
    kind: str = "segment-chain"
    layer: int = 0

    def __post_init__(self):
        centerline = np.asarray(self.centerline, dtype=float)
        lateral = np.asarray(self.lateral_deviation, dtype=float)
        width = np.asarray(self.width_profile, dtype=float)
        if centerline.ndim != 2 or centerline.shape[1] != 3:
            raise InvalidParameterError("Centerline must be an (N, 3) array")
        if not len(centerline) == len(lateral) == len(width):
            raise InvalidParameterError("Centerline, lateral and width sample counts differ")
        if np.any(width <= 0):
            raise InvalidParameterError("Tape width must be positive everywhere")

        object.__setattr__(self, "centerline", centerline)
        object.__setattr__(self, "lateral_deviation", lateral)
        object.__setattr__(self, "width_profile", width)
        object.__setattr__(self, "end_cut_offsets", tuple(map(float, self.end_cut_offsets)))


@dataclasses.dataclass(frozen=True, eq=False)
class PlacementOutcome:
    program_id: str
    seed: int
    placements: tuple[FeaturePlacement, ...]
    tape_ref: str
    substrate_ref: str
    noise_profile: str = "custom"
    calibration_version: str | None = None
    feasibility_flags: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(self.placements))
        object.__setattr__(self, "feasibility_flags", tuple(self.feasibility_flags))

    def placement(self, feature: int = 0) -> FeaturePlacement:
        return self.placements[feature]
