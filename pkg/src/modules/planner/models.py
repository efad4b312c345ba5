import dataclasses
import math

import numpy as np

from core import settings
from common.enums import StepEvent, StepKind, ToolpathMode, AnchorFailure
from common.exceptions import InvalidParameterError
from modules.geometry.models import ToolPose

__all__ = [
    "PlanParams",
    "RobotLimits",
    "MotionStep",
    "OverhangInfo",
    "FeatureMeta",
    "MotionProgram",
    "Violation",
    "FeasibilityReport",
]


@dataclasses.dataclass(frozen=True)
class PlanParams:
    speed: float = settings.DEFAULT_SPEED
    mode: ToolpathMode = ToolpathMode.CARTESIAN
    compaction_force: float = settings.DEFAULT_COMPACTION_FORCE
    min_radius: float = settings.MIN_RADIUS
    anchor_length: float = settings.ANCHOR_LENGTH
    lead_in: float = settings.LEAD_IN

    def __post_init__(self):
        object.__setattr__(self, "mode", ToolpathMode(self.mode))
        if not settings.SPEED_MIN <= self.speed <= settings.SPEED_MAX:
            raise InvalidParameterError(
                f"speed {self.speed} m/s is outside [{settings.SPEED_MIN}, {settings.SPEED_MAX}]"
            )
        if self.compaction_force < 0:
            raise InvalidParameterError(f"compaction_force must be >= 0: {self.compaction_force}")
        if self.min_radius <= 0:
            raise InvalidParameterError(f"min_radius must be positive: {self.min_radius}")
        if self.anchor_length < 0:
            raise InvalidParameterError(f"anchor_length must be >= 0: {self.anchor_length}")
        if self.lead_in < 0:
            raise InvalidParameterError(f"lead_in must be >= 0: {self.lead_in}")

    @property
    def compaction_setpoint(self) -> float:
        return self.compaction_force if self.mode == ToolpathMode.COMPACTION else 0.0


@dataclasses.dataclass(frozen=True)
class RobotLimits:
    wrist_rotation_range: float = settings.WRIST_ROTATION_RANGE
    workspace_min: tuple[float, float, float] = settings.WORKSPACE_MIN
    workspace_max: tuple[float, float, float] = settings.WORKSPACE_MAX

    def __post_init__(self):
        if self.wrist_rotation_range <= 0:
            raise InvalidParameterError("wrist_rotation_range must be positive")
        if any(low >= high for low, high in zip(self.workspace_min, self.workspace_max)):
            raise InvalidParameterError("Workspace box must have min < max on every axis")

    def contains(self, positions: np.ndarray) -> np.ndarray:
        low = np.asarray(self.workspace_min) - 1e-12
        high = np.asarray(self.workspace_max) + 1e-12
        return np.all((positions >= low) & (positions <= high), axis=-1)


@dataclasses.dataclass(frozen=True)
class MotionStep:
    """
    Waypoint reached at time `t`, moving toward it at `speed`.
    Events fire on arrival; `feature` is -1 for travel between features.
    """

    t: float
    pose: ToolPose
    speed: float
    compaction_setpoint: float = 0.0
    event: StepEvent = StepEvent.NONE
    kind: StepKind = StepKind.TRAVEL
    feature: int = -1

    @property
    def position(self) -> np.ndarray:
        return self.pose.position


@dataclasses.dataclass(frozen=True)
class OverhangInfo:
    alpha: float
    height: float
    span_length: float
    anchor_length: float
    landing_length: float
    # arc positions (along the laid tape) where anchor and span end
    anchor_end: float
    span_end: float
    end_substrate: str | None = None


@dataclasses.dataclass(frozen=True)
class FeatureMeta:
    """Printed feature of a program: one feed, one cut"""

    index: int
    design_index: int
    kind: str
    planned_length: float
    tape: str
    width: float
    speed: float
    mode: ToolpathMode = ToolpathMode.CARTESIAN
    compaction_setpoint: float = 0.0
    straight: bool = False
    closed: bool = False
    layer: int = 0
    overhang: OverhangInfo | None = None


@dataclasses.dataclass(frozen=True, eq=False)
class MotionProgram:
    steps: tuple[MotionStep, ...]
    features: tuple[FeatureMeta, ...]
    tape_ref: str
    substrate_ref: str
    mode: ToolpathMode = ToolpathMode.CARTESIAN
    design_name: str = "design"

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "features", tuple(self.features))
        times = np.array([step.t for step in self.steps])
        if len(times) > 1 and np.any(np.diff(times) <= 0):
            index = int(np.argmin(np.diff(times)))
            raise InvalidParameterError(f"Step times must strictly increase (step {index + 1})")

    @property
    def duration(self) -> float:
        return self.steps[-1].t - self.steps[0].t if self.steps else 0.0

    def feature_steps(
        self, feature: int, kind: StepKind | None = StepKind.LAYING
    ) -> list[MotionStep]:
        return [
            step
            for step in self.steps
            if step.feature == feature and (kind is None or step.kind == kind)
        ]

    def laying_frames(self, feature: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(positions, approaches, headings) of the laying steps of one feature"""
        steps = self.feature_steps(feature)
        positions = np.array([step.pose.position for step in steps])
        approaches = np.array([step.pose.approach for step in steps])
        headings = np.array([step.pose.heading for step in steps])
        return positions, approaches, headings

    def laying_time(self, feature: int) -> float:
        steps = self.feature_steps(feature)
        return steps[-1].t - steps[0].t

    def events(self, event: StepEvent) -> list[MotionStep]:
        return [step for step in self.steps if step.event == event]


@dataclasses.dataclass(frozen=True)
class Violation:
    """Constraint violation over an arc-position range of a path (start == end for points)"""

    arc_start: float
    arc_end: float
    value: float
    limit: float
    feature: int | None = None

    def as_dict(self) -> dict:
        value = self.value if math.isfinite(self.value) else "inf"
        return {
            "feature": self.feature,
            "arc_start": round(self.arc_start, 9),
            "arc_end": round(self.arc_end, 9),
            "value": value,
            "limit": self.limit,
        }


@dataclasses.dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    shear_margin: float
    peel_margin: float
    F_t: float
    F_adhesion: float
    alpha: float
    anchor_length: float
    required_anchor_length: float
    substrate: str
    end_substrate: str | None = None
    failure: AnchorFailure | None = None

    def as_dict(self) -> dict:
        return dataclasses.asdict(self) | {
            "failure": str(self.failure) if self.failure else None
        }
