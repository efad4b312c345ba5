import dataclasses
from typing import NamedTuple

import numpy as np

from core import settings
from common.enums import FeatureKind, SurfaceKind, ToolpathMode
from common.exceptions import InvalidParameterError
from common.typing import Points, Vectors
from modules.geometry.paths import is_collinear

__all__ = [
    "Point3",
    "ToolPose",
    "PathFeature",
    "PlaneSurface",
    "HemisphereSurface",
    "ConformalPatch",
    "ConformalProjection",
    "LayerStack",
    "LayerPlacement",
    "OverhangFeature",
    "FeatureOverrides",
    "Design",
    "DesignFeature",
]


class Point3(NamedTuple):
    x: float
    y: float
    z: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


def _frozen_array(value, shape_tail: tuple[int, ...] = (3,)) -> np.ndarray:
    array = np.array(value, dtype=float)
    if array.ndim != len(shape_tail) + 1 or array.shape[1:] != shape_tail:
        raise InvalidParameterError(f"Expected array of shape (N, {shape_tail}), got {array.shape}")
    if not np.all(np.isfinite(array)):
        raise InvalidParameterError("All coordinates must be finite")

    array.setflags(write=False)
    return array


def _unit(vector: np.ndarray) -> np.ndarray:
    return vector / np.linalg.norm(vector)


@dataclasses.dataclass(frozen=True, eq=False)
class ToolPose:
    """Tool position with approach (tool z-axis, into substrate) and tape heading"""

    position: np.ndarray
    approach: np.ndarray
    heading: np.ndarray

    def __post_init__(self):
        for name in ("position", "approach", "heading"):
            value = np.asarray(getattr(self, name), dtype=float)
            if value.shape != (3,) or not np.all(np.isfinite(value)):
                raise InvalidParameterError(f"ToolPose.{name} must be a finite 3-vector")
            object.__setattr__(self, name, value)

        tolerance = settings.GEOMETRY_TOLERANCE
        if abs(np.linalg.norm(self.approach) - 1.0) > tolerance:
            raise InvalidParameterError("ToolPose.approach must be a unit vector")
        if abs(np.linalg.norm(self.heading) - 1.0) > tolerance:
            raise InvalidParameterError("ToolPose.heading must be a unit vector")
        if abs(float(np.dot(self.approach, self.heading))) > tolerance:
            raise InvalidParameterError("ToolPose.heading must be orthogonal to approach")


@dataclasses.dataclass(frozen=True, eq=False)
class PathFeature:
    """
    Dense polyline of a printable path.

    `corners` holds sample indices of sharp polygon vertices (reported as infinite
    curvature); `segmented` paths are printed edge by edge with a cut at every corner,
    `fillet` paths get their corners rounded by the planner.
    """

    kind: FeatureKind
    samples: Points
    closed: bool = False
    sample_step: float = settings.SAMPLE_STEP
    corners: tuple[int, ...] = ()
    segmented: bool = False
    fillet: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", FeatureKind(self.kind))
        object.__setattr__(self, "samples", _frozen_array(self.samples))
        object.__setattr__(self, "corners", tuple(int(index) for index in self.corners))
        if self.sample_step <= 0:
            raise InvalidParameterError(f"sample_step must be positive: {self.sample_step}")
        if len(self.samples) < 2:
            raise InvalidParameterError("Path needs at least 2 samples")

        lengths = self.segment_lengths
        if np.any(lengths <= settings.GEOMETRY_TOLERANCE * 1e-3):
            index = int(np.argmin(lengths))
            raise InvalidParameterError(f"Consecutive samples must be distinct (index {index})")
        if np.any(lengths > self.sample_step * (1 + 1e-9)):
            raise InvalidParameterError(
                f"Sample spacing {lengths.max():.6g} m exceeds sample_step {self.sample_step} m"
            )
        if self.closed:
            gap = np.linalg.norm(self.samples[0] - self.samples[-1])
            if gap > settings.GEOMETRY_TOLERANCE:
                raise InvalidParameterError(f"Closed path must end where it starts (gap {gap})")
        if any(not 0 <= index < len(self.samples) for index in self.corners):
            raise InvalidParameterError(f"Corner index out of range: {self.corners}")

    @property
    def segment_lengths(self) -> np.ndarray:
        return np.linalg.norm(np.diff(self.samples, axis=0), axis=1)

    @property
    def arc_positions(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.segment_lengths)])

    @property
    def length(self) -> float:
        return float(self.segment_lengths.sum())

    @property
    def start(self) -> np.ndarray:
        return self.samples[0]

    @property
    def end(self) -> np.ndarray:
        return self.samples[-1]

    @property
    def points(self) -> list[Point3]:
        return [Point3(*map(float, sample)) for sample in self.samples]

    @property
    def vertex_indices(self) -> list[int]:
        """Corner indices plus open-path endpoints, in path order"""
        if self.closed:
            return sorted(set(self.corners) | {0})
        return sorted({0, len(self.samples) - 1} | set(self.corners))

    @property
    def is_straight(self) -> bool:
        if self.closed or self.corners:
            return False

        return is_collinear(self.samples)

    def transformed(self, rotation: np.ndarray, translation: np.ndarray) -> "PathFeature":
        """Applies rigid transform (3x3 rotation matrix, then translation)"""
        samples = self.samples @ np.asarray(rotation).T + np.asarray(translation)
        return dataclasses.replace(self, samples=samples)


@dataclasses.dataclass(frozen=True, eq=False)
class PlaneSurface:
    """Plane {p: normal . p = offset}; normal points out of the substrate toward the tool"""

    normal: np.ndarray
    offset: float = 0.0
    kind = SurfaceKind.PLANE

    def __post_init__(self):
        normal = np.asarray(self.normal, dtype=float)
        if normal.shape != (3,) or np.linalg.norm(normal) <= 0:
            raise InvalidParameterError("Plane normal must be a non-zero 3-vector")
        object.__setattr__(self, "normal", _unit(normal))

    @property
    def basis(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(origin, e1, e2): parameter (u, v) maps to origin + u*e1 + v*e2"""
        z_axis = np.array([0.0, 0.0, 1.0])
        if abs(abs(float(np.dot(self.normal, z_axis))) - 1.0) < 1e-12:
            e1 = np.array([1.0, 0.0, 0.0])
        else:
            e1 = _unit(np.cross(z_axis, self.normal))

        e2 = np.cross(self.normal, e1)
        return self.normal * self.offset, e1, e2


@dataclasses.dataclass(frozen=True, eq=False)
class HemisphereSurface:
    """Upper (+z) hemisphere dome"""

    center: np.ndarray
    radius: float
    kind = SurfaceKind.HEMISPHERE

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        if self.radius <= 0:
            raise InvalidParameterError(f"Hemisphere radius must be positive: {self.radius}")

    @property
    def domain_radius(self) -> float:
        """Azimuthal-equidistant parameter radius of the equator"""
        return self.radius * np.pi / 2


@dataclasses.dataclass(frozen=True, eq=False)
class ConformalPatch:
    surface: PlaneSurface | HemisphereSurface
    path2d: PathFeature


@dataclasses.dataclass(frozen=True, eq=False)
class ConformalProjection:
    """Projected path with per-sample tool frames and measured length distortion"""

    path: PathFeature
    approaches: Vectors
    headings: Vectors
    distortion: float

    @property
    def poses(self) -> list[ToolPose]:
        return [
            ToolPose(position, approach, heading)
            for position, approach, heading in zip(
                self.path.samples, self.approaches, self.headings
            )
        ]

    @property
    def within_bound(self) -> bool:
        return self.distortion <= settings.CONFORMAL_MAX_DISTORTION


@dataclasses.dataclass(frozen=True, eq=False)
class LayerStack:
    """
    Layer-by-layer stack of a base path.
    `alternate_rotation` is 0 for walls and pi/2 for woodpiles; `strands` parallel copies
    of the base (spaced by `strand_pitch`) are laid in every layer.
    """

    base: PathFeature
    layer_count: int = 1
    layer_height: float = 50e-6
    alternate_rotation: float = 0.0
    strands: int = 1
    strand_pitch: float = 0.0

    def __post_init__(self):
        if self.layer_count < 1:
            raise InvalidParameterError(f"layer_count must be >= 1: {self.layer_count}")
        if self.layer_height <= 0:
            raise InvalidParameterError(f"layer_height must be positive: {self.layer_height}")
        if self.strands < 1:
            raise InvalidParameterError(f"strands must be >= 1: {self.strands}")
        if self.strands > 1 and self.strand_pitch <= 0:
            raise InvalidParameterError("strand_pitch must be positive for multiple strands")


class LayerPlacement(NamedTuple):
    path: PathFeature
    z_offset: float
    rotation: float
    layer: int
    strand: int = 0


@dataclasses.dataclass(frozen=True, eq=False)
class OverhangFeature:
    """Anchor run -> unsupported straight span rising `height` over `span` -> landing run"""

    start: Point3
    height: float
    span: float
    anchor_length: float = settings.ANCHOR_LENGTH
    landing_length: float = 0.02
    heading_angle: float = 0.0
    end_substrate: str | None = None

    def __post_init__(self):
        if self.height < 0 or self.span < 0 or (self.height == 0 and self.span == 0):
            raise InvalidParameterError("Overhang gap needs height >= 0, span >= 0, not both 0")
        if self.anchor_length < 0 or self.landing_length < 0:
            raise InvalidParameterError("Anchor and landing lengths must be non-negative")

    @property
    def alpha(self) -> float:
        """Elevation angle of the span above the anchor plane"""
        return float(np.arctan2(self.height, self.span))


@dataclasses.dataclass(frozen=True)
class FeatureOverrides:
    speed: float | None = None
    mode: ToolpathMode | None = None
    compaction_force: float | None = None
    min_radius: float | None = None
    tape: str | None = None


DesignFeature = PathFeature | ConformalPatch | LayerStack | OverhangFeature


@dataclasses.dataclass(frozen=True, eq=False)
class Design:
    features: tuple[DesignFeature, ...]
    overrides: tuple[FeatureOverrides, ...] = ()
    name: str = "design"

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        if not self.features:
            raise InvalidParameterError("Design must contain at least one feature")

        overrides = tuple(self.overrides) or tuple(FeatureOverrides() for _ in self.features)
        if len(overrides) != len(self.features):
            raise InvalidParameterError("Design overrides must match features one to one")
        object.__setattr__(self, "overrides", overrides)
