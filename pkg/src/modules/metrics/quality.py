import dataclasses
import logging

import numpy as np

from common.exceptions import InvalidInputError, NotApplicableError
from modules.geometry.paths import arc_length, cumulative_length
from modules.simulator.models import FeaturePlacement, PlacementOutcome

__all__ = [
    "PlacementMetrics",
    "effective_length",
    "straightness_deviation",
    "profile_roughness",
    "measure",
]
logger = logging.getLogger(__name__)
TRIM_WIDTH_FRACTION = 0.5
ZERO_TOLERANCE = 1e-12


@dataclasses.dataclass(frozen=True)
class PlacementMetrics:
    feature: int
    effective_length: float
    length_error: float
    relative_length_error: float
    straightness_deviation: float | None
    straightness_ratio: float | None
    width_mean: float
    width_std: float
    width_deviation: float
    profile_roughness: float


def _placement(target: PlacementOutcome | FeaturePlacement, feature: int) -> FeaturePlacement:
    if isinstance(target, PlacementOutcome):
        try:
            return target.placement(feature)
        except IndexError as exc:
            raise InvalidInputError(f"Outcome has no feature {feature}") from exc
    return target


def _trimmed(placement: FeaturePlacement) -> slice:
    """Samples between the two cut ends, spurs (width below half nominal) excluded"""
    if len(placement.centerline) < 2:
        raise InvalidInputError(f"Feature {placement.feature} has fewer than 2 samples")

    wide = np.flatnonzero(placement.width_profile >= TRIM_WIDTH_FRACTION * placement.nominal_width)
    if len(wide) < 2:
        raise InvalidInputError(f"Feature {placement.feature} has no full-width tape")
    return slice(int(wide[0]), int(wide[-1]) + 1)


def _clip(value: float) -> float:
    return 0.0 if abs(value) < ZERO_TOLERANCE else float(value)


def effective_length(target: PlacementOutcome | FeaturePlacement, feature: int = 0) -> float:
    """Centerline length between the trimmed cut ends"""
    placement = _placement(target, feature)
    return arc_length(placement.centerline[_trimmed(placement)])


def _chord_frame(points: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(along, offset, lateral axis): chord coordinates of points and signed lateral offsets"""
    chord = points[-1] - points[0]
    length = np.linalg.norm(chord)
    if length <= ZERO_TOLERANCE:
        raise InvalidInputError("Tape ends coincide, no chord to measure against")

    axis = chord / length
    relative = points - points[0]
    along = relative @ axis
    residual = relative - along[:, None] * axis
    if np.abs(residual).max() > ZERO_TOLERANCE:
        lateral = np.linalg.svd(residual, full_matrices=False)[2][0]
    else:
        helper = np.eye(3)[int(np.argmin(np.abs(axis)))]
        lateral = np.cross(axis, helper)
        lateral /= np.linalg.norm(lateral)
    return along, residual @ lateral, lateral


def straightness_deviation(target: PlacementOutcome | FeaturePlacement, feature: int = 0) -> float:
    """
    Largest outward excursion of either tape edge from its nominal position along the
    chord between the trimmed ends.
    """
    placement = _placement(target, feature)
    if not placement.straight:
        raise NotApplicableError(f"Feature {placement.feature} is not a straight line")

    trimmed = _trimmed(placement)
    _, offset, _ = _chord_frame(placement.centerline[trimmed])
    half_width = placement.width_profile[trimmed] / 2
    nominal = placement.nominal_width / 2
    left = np.max(offset + half_width) - nominal
    right = np.max(half_width - offset) - nominal
    return _clip(max(left, right, 0.0))


def _edge_roughness(position: np.ndarray, edge: np.ndarray) -> float:
    slope, intercept = np.polyfit(position, edge, 1)
    return float(np.mean(np.abs(edge - (slope * position + intercept))))


def profile_roughness(target: PlacementOutcome | FeaturePlacement, feature: int = 0) -> float:
    """
    Ra-style roughness of the simulated tape edges: mean absolute deviation of both edge
    profiles from their least-squares lines, averaged over the two edges.
    Stand-in for an image-based roughness measurement.
    """
    placement = _placement(target, feature)
    trimmed = _trimmed(placement)
    position = cumulative_length(placement.centerline[trimmed])
    lateral = placement.lateral_deviation[trimmed]
    spread = (placement.width_profile[trimmed] - placement.nominal_width) / 2
    roughness = (
        _edge_roughness(position, lateral + spread) + _edge_roughness(position, lateral - spread)
    ) / 2
    return _clip(roughness)


def measure(target: PlacementOutcome | FeaturePlacement, feature: int = 0) -> PlacementMetrics:
    placement = _placement(target, feature)
    length = effective_length(placement)
    width = placement.width_profile[_trimmed(placement)]
    straightness = ratio = None
    if placement.straight:
        straightness = straightness_deviation(placement)
        ratio = straightness / length

    error = _clip(length - placement.planned_length)
    return PlacementMetrics(
        feature=placement.feature,
        effective_length=length,
        length_error=error,
        relative_length_error=error / placement.planned_length,
        straightness_deviation=straightness,
        straightness_ratio=ratio,
        width_mean=float(width.mean()),
        width_std=float(width.std()),
        width_deviation=_clip(float(width.mean()) / placement.nominal_width - 1.0),
        profile_roughness=profile_roughness(placement),
    )
