from typing import NamedTuple

import numpy as np

from common.exceptions import InsufficientDataError
from modules.geometry.models import PathFeature

__all__ = ["CurvatureSample", "curvature_profile", "circumscribed_curvature"]


class CurvatureSample(NamedTuple):
    arc_position: float
    curvature: float  # 1/m, inf at sharp corners
    index: int


def circumscribed_curvature(
    before: np.ndarray, vertex: np.ndarray, after: np.ndarray
) -> np.ndarray:
    """Inverse radius of the circle through each (before, vertex, after) triple (vectorized)"""
    first = vertex - before
    second = after - vertex
    chord = after - before
    doubled_area = np.linalg.norm(np.cross(first, second), axis=-1)
    denominator = (
        np.linalg.norm(first, axis=-1)
        * np.linalg.norm(second, axis=-1)
        * np.linalg.norm(chord, axis=-1)
    )
    return 2.0 * doubled_area / denominator


def curvature_profile(path: PathFeature) -> list[CurvatureSample]:
    """
    Discrete curvature at every interior sample (and at the seam of closed paths).
    Corners recorded on the path are reported as infinite curvature.
    """
    samples = path.samples
    if len(samples) < 3:
        raise InsufficientDataError(f"Curvature needs at least 3 samples, got {len(samples)}")

    if path.closed:
        # last sample repeats the first one
        indices = np.arange(0, len(samples) - 1)
        before = samples[np.where(indices == 0, len(samples) - 2, indices - 1)]
    else:
        indices = np.arange(1, len(samples) - 1)
        before = samples[indices - 1]

    curvature = circumscribed_curvature(before, samples[indices], samples[indices + 1])
    curvature[np.isin(indices, path.corners)] = np.inf
    positions = path.arc_positions[indices]
    return [
        CurvatureSample(float(position), float(value), int(index))
        for position, value, index in zip(positions, curvature, indices)
    ]
