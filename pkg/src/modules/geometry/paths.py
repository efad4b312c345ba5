import math

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from core import settings
from common.typing import Points
from common.exceptions import InvalidParameterError


def arc_length(points: Points) -> float:
    """Polyline length of (N, 3) points"""
    return float(np.linalg.norm(np.diff(np.asarray(points, dtype=float), axis=0), axis=1).sum())


def cumulative_length(points: Points) -> np.ndarray:
    steps = np.linalg.norm(np.diff(np.asarray(points, dtype=float), axis=0), axis=1)
    return np.concatenate([[0.0], np.cumsum(steps)])


def sample_segment(start: np.ndarray, end: np.ndarray, sample_step: float) -> Points:
    """Points from start to end (both included) with equal spacing <= sample_step"""
    length = float(np.linalg.norm(end - start))
    parts = max(1, math.ceil(length / sample_step - 1e-9))
    fractions = np.linspace(0.0, 1.0, parts + 1)[:, None]
    return start + (end - start) * fractions


def resample_by_arc_length(points: Points, sample_step: float) -> Points:
    """
    Re-distributes samples at equal arc-length spacing (<= sample_step).
    Endpoints are kept, interior points are linearly interpolated.
    """
    if sample_step <= 0:
        raise InvalidParameterError(f"sample_step must be positive: {sample_step}")

    points = np.asarray(points, dtype=float)
    positions = cumulative_length(points)
    total = positions[-1]
    parts = max(1, math.ceil(total / sample_step - 1e-9))
    targets = np.linspace(0.0, total, parts + 1)
    return np.column_stack([np.interp(targets, positions, points[:, axis]) for axis in range(3)])


def tangents(points: Points) -> np.ndarray:
    """Unit tangents by central differences (one-sided at the ends)"""
    points = np.asarray(points, dtype=float)
    directions = np.gradient(points, axis=0)
    norms = np.linalg.norm(directions, axis=1)
    norms[norms == 0] = 1.0
    return directions / norms[:, None]


def rotation_about_z(angle: float) -> np.ndarray:
    cos_a, sin_a = math.cos(angle), math.sin(angle)
    return np.array([[cos_a, -sin_a, 0.0], [sin_a, cos_a, 0.0], [0.0, 0.0, 1.0]])


def hausdorff_distance(points_a: Points, points_b: Points) -> float:
    """Symmetric Hausdorff distance between two point sets (vertex based)"""
    forward = directed_hausdorff(points_a, points_b)[0]
    backward = directed_hausdorff(points_b, points_a)[0]
    return float(max(forward, backward))


def is_collinear(points: Points, tolerance: float = 1e-9) -> bool:
    """All points within `tolerance` of the chord between the first and the last one"""
    points = np.asarray(points, dtype=float)
    chord = points[-1] - points[0]
    chord_length = np.linalg.norm(chord)
    if chord_length <= settings.GEOMETRY_TOLERANCE:
        return False

    offsets = np.linalg.norm(np.cross(points - points[0], chord / chord_length), axis=1)
    return bool(offsets.max() <= tolerance)
