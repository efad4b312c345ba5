import math
import logging
from typing import Sequence

import numpy as np

from core import settings
from common.enums import FeatureKind
from common.exceptions import InvalidParameterError, CurvatureViolationError
from modules.geometry.models import PathFeature, Point3
from modules.geometry.paths import sample_segment

__all__ = ["gen_wave", "gen_circle", "gen_arc", "gen_polygon", "fillet_corners"]
logger = logging.getLogger(__name__)


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise InvalidParameterError(f"{name} must be positive, got {value}")


def gen_wave(
    amplitude: float,
    wavelength: float,
    total_length: float,
    sample_step: float = settings.SAMPLE_STEP,
) -> PathFeature:
    """
    Sinusoid y = A*sin(2*pi*x/wavelength) over x in [0, total_length], z = 0.
    Sampled in x with a spacing small enough that every chord stays <= sample_step.
    """
    _require_positive(wavelength=wavelength, total_length=total_length, sample_step=sample_step)
    if amplitude < 0:
        raise InvalidParameterError(f"amplitude must be non-negative, got {amplitude}")

    max_slope = 2 * math.pi * amplitude / wavelength
    dx = sample_step / math.sqrt(1 + max_slope**2)
    parts = max(1, math.ceil(total_length / dx - 1e-9))
    x = np.linspace(0.0, total_length, parts + 1)
    y = amplitude * np.sin(2 * math.pi * x / wavelength)
    samples = np.column_stack([x, y, np.zeros_like(x)])
    return PathFeature(kind=FeatureKind.WAVE, samples=samples, sample_step=sample_step)


def gen_arc(
    radius: float,
    sweep: float,
    sample_step: float = settings.SAMPLE_STEP,
    center: Point3 = Point3(0.0, 0.0, 0.0),
    start_angle: float = 0.0,
) -> PathFeature:
    """Counter-clockwise circular arc in a horizontal plane (negative sweep: clockwise)"""
    _require_positive(radius=radius, sample_step=sample_step)
    if sweep == 0 or abs(sweep) > 2 * math.pi:
        raise InvalidParameterError(f"Arc sweep must be in (0, 2*pi] by magnitude, got {sweep}")

    parts = max(2, math.ceil(abs(sweep) * radius / sample_step - 1e-9))
    angles = start_angle + np.linspace(0.0, sweep, parts + 1)
    center = np.asarray(center, dtype=float)
    samples = np.column_stack(
        [
            center[0] + radius * np.cos(angles),
            center[1] + radius * np.sin(angles),
            np.full_like(angles, center[2]),
        ]
    )
    return PathFeature(kind=FeatureKind.ARC, samples=samples, sample_step=sample_step)


def gen_circle(
    diameter: float,
    sample_step: float = settings.SAMPLE_STEP,
    center: Point3 = Point3(0.0, 0.0, 0.0),
) -> PathFeature:
    """Closed circle sampled with equal chords (constant discrete curvature, seam included)"""
    _require_positive(diameter=diameter, sample_step=sample_step)
    circumference = math.pi * diameter
    if sample_step > circumference / 4:
        raise InvalidParameterError(
            f"sample_step {sample_step} m exceeds a quarter of the circumference {circumference} m"
        )

    parts = math.ceil(circumference / sample_step - 1e-9)
    angles = np.linspace(0.0, 2 * math.pi, parts + 1)
    radius = diameter / 2
    center = np.asarray(center, dtype=float)
    samples = np.column_stack(
        [
            center[0] + radius * np.cos(angles),
            center[1] + radius * np.sin(angles),
            np.full_like(angles, center[2]),
        ]
    )
    samples[-1] = samples[0]
    return PathFeature(
        kind=FeatureKind.CIRCLE, samples=samples, closed=True, sample_step=sample_step
    )


def _turn_angle(before: np.ndarray, vertex: np.ndarray, after: np.ndarray) -> float:
    incoming = (vertex - before) / np.linalg.norm(vertex - before)
    outgoing = (after - vertex) / np.linalg.norm(after - vertex)
    return float(np.arccos(np.clip(np.dot(incoming, outgoing), -1.0, 1.0)))


def gen_polygon(
    vertices: Sequence[Point3 | Sequence[float]],
    closed: bool,
    sample_step: float = settings.SAMPLE_STEP,
    segmented: bool = False,
    fillet: bool = False,
) -> PathFeature:
    """
    Chain of straight segments through `vertices` (corner locations are kept exactly).
    Closed polygons must not repeat the first vertex at the end.
    """
    _require_positive(sample_step=sample_step)
    points = np.array([tuple(vertex) + (0.0,) * (3 - len(vertex)) for vertex in vertices], float)
    if len(points) < (3 if closed else 2):
        raise InvalidParameterError(
            f"{'Closed' if closed else 'Open'} polygon needs more vertices, got {len(points)}"
        )

    ring = np.vstack([points, points[:1]]) if closed else points
    gaps = np.linalg.norm(np.diff(ring, axis=0), axis=1)
    if np.any(gaps <= settings.GEOMETRY_TOLERANCE):
        raise InvalidParameterError(
            f"Duplicate consecutive vertices at index {int(np.argmin(gaps))}"
        )

    chunks = [sample_segment(start, end, sample_step) for start, end in zip(ring[:-1], ring[1:])]
    vertex_sample_index = [0]
    for chunk in chunks:
        vertex_sample_index.append(vertex_sample_index[-1] + len(chunk) - 1)

    samples = np.vstack([chunks[0]] + [chunk[1:] for chunk in chunks[1:]])
    if closed:
        samples[-1] = samples[0]

    corners = []
    count = len(points)
    for number in range(count) if closed else range(1, count - 1):
        before, after = ring[number - 1] if number else points[-1], ring[number + 1]
        if _turn_angle(before, points[number], after) > 1e-9:
            corners.append(vertex_sample_index[number])

    return PathFeature(
        kind=FeatureKind.SEGMENT_CHAIN,
        samples=samples,
        closed=closed,
        sample_step=sample_step,
        corners=tuple(corners),
        segmented=segmented,
        fillet=fillet,
    )


def _corner_arc(
    before: np.ndarray,
    vertex: np.ndarray,
    after: np.ndarray,
    radius: float,
    sample_step: float,
    arc_position: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """Tangent points and sampled fillet arc of given radius at `vertex`"""
    incoming = (vertex - before) / np.linalg.norm(vertex - before)
    outgoing = (after - vertex) / np.linalg.norm(after - vertex)
    axis = np.cross(incoming, outgoing)
    if np.linalg.norm(axis) <= 1e-9:
        # path doubles back on itself: no tangent arc exists
        raise CurvatureViolationError(
            arc_position=arc_position,
            details={"reason": "reversal corner cannot be filleted"},
        )

    turn = float(np.arccos(np.clip(np.dot(incoming, outgoing), -1.0, 1.0)))
    setback = radius * math.tan(turn / 2)
    axis /= np.linalg.norm(axis)
    inward = np.cross(axis, incoming)
    tangent_in = vertex - incoming * setback
    center = tangent_in + inward * radius
    parts = max(1, math.ceil(turn * radius / sample_step - 1e-9))
    angles = np.linspace(0.0, turn, parts + 1)[:, None]
    arc = center + radius * (-inward * np.cos(angles) + incoming * np.sin(angles))
    return tangent_in, vertex + outgoing * setback, arc, setback


def fillet_corners(path: PathFeature, radius: float) -> PathFeature:
    """
    Replaces every corner of a segment chain by a tangent circular arc of `radius`.
    Raises curvature-violation when an edge is too short for the fillets at both its ends.
    """
    _require_positive(radius=radius)
    if not path.corners:
        return path

    indices = path.vertex_indices
    vertices = path.samples[indices]
    count = len(vertices)
    is_corner = [int(index) in path.corners for index in indices[:count]]
    positions = path.arc_positions
    fillets: dict[int, tuple] = {}
    for number in range(count):
        if not is_corner[number]:
            continue
        before = vertices[number - 1] if (number or path.closed) else None
        after = vertices[(number + 1) % count] if (number < count - 1 or path.closed) else None
        fillets[number] = _corner_arc(
            before,
            vertices[number],
            after,
            radius,
            path.sample_step,
            arc_position=float(positions[indices[number]]),
        )

    for number in range(count if path.closed else count - 1):
        following = (number + 1) % count
        edge = float(np.linalg.norm(vertices[following] - vertices[number]))
        needed = fillets.get(number, (None,) * 3 + (0.0,))[3]
        needed += fillets.get(following, (None,) * 3 + (0.0,))[3]
        if needed > edge + settings.GEOMETRY_TOLERANCE:
            raise CurvatureViolationError(
                arc_position=float(positions[indices[number]]),
                details={"reason": f"edge {edge:.4g} m too short for fillet radius {radius} m"},
            )

    pieces: list[np.ndarray] = []
    cursor = fillets[0][1] if (path.closed and 0 in fillets) else vertices[0]
    order = list(range(1, count)) + ([0] if path.closed else [])
    for number in order:
        if number in fillets:
            tangent_in, tangent_out, arc, _ = fillets[number]
            pieces.append(sample_segment(cursor, tangent_in, path.sample_step))
            pieces.append(arc)
            cursor = tangent_out
        else:
            pieces.append(sample_segment(cursor, vertices[number], path.sample_step))
            cursor = vertices[number]

    samples = pieces[0]
    for piece in pieces[1:]:
        start = 1 if np.linalg.norm(piece[0] - samples[-1]) <= 1e-12 else 0
        samples = np.vstack([samples, piece[start:]])

    keep = np.concatenate([[True], np.linalg.norm(np.diff(samples, axis=0), axis=1) > 1e-12])
    samples = samples[keep]
    if path.closed:
        samples[-1] = samples[0]

    logger.debug("Filleted %i corners at radius %.4f m", len(fillets), radius)
    return PathFeature(
        kind=FeatureKind.SEGMENT_CHAIN,
        samples=samples,
        closed=path.closed,
        sample_step=path.sample_step,
    )
