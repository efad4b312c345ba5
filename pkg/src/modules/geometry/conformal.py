import logging

import numpy as np

from core import settings
from common.exceptions import OutOfDomainError, InvalidParameterError
from modules.geometry.models import (
    PathFeature,
    PlaneSurface,
    ConformalPatch,
    HemisphereSurface,
    ConformalProjection,
)
from modules.geometry.paths import arc_length, resample_by_arc_length, tangents

__all__ = ["project_conformal", "frame_headings"]
logger = logging.getLogger(__name__)


def frame_headings(points: np.ndarray, approaches: np.ndarray) -> np.ndarray:
    """Path tangents projected onto the plane normal to each approach vector"""
    headings = tangents(points)
    headings = headings - np.sum(headings * approaches, axis=1)[:, None] * approaches
    norms = np.linalg.norm(headings, axis=1)
    for index in np.flatnonzero(norms < 1e-12):
        # tangent parallel to approach: reuse the neighbour heading
        neighbour = index - 1 if index else index + 1
        headings[index] = headings[neighbour]
        norms[index] = norms[neighbour]
    return headings / norms[:, None]


def _project_plane(surface: PlaneSurface, uv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    origin, e1, e2 = surface.basis
    points = origin + uv[:, :1] * e1 + uv[:, 1:2] * e2
    approaches = np.tile(-surface.normal, (len(points), 1))
    return points, approaches


def _project_hemisphere(
    surface: HemisphereSurface, uv: np.ndarray, positions: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Azimuthal-equidistant map from the apex: radial parameter distance = arc length"""
    rho = np.hypot(uv[:, 0], uv[:, 1])
    outside = rho > surface.domain_radius * (1 + 1e-12)
    if np.any(outside):
        raise OutOfDomainError(
            arc_position=float(positions[outside][0]),
            details={"arc_positions": [round(float(pos), 9) for pos in positions[outside]]},
        )

    polar = rho / surface.radius
    azimuth = np.arctan2(uv[:, 1], uv[:, 0])
    normals = np.column_stack(
        [np.sin(polar) * np.cos(azimuth), np.sin(polar) * np.sin(azimuth), np.cos(polar)]
    )
    return surface.center + surface.radius * normals, -normals


def project_conformal(
    patch: ConformalPatch, sample_step: float = settings.SAMPLE_STEP
) -> ConformalProjection:
    """
    Maps the parameter-space path of `patch` onto its surface.
    Every pose lies on the surface, approach is the inward surface normal and heading is
    the tangent of the projected path; path length distortion is measured, not bounded.
    """
    if sample_step <= 0:
        raise InvalidParameterError(f"sample_step must be positive: {sample_step}")

    path2d = patch.path2d
    uv = path2d.samples
    corners = path2d.corners
    if path2d.segment_lengths.max() > sample_step * (1 + 1e-9):
        uv = resample_by_arc_length(uv, sample_step)
        corners = ()

    if np.abs(uv[:, 2]).max() > settings.GEOMETRY_TOLERANCE:
        raise InvalidParameterError("Parameter-space path must lie in the z = 0 plane")

    positions = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(uv, axis=0), axis=1))])
    if isinstance(patch.surface, HemisphereSurface):
        points, approaches = _project_hemisphere(patch.surface, uv, positions)
    else:
        points, approaches = _project_plane(patch.surface, uv)

    if path2d.closed:
        points[-1] = points[0]

    length_2d = positions[-1]
    distortion = abs(arc_length(points) - length_2d) / length_2d
    if distortion > settings.CONFORMAL_MAX_DISTORTION:
        logger.warning(
            "Conformal projection distorts path length by %.2f%% (bound %.2f%%)",
            distortion * 100,
            settings.CONFORMAL_MAX_DISTORTION * 100,
        )

    projected = PathFeature(
        kind=path2d.kind,
        samples=points,
        closed=path2d.closed,
        sample_step=max(sample_step, path2d.sample_step),
        corners=corners,
        segmented=path2d.segmented,
        fillet=path2d.fillet,
    )
    return ConformalProjection(
        path=projected,
        approaches=approaches,
        headings=frame_headings(points, approaches),
        distortion=float(distortion),
    )
