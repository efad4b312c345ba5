import logging

import numpy as np

from common.enums import StepKind
from modules.geometry.models import PathFeature
from modules.geometry.curvature import curvature_profile
from modules.mechanics.models import TapeSpec
from modules.mechanics.forces import scaled_min_radius
from modules.planner.models import MotionProgram, RobotLimits, Violation

__all__ = ["check_curvature", "check_joint_limits", "check_workspace", "yaw_profile"]
logger = logging.getLogger(__name__)


def _merge_ranges(flags: np.ndarray, closed: bool) -> list[tuple[int, int]]:
    """(first, last) index pairs of contiguous True runs (wrapping around on closed paths)"""
    runs: list[tuple[int, int]] = []
    start = None
    for index, flag in enumerate(flags):
        if flag and start is None:
            start = index
        elif not flag and start is not None:
            runs.append((start, index - 1))
            start = None
    if start is not None:
        runs.append((start, len(flags) - 1))

    if closed and len(runs) > 1 and runs[0][0] == 0 and runs[-1][1] == len(flags) - 1:
        runs[0] = (runs[-1][0], runs[0][1])
        runs.pop()
    return runs


def check_curvature(path: PathFeature, tape: TapeSpec, min_radius: float) -> list[Violation]:
    """
    Arc-position ranges where the path bends tighter than the tape allows.
    The radius limit scales with tape width; corners are violations unless the path
    is printed segment by segment.
    """
    profile = curvature_profile(path)
    limit = scaled_min_radius(min_radius, tape)
    curvature = np.array([sample.curvature for sample in profile])
    indices = np.array([sample.index for sample in profile])
    is_corner = np.isin(indices, path.corners)
    flags = curvature > (1.0 / limit) * (1 + 1e-9)
    if path.segmented:
        flags &= ~is_corner

    positions = path.arc_positions
    violations = []
    for first, last in _merge_ranges(flags, path.closed):
        members = (
            np.r_[first : len(flags), 0 : last + 1] if first > last else np.r_[first : last + 1]
        )
        violations.append(
            Violation(
                arc_start=float(positions[indices[first]]),
                arc_end=float(positions[indices[last]]),
                value=float(1.0 / curvature[members].max()),
                limit=limit,
            )
        )

    if violations:
        logger.debug("Curvature check: %i violation(s), limit %.4g m", len(violations), limit)
    return violations


def yaw_profile(approaches: np.ndarray, headings: np.ndarray) -> np.ndarray:
    """Cumulative signed tool yaw (rad) about the approach axis along a sequence of frames"""
    if len(headings) < 2:
        return np.zeros(len(headings))

    before, after = headings[:-1], headings[1:]
    sine = np.sum(np.cross(before, after) * approaches[:-1], axis=1)
    cosine = np.sum(before * after, axis=1)
    return np.concatenate([[0.0], np.cumsum(np.arctan2(sine, cosine))])


def check_joint_limits(program: MotionProgram, limits: RobotLimits) -> list[Violation]:
    """Total yaw travel inside every uncut feature must fit into the wrist rotation range"""
    violations = []
    for meta in program.features:
        steps = program.feature_steps(meta.index)
        if len(steps) < 2:
            continue

        approaches = np.array([step.pose.approach for step in steps])
        headings = np.array([step.pose.heading for step in steps])
        yaw = yaw_profile(approaches, headings)
        travel = np.maximum.accumulate(yaw) - np.minimum.accumulate(yaw)
        exceeded = np.flatnonzero(travel > limits.wrist_rotation_range * (1 + 1e-9))
        if not len(exceeded):
            continue

        positions_xyz = np.array([step.position for step in steps])
        positions = np.concatenate(
            [[0.0], np.cumsum(np.linalg.norm(np.diff(positions_xyz, axis=0), axis=1))]
        )
        violations.append(
            Violation(
                arc_start=float(positions[exceeded[0]]),
                arc_end=float(positions[-1]),
                value=float(travel[-1]),
                limit=limits.wrist_rotation_range,
                feature=meta.index,
            )
        )
    return violations


def check_workspace(program: MotionProgram, limits: RobotLimits) -> list[Violation]:
    """Steps outside the workspace box (arc position is the tape position for laying steps)"""
    positions = np.array([step.position for step in program.steps])
    outside = np.flatnonzero(~limits.contains(positions))
    violations = []
    for index in outside:
        step = program.steps[index]
        arc_position = 0.0
        if step.kind == StepKind.LAYING:
            laying = program.feature_steps(step.feature)
            points = np.array([item.position for item in laying])
            number = next(i for i, item in enumerate(laying) if item is step)
            segments = np.diff(points[: number + 1], axis=0)
            arc_position = float(np.linalg.norm(segments, axis=1).sum())

        violations.append(
            Violation(
                arc_start=arc_position,
                arc_end=arc_position,
                value=float(np.abs(step.position).max()),
                limit=float(np.abs(np.asarray(limits.workspace_max)).max()),
                feature=step.feature,
            )
        )
    return violations
