"""
Printable units: every unit is laid with one feed and terminated by one cut.
Design features are expanded here (fillets, segment splitting, conformal projection,
layer stacks, overhangs) and checked against the tape curvature limit.
"""

import dataclasses
import logging
import math

import numpy as np

from core import settings
from common.enums import DesignKind, ToolpathMode, WrinkleRisk
from common.exceptions import CurvatureViolationError
from modules.geometry.models import PathFeature, ConformalPatch, LayerStack, OverhangFeature
from modules.geometry.generators import fillet_corners
from modules.geometry.conformal import project_conformal, frame_headings
from modules.geometry.curvature import curvature_profile
from modules.geometry.layers import expand_layers
from modules.geometry.paths import sample_segment, cumulative_length, is_collinear
from modules.mechanics.models import TapeSpec
from modules.mechanics.forces import scaled_min_radius, wrinkle_risk
from modules.planner.checks import check_curvature
from modules.planner.models import PlanParams, OverhangInfo

__all__ = ["PrintUnit", "path_units", "conformal_units", "layer_units", "overhang_unit"]
logger = logging.getLogger(__name__)
DOWN = np.array([0.0, 0.0, -1.0])


@dataclasses.dataclass(frozen=True, eq=False)
class PrintUnit:
    design_index: int
    kind: str
    samples: np.ndarray
    approaches: np.ndarray
    headings: np.ndarray
    params: PlanParams
    tape: TapeSpec
    closed: bool = False
    straight: bool = False
    layer: int = 0
    overhang: OverhangInfo | None = None
    anchor_index: int | None = None

    @property
    def length(self) -> float:
        return float(cumulative_length(self.samples)[-1])


def _approaches(count: int, params: PlanParams, normals: np.ndarray | None) -> np.ndarray:
    """Compaction mode presses along the surface normal, cartesian mode along global -z"""
    if normals is None or params.mode == ToolpathMode.CARTESIAN:
        return np.tile(DOWN, (count, 1))
    return np.asarray(normals, dtype=float)


def _append_lead_in(
    samples: np.ndarray, normals: np.ndarray | None, lead_in: float
) -> tuple[np.ndarray, np.ndarray | None]:
    """Closed paths overlap their start by `lead_in` so both tape ends meet"""
    if lead_in <= 0:
        return samples, normals

    positions = cumulative_length(samples)
    lead_in = min(lead_in, positions[-1])
    count = int(np.searchsorted(positions, lead_in, side="left"))
    indices = np.arange(1, count)
    extra = samples[indices]
    fraction = (lead_in - positions[count - 1]) / (positions[count] - positions[count - 1])
    tip = samples[count - 1] + (samples[count] - samples[count - 1]) * fraction
    if fraction > 1e-9:
        extra = np.vstack([extra, tip])
    samples = np.vstack([samples, extra])
    if normals is None:
        return samples, None

    extra_normals = normals[indices]
    if fraction > 1e-9:
        tip_normal = normals[count - 1] + (normals[count] - normals[count - 1]) * fraction
        extra_normals = np.vstack([extra_normals, tip_normal / np.linalg.norm(tip_normal)])
    return samples, np.vstack([normals, extra_normals])


def _check_path(path: PathFeature, tape: TapeSpec, params: PlanParams, design_index: int) -> None:
    violations = check_curvature(path, tape, params.min_radius)
    if violations:
        first = violations[0]
        raise CurvatureViolationError(
            feature=design_index,
            arc_position=round(first.arc_start, 9),
            details={
                "violations": [
                    dataclasses.replace(violation, feature=design_index).as_dict()
                    for violation in violations
                ]
            },
        )

    finite = [
        sample.curvature
        for sample in curvature_profile(path)
        if math.isfinite(sample.curvature) and sample.curvature > 0
    ]
    if finite:
        tightest = 1.0 / max(finite)
        if wrinkle_risk(tightest, tape, params.min_radius) == WrinkleRisk.WARN:
            logger.warning(
                "Feature %i: radius %.4g m is close to the wrinkle limit (%.4g m)",
                design_index,
                tightest,
                scaled_min_radius(params.min_radius, tape),
            )


def _unit(
    samples: np.ndarray,
    design_index: int,
    kind: str,
    params: PlanParams,
    tape: TapeSpec,
    closed: bool = False,
    normals: np.ndarray | None = None,
    layer: int = 0,
) -> "PrintUnit":
    if closed:
        samples, normals = _append_lead_in(samples, normals, params.lead_in)

    approaches = _approaches(len(samples), params, normals)
    straight = not closed and is_collinear(samples)
    return PrintUnit(
        design_index=design_index,
        kind=kind,
        samples=samples,
        approaches=approaches,
        headings=frame_headings(samples, approaches),
        params=params,
        tape=tape,
        closed=closed,
        straight=straight,
        layer=layer,
    )


def path_units(
    path: PathFeature,
    design_index: int,
    params: PlanParams,
    tape: TapeSpec,
    kind: str = DesignKind.PATH,
    layer: int = 0,
) -> list[PrintUnit]:
    if path.fillet and path.corners and not path.segmented:
        path = fillet_corners(path, scaled_min_radius(params.min_radius, tape))

    if len(path.samples) >= 3:
        _check_path(path, tape, params, design_index)

    if not (path.segmented and path.corners):
        return [_unit(path.samples, design_index, kind, params, tape, path.closed, layer=layer)]

    # one printed edge per corner-to-corner run
    breaks = path.vertex_indices
    if path.closed:
        breaks = breaks + [len(path.samples) - 1]
    return [
        _unit(path.samples[first : last + 1], design_index, kind, params, tape, layer=layer)
        for first, last in zip(breaks, breaks[1:])
    ]


def conformal_units(
    patch: ConformalPatch, design_index: int, params: PlanParams, tape: TapeSpec
) -> list[PrintUnit]:
    """Curvature is checked in the surface parameter space, where in-plane bending happens"""
    if len(patch.path2d.samples) >= 3:
        _check_path(patch.path2d, tape, params, design_index)

    projection = project_conformal(patch, patch.path2d.sample_step)
    return [
        _unit(
            projection.path.samples,
            design_index,
            DesignKind.CONFORMAL,
            params,
            tape,
            projection.path.closed,
            normals=projection.approaches,
        )
    ]


def layer_units(
    stack: LayerStack, design_index: int, params: PlanParams, tape: TapeSpec
) -> list[PrintUnit]:
    units = []
    for placement in expand_layers(stack):
        units.extend(
            path_units(
                placement.path, design_index, params, tape, DesignKind.LAYERS, placement.layer
            )
        )
    return units


def overhang_unit(
    feature: OverhangFeature,
    design_index: int,
    params: PlanParams,
    tape: TapeSpec,
    sample_step: float = settings.SAMPLE_STEP,
) -> PrintUnit:
    """Anchor run on the start surface, straight span to the landing surface, landing run"""
    start = feature.start.as_array()
    direction = np.array([math.cos(feature.heading_angle), math.sin(feature.heading_angle), 0.0])
    anchor_end = start + direction * feature.anchor_length
    span_end = anchor_end + direction * feature.span + np.array([0.0, 0.0, feature.height])
    landing_end = span_end + direction * feature.landing_length

    pieces = [sample_segment(anchor_end, span_end, sample_step)]
    anchor_index = 0
    if feature.anchor_length > 0:
        pieces.insert(0, sample_segment(start, anchor_end, sample_step)[:-1])
        anchor_index = len(pieces[0])
    if feature.landing_length > 0:
        pieces.append(sample_segment(span_end, landing_end, sample_step)[1:])

    samples = np.vstack(pieces)
    span_length = math.hypot(feature.span, feature.height)
    approaches = np.tile(DOWN, (len(samples), 1))
    headings = np.tile(direction, (len(samples), 1))
    return PrintUnit(
        design_index=design_index,
        kind=DesignKind.OVERHANG,
        samples=samples,
        approaches=approaches,
        headings=headings,
        params=params,
        tape=tape,
        straight=feature.height == 0,
        overhang=OverhangInfo(
            alpha=feature.alpha,
            height=feature.height,
            span_length=span_length,
            anchor_length=feature.anchor_length,
            landing_length=feature.landing_length,
            anchor_end=feature.anchor_length,
            span_end=feature.anchor_length + span_length,
            end_substrate=feature.end_substrate,
        ),
        anchor_index=anchor_index,
    )
