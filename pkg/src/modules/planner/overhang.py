import logging

from core import settings
from common.exceptions import InfeasibleAnchorError
from modules.geometry.models import OverhangFeature, Point3
from modules.mechanics.models import TapeSpec, SubstrateSpec
from modules.planner.anchors import assess_anchor
from modules.planner.compiler import assemble
from modules.planner.events import insert_cut_events
from modules.planner.models import PlanParams, MotionProgram, FeasibilityReport
from modules.planner.units import overhang_unit

__all__ = ["plan_overhang"]
logger = logging.getLogger(__name__)


def plan_overhang(
    start_surface: SubstrateSpec,
    end_surface: SubstrateSpec,
    gap_geometry: tuple[float, float],
    tape: TapeSpec,
    params: PlanParams,
    start: Point3 = Point3(0.0, 0.0, 0.0),
    heading_angle: float = 0.0,
    landing_length: float = 0.02,
    strict: bool = True,
) -> tuple[MotionProgram, FeasibilityReport]:
    """
    Out-of-plane fragment: anchor run of `params.anchor_length` on the start surface
    (marked by anchor_mark), a straight span rising `height` over `span`, and a landing run.
    With strict=False an infeasible anchor is reported instead of raised.
    """
    height, span = gap_geometry
    if params.anchor_length <= 0:
        raise InfeasibleAnchorError(details={"reason": "no anchored run, adhesion is zero"})

    feature = OverhangFeature(
        start=start,
        height=height,
        span=span,
        anchor_length=params.anchor_length,
        landing_length=landing_length,
        heading_angle=heading_angle,
        end_substrate=end_surface.name,
    )
    unit = overhang_unit(feature, 0, params, tape, settings.SAMPLE_STEP)
    report = assess_anchor(
        tape,
        start_surface,
        params.speed,
        params.anchor_length,
        feature.alpha,
        unit.overhang.span_length,
        end_surface,
    )
    if not report.feasible:
        logger.warning(
            "Anchor of %.4g m is not enough, at least %.4g m required (%s)",
            report.anchor_length,
            report.required_anchor_length,
            report.failure,
        )
        if strict:
            raise InfeasibleAnchorError(details=report.as_dict())

    fragment = assemble([unit], tape, start_surface, params, design_name="overhang")
    return insert_cut_events(fragment, tape), report
