import dataclasses
import logging

import numpy as np

from core import settings
from common.enums import StepEvent, StepKind
from common.exceptions import (
    InfeasibleAnchorError,
    JointLimitViolationError,
    WorkspaceViolationError,
    InvalidParameterError,
)
from modules.geometry.models import (
    Design,
    ToolPose,
    LayerStack,
    PathFeature,
    ConformalPatch,
    OverhangFeature,
    FeatureOverrides,
)
from modules.mechanics.catalog import get_tape, get_substrate
from modules.mechanics.models import TapeSpec, SubstrateSpec
from modules.planner.anchors import assess_anchor
from modules.planner.checks import check_joint_limits, check_workspace
from modules.planner.events import insert_cut_events
from modules.planner.models import PlanParams, RobotLimits, MotionProgram, MotionStep, FeatureMeta
from modules.planner.units import (
    PrintUnit,
    path_units,
    conformal_units,
    layer_units,
    overhang_unit,
)

__all__ = ["plan", "assemble", "resolve_params"]
logger = logging.getLogger(__name__)


def resolve_params(params: PlanParams, overrides: FeatureOverrides) -> PlanParams:
    changes = {
        field: getattr(overrides, field)
        for field in ("speed", "mode", "compaction_force", "min_radius")
        if getattr(overrides, field) is not None
    }
    return dataclasses.replace(params, **changes) if changes else params


def _overhang_units(
    feature: OverhangFeature,
    design_index: int,
    params: PlanParams,
    tape: TapeSpec,
    substrate: SubstrateSpec,
) -> list[PrintUnit]:
    if feature.anchor_length <= 0:
        raise InfeasibleAnchorError(
            details={"feature": design_index, "reason": "no anchored run, adhesion is zero"}
        )

    unit = overhang_unit(feature, design_index, params, tape)
    end_substrate = get_substrate(feature.end_substrate) if feature.end_substrate else None
    report = assess_anchor(
        tape,
        substrate,
        params.speed,
        feature.anchor_length,
        feature.alpha,
        unit.overhang.span_length,
        end_substrate,
    )
    if not report.feasible:
        raise InfeasibleAnchorError(details={"feature": design_index} | report.as_dict())
    return [unit]


def _design_units(
    design: Design, tape: TapeSpec, substrate: SubstrateSpec, params: PlanParams
) -> list[PrintUnit]:
    units: list[PrintUnit] = []
    for index, (feature, overrides) in enumerate(zip(design.features, design.overrides)):
        feature_params = resolve_params(params, overrides)
        feature_tape = get_tape(overrides.tape) if overrides.tape else tape
        match feature:
            case PathFeature():
                units += path_units(feature, index, feature_params, feature_tape, str(feature.kind))
            case ConformalPatch():
                units += conformal_units(feature, index, feature_params, feature_tape)
            case LayerStack():
                units += layer_units(feature, index, feature_params, feature_tape)
            case OverhangFeature():
                units += _overhang_units(feature, index, feature_params, feature_tape, substrate)
            case _:
                raise InvalidParameterError(f"Unsupported design feature: {type(feature).__name__}")
    return units


def assemble(
    units: list[PrintUnit],
    tape: TapeSpec,
    substrate: SubstrateSpec,
    params: PlanParams,
    design_name: str = "design",
) -> MotionProgram:
    """
    Lays out units one after another: travel to a hover point above the unit start,
    plunge at print speed, lay every sample, retract. No feed/cut events yet.
    """
    steps: list[MotionStep] = []

    def add(position, approach, heading, speed, kind, feature=-1, setpoint=0.0, event=None):
        t = 0.0
        if steps:
            distance = float(np.linalg.norm(position - steps[-1].position))
            if distance <= 1e-12 and kind == StepKind.TRAVEL:
                return
            t = steps[-1].t + distance / speed

        steps.append(
            MotionStep(
                t=t,
                pose=ToolPose(position, approach, heading),
                speed=speed,
                compaction_setpoint=setpoint,
                event=event or StepEvent.NONE,
                kind=kind,
                feature=feature,
            )
        )

    features = []
    for number, unit in enumerate(units):
        speed = unit.params.speed
        setpoint = unit.params.compaction_setpoint
        hover = unit.samples[0] - unit.approaches[0] * settings.RETRACT_HEIGHT
        add(hover, unit.approaches[0], unit.headings[0], settings.TRAVEL_SPEED, StepKind.TRAVEL)
        for index, (sample, approach, heading) in enumerate(
            zip(unit.samples, unit.approaches, unit.headings)
        ):
            event = StepEvent.ANCHOR_MARK if index == unit.anchor_index and index else None
            add(sample, approach, heading, speed, StepKind.LAYING, number, setpoint, event)

        retract = unit.samples[-1] - unit.approaches[-1] * settings.RETRACT_HEIGHT
        add(retract, unit.approaches[-1], unit.headings[-1], settings.TRAVEL_SPEED, StepKind.TRAVEL)
        features.append(
            FeatureMeta(
                index=number,
                design_index=unit.design_index,
                kind=str(unit.kind),
                planned_length=unit.length,
                tape=unit.tape.name,
                width=unit.tape.width,
                speed=speed,
                mode=unit.params.mode,
                compaction_setpoint=setpoint,
                straight=unit.straight,
                closed=unit.closed,
                layer=unit.layer,
                overhang=unit.overhang,
            )
        )

    return MotionProgram(
        steps=tuple(steps),
        features=tuple(features),
        tape_ref=tape.name,
        substrate_ref=substrate.name,
        mode=params.mode,
        design_name=design_name,
    )


def _raise_first(program: MotionProgram, violations, error_class) -> None:
    if not violations:
        return

    violation = violations[0]
    design_index = None
    if violation.feature is not None and violation.feature >= 0:
        design_index = program.features[violation.feature].design_index

    raise error_class(
        feature=design_index,
        arc_position=round(violation.arc_start, 9),
        details={
            "program_feature": violation.feature,
            "value": violation.value,
            "limit": violation.limit,
        },
    )


def plan(
    design: Design,
    tape: TapeSpec,
    substrate: SubstrateSpec,
    params: PlanParams | None = None,
    limits: RobotLimits | None = None,
) -> MotionProgram:
    """Compiles a design into a timed motion program with feed/cut events"""
    params = params or PlanParams()
    limits = limits or RobotLimits()
    units = _design_units(design, tape, substrate, params)
    program = insert_cut_events(assemble(units, tape, substrate, params, design.name), tape)
    _raise_first(program, check_workspace(program, limits), WorkspaceViolationError)
    _raise_first(program, check_joint_limits(program, limits), JointLimitViolationError)
    logger.info(
        "Planned design '%s': %i feature(s), %i steps, %.3f s (%s mode)",
        design.name,
        len(program.features),
        len(program.steps),
        program.duration,
        program.mode,
    )
    return program
