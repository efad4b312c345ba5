import dataclasses
import logging

from core import settings
from common.enums import StepEvent, StepKind
from common.exceptions import InvalidInputError
from modules.mechanics.models import TapeSpec
from modules.planner.models import MotionProgram, MotionStep

__all__ = ["insert_cut_events"]
logger = logging.getLogger(__name__)
FEED_EVENTS = (StepEvent.FEED_START, StepEvent.FEED_STOP, StepEvent.CUT)


def insert_cut_events(program: MotionProgram, tape: TapeSpec) -> MotionProgram:
    """
    Marks feed_start on the first and feed_stop on the last laying step of every feature,
    then inserts a cut dwell (zero tool velocity) right after feed_stop.
    Steps following a cut are shifted by the dwell duration.
    """
    if any(step.event in FEED_EVENTS for step in program.steps):
        raise InvalidInputError("Program already carries feed/cut events")

    first_laying: dict[int, int] = {}
    last_laying: dict[int, int] = {}
    for index, step in enumerate(program.steps):
        if step.kind == StepKind.LAYING:
            first_laying.setdefault(step.feature, index)
            last_laying[step.feature] = index

    starts = {index: feature for feature, index in first_laying.items()}
    stops = {index: feature for feature, index in last_laying.items()}
    shift = 0.0
    steps: list[MotionStep] = []
    for index, step in enumerate(program.steps):
        event = step.event
        if index in starts:
            event = StepEvent.FEED_START
        elif index in stops:
            event = StepEvent.FEED_STOP

        step = dataclasses.replace(step, t=step.t + shift, event=event)
        steps.append(step)
        if index in stops:
            steps.append(
                MotionStep(
                    t=step.t + settings.CUT_DWELL,
                    pose=step.pose,
                    speed=0.0,
                    compaction_setpoint=step.compaction_setpoint,
                    event=StepEvent.CUT,
                    kind=StepKind.DWELL,
                    feature=step.feature,
                )
            )
            shift += settings.CUT_DWELL

    logger.debug("Inserted %i cut event(s) for tape %s", len(stops), tape.name)
    return dataclasses.replace(program, steps=tuple(steps), tape_ref=program.tape_ref or tape.name)
