import logging

import numpy as np

from core import settings
from common.enums import StepEvent, IoSource, IoKind, FeedStatus, CutStatus
from common.exceptions import ProtocolViolationError, InvalidInputError
from modules.geometry.paths import arc_length
from modules.planner.models import MotionProgram, MotionStep
from modules.planner.schemas import program_id
from modules.controlsync.models import (
    IoEvent,
    FeedState,
    CutState,
    LatencyModel,
    FeedRecord,
    SyncTrace,
)

__all__ = ["run_timeline", "feed_deficit"]
logger = logging.getLogger(__name__)


class PcmController:
    """
    Feed stepper and cut servo state machines of the print control module.
    Reacts to robot I/O edges once they arrive; acknowledgements back to the robot are instant.
    """

    def __init__(self, steps_per_meter: float, cycle_duration: float):
        self.steps_per_meter = steps_per_meter
        self.cycle_duration = cycle_duration
        self.feed_status = FeedStatus.IDLE
        self.cut_status = CutStatus.RETRACTED
        self.fed_length = 0.0  # exact commanded feed, steps are rounded from it
        self.steps_issued = 0
        self.events: list[IoEvent] = []
        self.feed_history = [FeedState(0.0, steps_per_meter=steps_per_meter)]
        self.cut_history = [CutState(0.0, cycle_duration=cycle_duration)]
        self._feed_since = 0.0
        self.feed_speed = 0.0

    def _violation(self, reason: str, t: float, feature: int):
        raise ProtocolViolationError(
            details={
                "reason": reason,
                "t": round(t, 9),
                "feature": feature,
                "feed": str(self.feed_status),
                "cut": str(self.cut_status),
            }
        )

    def _set_feed(self, t: float, status: FeedStatus):
        self.feed_status = status
        self.feed_history.append(
            FeedState(t, status, self.steps_issued, steps_per_meter=self.steps_per_meter)
        )

    def _set_cut(self, t: float, status: CutStatus):
        self.cut_status = status
        self.cut_history.append(CutState(t, status, cycle_duration=self.cycle_duration))

    def feed_start(self, t: float, speed: float, feature: int):
        if self.feed_status == FeedStatus.FEEDING:
            self._violation("feed_start while feeding", t, feature)
        if self.cut_status != CutStatus.RETRACTED:
            self._violation("feed_start while the blade is out", t, feature)

        self._feed_since, self.feed_speed = t, speed
        self.events.append(IoEvent(t, IoSource.PCM, IoKind.FEED_START, feature))
        self._set_feed(t, FeedStatus.FEEDING)

    def feed_stop(self, t: float, feature: int) -> int:
        """Stops the stepper and returns the whole steps dispensed since feed start"""
        if self.feed_status != FeedStatus.FEEDING:
            self._violation("feed_stop while idle", t, feature)

        before = self.steps_issued
        self.fed_length += self.feed_speed * (t - self._feed_since)
        self.steps_issued = int(round(self.fed_length * self.steps_per_meter))
        self.events.append(IoEvent(t, IoSource.PCM, IoKind.FEED_STOP, feature))
        self._set_feed(t, FeedStatus.IDLE)
        return self.steps_issued - before

    def cut(self, t: float, feature: int) -> float:
        """Runs a full blade cycle; returns the time of cut_done"""
        if self.feed_status == FeedStatus.FEEDING:
            self._violation("cut_begin while feeding", t, feature)
        if self.cut_status != CutStatus.RETRACTED:
            self._violation("cut_begin during a cut cycle", t, feature)

        done = t + self.cycle_duration
        self._set_cut(t, CutStatus.CUTTING)
        self._set_cut(t + self.cycle_duration / 2, CutStatus.RETURNING)
        self._set_cut(done, CutStatus.RETRACTED)
        self.events.append(IoEvent(done, IoSource.PCM, IoKind.CUT_DONE, feature))
        return done


def _laying_length(program: MotionProgram, feature: int) -> float:
    positions = [step.position for step in program.feature_steps(feature)]
    return arc_length(np.array(positions)) if len(positions) > 1 else 0.0


def run_timeline(
    program: MotionProgram,
    latency: LatencyModel | None = None,
    steps_per_meter: float = settings.STEPS_PER_METER,
    cycle_duration: float = settings.CUT_CYCLE_DURATION,
) -> SyncTrace:
    """
    Plays the program's I/O edges through the robot/PCM link.

    Every robot edge reaches the PCM after fixed delay + jitter. The robot holds at
    feed start until the PCM acknowledges, starts the cut only after the feed stop is
    acknowledged and leaves the cut dwell only after cut_done.
    """
    latency = latency or LatencyModel()
    if not program.steps:
        raise InvalidInputError("Program has no steps")

    rng = np.random.default_rng(latency.seed)

    def delay() -> float:
        jitter = rng.standard_normal() * latency.jitter_sigma if latency.jitter_sigma else 0.0
        return max(0.0, latency.fixed_delay + jitter)

    pcm = PcmController(steps_per_meter, cycle_duration)
    robot: list[IoEvent] = []
    feeds: list[FeedRecord] = []
    hold = 0.0
    stop_ack: float | None = None
    previous: MotionStep | None = None
    start = program.steps[0].t
    robot.append(IoEvent(start, IoSource.ROBOT, IoKind.MOTION_START))
    for step in program.steps:
        t = step.t + hold
        if step.event == StepEvent.FEED_START:
            robot.append(IoEvent(t, IoSource.ROBOT, IoKind.FEED_START, step.feature))
            arrival = t + delay()
            pcm.feed_start(arrival, step.speed, step.feature)
            hold += arrival - t
        elif step.event == StepEvent.FEED_STOP:
            robot.append(IoEvent(t, IoSource.ROBOT, IoKind.FEED_STOP, step.feature))
            stop_ack = t + delay()
            steps = pcm.feed_stop(stop_ack, step.feature)
            feeds.append(
                FeedRecord(
                    feature=step.feature,
                    steps=steps,
                    steps_per_meter=steps_per_meter,
                    traversed_length=_laying_length(program, step.feature),
                    feed_speed=pcm.feed_speed,
                )
            )
        elif step.event == StepEvent.CUT:
            # blade runs during the dwell that ends at this step
            dwell_start = previous.t + hold if previous is not None else t
            emitted = max(dwell_start, stop_ack if stop_ack is not None else dwell_start)
            robot.append(IoEvent(emitted, IoSource.ROBOT, IoKind.CUT_BEGIN, step.feature))
            done = pcm.cut(emitted + delay(), step.feature)
            stop_ack = None
            if done > t:
                hold += done - t
        previous = step

    end = program.steps[-1].t + hold
    robot.append(IoEvent(end, IoSource.ROBOT, IoKind.MOTION_STOP))
    complete = pcm.feed_status == FeedStatus.IDLE and pcm.cut_status == CutStatus.RETRACTED
    if not complete:
        logger.warning("Program %s ends with the feeder still running", program.design_name)

    order = {IoSource.ROBOT: 0, IoSource.PCM: 1}
    events = sorted(robot + pcm.events, key=lambda event: (event.t, order[event.source]))
    trace = SyncTrace(
        program_id=program_id(program),
        latency=latency,
        events=tuple(events),
        feed_history=tuple(pcm.feed_history),
        cut_history=tuple(sorted(pcm.cut_history, key=lambda state: state.t)),
        feeds=tuple(feeds),
        complete=complete,
    )
    logger.info(
        "Sync run of '%s': %i I/O event(s), %i feed(s), delay %.4g s, robot hold %.4g s",
        program.design_name,
        len(events),
        len(feeds),
        latency.fixed_delay,
        hold,
    )
    return trace


def feed_deficit(trace: SyncTrace, program: MotionProgram) -> dict[int, float]:
    """Signed over-feed (+) / under-feed (-) per program feature, meters"""
    if not trace.complete:
        raise InvalidInputError("Sync trace is incomplete: feeder was never stopped")
    if trace.program_id != program_id(program):
        raise InvalidInputError("Sync trace was produced for another program")

    fed = {record.feature: record.fed_length for record in trace.feeds}
    missing = [meta.index for meta in program.features if meta.index not in fed]
    if missing:
        raise InvalidInputError(details={"reason": "features never fed", "features": missing})

    return {
        meta.index: fed[meta.index] - _laying_length(program, meta.index)
        for meta in program.features
    }
