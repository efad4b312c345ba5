import dataclasses
import json

import pytest

from common.enums import StepEvent, StepKind, IoKind, IoSource, CutStatus, FeedStatus
from common.exceptions import ProtocolViolationError, InvalidInputError
from common.utils import load_with
from modules.controlsync import (
    LatencyModel,
    SyncTraceSchema,
    dump_trace,
    feed_deficit,
    run_timeline,
)
from modules.controlsync.timeline import PcmController
from modules.geometry.generators import gen_polygon
from modules.geometry.models import Design
from modules.planner import PlanParams, plan
from tests.helpers import line_design

QUANTUM = 1 / 160_000
SPEEDS = (0.010, 0.025, 0.050, 0.075, 0.100)
DELAYS = (0.0, 0.005, 0.02, 0.05, 0.1)


def drop_events(program, *events: StepEvent, drop_dwell: bool = False):
    steps = [
        dataclasses.replace(step, event=StepEvent.NONE) if step.event in events else step
        for step in program.steps
        if not (drop_dwell and step.kind == StepKind.DWELL)
    ]
    return dataclasses.replace(program, steps=tuple(steps))


class TestRunTimeline:
    def test_zero_latency__exact_feed(self, line_program):
        trace = run_timeline(line_program)
        assert trace.complete
        (deficit,) = feed_deficit(trace, line_program).values()
        assert abs(deficit) <= QUANTUM / 2 + 1e-12

    @pytest.mark.parametrize("speed", SPEEDS)
    @pytest.mark.parametrize("delay", DELAYS)
    def test_over_feed__speed_times_delay(self, tape, substrate, speed, delay):
        program = plan(line_design(0.15), tape, substrate, PlanParams(speed=speed))
        trace = run_timeline(program, LatencyModel(fixed_delay=delay))
        assert feed_deficit(trace, program)[0] == pytest.approx(speed * delay, abs=QUANTUM)

    def test_deficit__linear_in_delay(self, line_program):
        deficits = [
            feed_deficit(run_timeline(line_program, LatencyModel(fixed_delay=delay)), line_program)
            for delay in (0.04, 0.08)
        ]
        assert deficits[1][0] - deficits[0][0] == pytest.approx(0.025 * 0.04, abs=2 * QUANTUM)

    def test_robot_holds_for_acknowledgements(self, line_program):
        delay = 0.05
        trace = run_timeline(line_program, LatencyModel(fixed_delay=delay))
        assert trace.duration == pytest.approx(line_program.duration + 3 * delay)

    def test_events__causal(self, line_program):
        trace = run_timeline(line_program, LatencyModel(fixed_delay=0.03))
        times = [event.t for event in trace.events]
        assert times == sorted(times)

        def first(source, kind):
            return next(
                event.t for event in trace.events if event.source == source and event.kind == kind
            )

        assert first(IoSource.ROBOT, IoKind.FEED_START) < first(IoSource.PCM, IoKind.FEED_START)
        assert first(IoSource.ROBOT, IoKind.FEED_STOP) < first(IoSource.PCM, IoKind.FEED_STOP)
        assert first(IoSource.PCM, IoKind.FEED_STOP) <= first(IoSource.ROBOT, IoKind.CUT_BEGIN)
        assert first(IoSource.ROBOT, IoKind.CUT_BEGIN) < first(IoSource.PCM, IoKind.CUT_DONE)
        assert trace.events[0].kind == IoKind.MOTION_START
        assert trace.events[-1].kind == IoKind.MOTION_STOP

    def test_cut_cycle_states(self, line_program):
        trace = run_timeline(line_program)
        states = [state.state for state in trace.cut_history]
        assert states == [
            CutStatus.RETRACTED,
            CutStatus.CUTTING,
            CutStatus.RETURNING,
            CutStatus.RETRACTED,
        ]
        assert trace.feed_history[-1].state == FeedStatus.IDLE

    def test_steps_conserved(self, tape, substrate):
        rectangle = gen_polygon(
            [(0.0, 0.0), (0.2, 0.0), (0.2, 0.1), (0.0, 0.1)], closed=True, segmented=True
        )
        program = plan(Design(features=(rectangle,)), tape, substrate)
        trace = run_timeline(program, LatencyModel(fixed_delay=0.01))
        assert len(trace.feeds) == 4
        assert trace.steps_issued == sum(record.steps for record in trace.feeds)
        assert trace.feed_history[-1].fed_length == pytest.approx(
            sum(record.fed_length for record in trace.feeds)
        )
        for deficit in feed_deficit(trace, program).values():
            assert deficit == pytest.approx(0.025 * 0.01, abs=QUANTUM)

    def test_jitter__seeded(self, line_program):
        latency = LatencyModel(fixed_delay=0.02, jitter_sigma=0.005, seed=11)
        first = run_timeline(line_program, latency)
        second = run_timeline(line_program, latency)
        assert [event.t for event in first.events] == [event.t for event in second.events]
        assert feed_deficit(first, line_program)[0] > 0

    def test_missing_feed_stop__protocol_violation(self, line_program):
        program = drop_events(line_program, StepEvent.FEED_STOP)
        with pytest.raises(ProtocolViolationError) as exc_info:
            run_timeline(program)

        error = exc_info.value
        assert error.exit_code == 5
        assert error.details["reason"] == "cut_begin while feeding"

    def test_feeder_left_running__incomplete(self, line_program):
        program = drop_events(line_program, StepEvent.FEED_STOP, StepEvent.CUT, drop_dwell=True)
        trace = run_timeline(program)
        assert not trace.complete
        with pytest.raises(InvalidInputError):
            feed_deficit(trace, program)

    def test_other_program__fail(self, line_program, tape, substrate):
        other = plan(line_design(0.1), tape, substrate)
        with pytest.raises(InvalidInputError):
            feed_deficit(run_timeline(line_program), other)

    def test_trace_schema__loads_dumped(self, line_program):
        trace = run_timeline(line_program, LatencyModel(fixed_delay=0.02))
        data = json.loads(json.dumps(dump_trace(trace)))
        assert data["feeds"][0]["deficit"] == pytest.approx(0.025 * 0.02, abs=QUANTUM)

        loaded = load_with(SyncTraceSchema(), data)
        assert loaded.program_id == trace.program_id
        assert loaded.feeds == trace.feeds
        assert [event.kind for event in loaded.events] == [event.kind for event in trace.events]


class TestPcmController:
    @pytest.fixture
    def pcm(self) -> PcmController:
        return PcmController(steps_per_meter=160_000, cycle_duration=1.0)

    def test_feed_cycle(self, pcm):
        pcm.feed_start(0.0, 0.025, 0)
        assert pcm.feed_stop(2.0, 0) == 8000
        assert pcm.cut(2.0, 0) == pytest.approx(3.0)
        assert pcm.cut_status == CutStatus.RETRACTED

    def test_double_feed_start__violation(self, pcm):
        pcm.feed_start(0.0, 0.025, 0)
        with pytest.raises(ProtocolViolationError) as exc_info:
            pcm.feed_start(1.0, 0.025, 0)
        assert exc_info.value.details["feed"] == "feeding"

    def test_feed_stop_while_idle__violation(self, pcm):
        with pytest.raises(ProtocolViolationError):
            pcm.feed_stop(1.0, 0)

    def test_cut_while_feeding__violation(self, pcm):
        pcm.feed_start(0.0, 0.025, 0)
        with pytest.raises(ProtocolViolationError):
            pcm.cut(1.0, 0)

    def test_feed_with_blade_out__violation(self, pcm):
        pcm.cut_status = CutStatus.CUTTING
        with pytest.raises(ProtocolViolationError) as exc_info:
            pcm.feed_start(0.0, 0.025, 0)
        assert exc_info.value.details["reason"] == "feed_start while the blade is out"

    def test_cut_during_cycle__violation(self, pcm):
        pcm.cut_status = CutStatus.RETURNING
        with pytest.raises(ProtocolViolationError):
            pcm.cut(0.0, 0)
