import dataclasses

from core import settings
from common.enums import IoSource, IoKind, FeedStatus, CutStatus
from common.exceptions import InvalidParameterError

__all__ = ["IoEvent", "FeedState", "CutState", "LatencyModel", "FeedRecord", "SyncTrace"]


@dataclasses.dataclass(frozen=True)
class IoEvent:
    t: float
    source: IoSource
    kind: IoKind
    feature: int = -1

    def __post_init__(self):
        object.__setattr__(self, "source", IoSource(self.source))
        object.__setattr__(self, "kind", IoKind(self.kind))
        if self.t < 0:
            raise InvalidParameterError(f"I/O event time must be >= 0: {self.t}")


@dataclasses.dataclass(frozen=True)
class FeedState:
    """Feed stepper snapshot taken at time `t`"""

    t: float
    state: FeedStatus = FeedStatus.IDLE
    steps_issued: int = 0
    steps_per_meter: float = settings.STEPS_PER_METER

    def __post_init__(self):
        object.__setattr__(self, "state", FeedStatus(self.state))
        if self.steps_issued < 0:
            raise InvalidParameterError("steps_issued must be >= 0")
        if self.steps_per_meter <= 0:
            raise InvalidParameterError("steps_per_meter must be positive")

    @property
    def fed_length(self) -> float:
        return self.steps_issued / self.steps_per_meter


@dataclasses.dataclass(frozen=True)
class CutState:
    t: float
    state: CutStatus = CutStatus.RETRACTED
    cycle_duration: float = settings.CUT_CYCLE_DURATION

    def __post_init__(self):
        object.__setattr__(self, "state", CutStatus(self.state))
        if self.cycle_duration <= 0:
            raise InvalidParameterError("Cut cycle duration must be positive")


@dataclasses.dataclass(frozen=True)
class LatencyModel:
    """Robot -> PCM I/O edge latency: fixed delay plus gaussian jitter (clamped at 0)"""

    fixed_delay: float = 0.0
    jitter_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.fixed_delay < 0:
            raise InvalidParameterError(f"fixed_delay must be >= 0: {self.fixed_delay}")
        if self.jitter_sigma < 0:
            raise InvalidParameterError(f"jitter_sigma must be >= 0: {self.jitter_sigma}")


@dataclasses.dataclass(frozen=True)
class FeedRecord:
    """Tape dispensed for one feature between the PCM's feed start and feed stop"""

    feature: int
    steps: int
    steps_per_meter: float
    traversed_length: float
    feed_speed: float

    @property
    def fed_length(self) -> float:
        return self.steps / self.steps_per_meter

    @property
    def deficit(self) -> float:
        return self.fed_length - self.traversed_length


@dataclasses.dataclass(frozen=True, eq=False)
class SyncTrace:
    program_id: str
    latency: LatencyModel
    events: tuple[IoEvent, ...]
    feed_history: tuple[FeedState, ...]
    cut_history: tuple[CutState, ...]
    feeds: tuple[FeedRecord, ...]
    complete: bool = True

    def __post_init__(self):
        for name in ("events", "feed_history", "cut_history", "feeds"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def steps_issued(self) -> int:
        return self.feed_history[-1].steps_issued if self.feed_history else 0

    @property
    def duration(self) -> float:
        return self.events[-1].t if self.events else 0.0
