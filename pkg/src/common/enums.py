import enum
from types import MappingProxyType


class StringEnumMixin:
    __members__: MappingProxyType = NotImplemented

    @classmethod
    def members(cls) -> list[str]:
        return [str(member) for member in cls.__members__.values()]


class FeatureKind(StringEnumMixin, enum.StrEnum):
    SEGMENT_CHAIN = "segment-chain"
    ARC = "arc"
    CIRCLE = "circle"
    WAVE = "wave"


class DesignKind(StringEnumMixin, enum.StrEnum):
    """Feature kinds accepted in design JSON files"""

    WAVE = "wave"
    CIRCLE = "circle"
    ARC = "arc"
    POLYGON = "polygon"
    POLYLINE = "polyline"
    CONFORMAL = "conformal"
    LAYERS = "layers"
    OVERHANG = "overhang"
    PATH = "path"


class SurfaceKind(StringEnumMixin, enum.StrEnum):
    PLANE = "plane"
    HEMISPHERE = "hemisphere"


class ToolpathMode(StringEnumMixin, enum.StrEnum):
    CARTESIAN = "cartesian"
    COMPACTION = "compaction"


class StepEvent(StringEnumMixin, enum.StrEnum):
    NONE = "none"
    FEED_START = "feed_start"
    FEED_STOP = "feed_stop"
    CUT = "cut"
    ANCHOR_MARK = "anchor_mark"


class StepKind(StringEnumMixin, enum.StrEnum):
    TRAVEL = "travel"
    LAYING = "laying"
    DWELL = "dwell"


class RoughnessRank(enum.IntEnum):
    METAL = 1
    ACRYLIC = 2
    WOOD = 3


class WrinkleRisk(StringEnumMixin, enum.StrEnum):
    NONE = "none"
    WARN = "warn"
    FAIL = "fail"


class AnchorFailure(StringEnumMixin, enum.StrEnum):
    SHEAR = "shear"
    PEEL = "peel"


class IoSource(StringEnumMixin, enum.StrEnum):
    ROBOT = "robot"
    PCM = "pcm"


class IoKind(StringEnumMixin, enum.StrEnum):
    FEED_START = "feed_start"
    FEED_STOP = "feed_stop"
    CUT_BEGIN = "cut_begin"
    CUT_DONE = "cut_done"
    MOTION_START = "motion_start"
    MOTION_STOP = "motion_stop"


class FeedStatus(StringEnumMixin, enum.StrEnum):
    IDLE = "idle"
    FEEDING = "feeding"


class CutStatus(StringEnumMixin, enum.StrEnum):
    RETRACTED = "retracted"
    CUTTING = "cutting"
    RETURNING = "returning"
