from marshmallow import Schema, fields, post_load, validate, EXCLUDE

from common.enums import IoSource, IoKind, FeedStatus, CutStatus
from common.schemas import VersionedSchema
from modules.controlsync.models import (
    IoEvent,
    FeedState,
    CutState,
    LatencyModel,
    FeedRecord,
    SyncTrace,
)

__all__ = ["LatencyModelSchema", "SyncTraceSchema", "dump_trace"]
non_negative = validate.Range(min=0)


class LatencyModelSchema(Schema):
    fixed_delay = fields.Float(load_default=0.0, validate=non_negative)
    jitter_sigma = fields.Float(load_default=0.0, validate=non_negative)
    seed = fields.Int(load_default=0, validate=non_negative)

    @post_load
    def make_latency(self, data, **_) -> LatencyModel:
        return LatencyModel(**data)


class IoEventSchema(Schema):
    t = fields.Float(required=True, validate=non_negative)
    source = fields.Str(required=True, validate=validate.OneOf(IoSource.members()))
    kind = fields.Str(required=True, validate=validate.OneOf(IoKind.members()))
    feature = fields.Int(load_default=-1)

    @post_load
    def make_event(self, data, **_) -> IoEvent:
        return IoEvent(**data)


class FeedStateSchema(Schema):
    t = fields.Float(required=True)
    state = fields.Str(required=True, validate=validate.OneOf(FeedStatus.members()))
    steps_issued = fields.Int(required=True, validate=non_negative)
    steps_per_meter = fields.Float(required=True)

    @post_load
    def make_state(self, data, **_) -> FeedState:
        return FeedState(**data)


class CutStateSchema(Schema):
    t = fields.Float(required=True)
    state = fields.Str(required=True, validate=validate.OneOf(CutStatus.members()))
    cycle_duration = fields.Float(required=True)

    @post_load
    def make_state(self, data, **_) -> CutState:
        return CutState(**data)


class FeedRecordSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    feature = fields.Int(required=True)
    steps = fields.Int(required=True)
    steps_per_meter = fields.Float(required=True)
    traversed_length = fields.Float(required=True)
    feed_speed = fields.Float(required=True)
    fed_length = fields.Float(dump_only=True)
    deficit = fields.Float(dump_only=True)

    @post_load
    def make_record(self, data, **_) -> FeedRecord:
        return FeedRecord(**data)


class SyncTraceSchema(VersionedSchema):
    class Meta:
        unknown = EXCLUDE

    program_id = fields.Str(required=True)
    complete = fields.Bool(required=True)
    latency = fields.Nested(LatencyModelSchema, required=True)
    events = fields.List(fields.Nested(IoEventSchema), required=True)
    feed_history = fields.List(fields.Nested(FeedStateSchema), required=True)
    cut_history = fields.List(fields.Nested(CutStateSchema), required=True)
    feeds = fields.List(fields.Nested(FeedRecordSchema), required=True)

    @post_load
    def make_trace(self, data, **_) -> SyncTrace:
        data.pop("schema_version", None)
        return SyncTrace(**data)


def dump_trace(trace: SyncTrace) -> dict:
    return SyncTraceSchema().dump(trace)
