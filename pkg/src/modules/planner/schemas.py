from marshmallow import Schema, fields, validate, post_load

from common.enums import StepEvent, StepKind, ToolpathMode
from common.schemas import Vector3, VersionedSchema
from common.utils import canonical_json, hash_string
from modules.geometry.models import ToolPose
from modules.planner.models import MotionProgram, MotionStep, FeatureMeta, OverhangInfo

__all__ = ["MotionProgramSchema", "dump_program", "program_id"]


class MotionStepSchema(Schema):
    """One waypoint: seconds, meters, m/s, newtons"""

    t = fields.Float(required=True)
    position = Vector3(required=True, attribute="pose.position")
    approach = Vector3(required=True, attribute="pose.approach")
    heading = Vector3(required=True, attribute="pose.heading")
    speed = fields.Float(required=True, validate=validate.Range(min=0))
    compaction_setpoint = fields.Float(load_default=0.0, validate=validate.Range(min=0))
    event = fields.Str(load_default=StepEvent.NONE, validate=validate.OneOf(StepEvent.members()))
    kind = fields.Str(required=True, validate=validate.OneOf(StepKind.members()))
    feature = fields.Int(load_default=-1)

    @post_load
    def make_step(self, data, **_) -> MotionStep:
        pose = data.pop("pose")
        return MotionStep(
            pose=ToolPose(pose["position"], pose["approach"], pose["heading"]),
            event=StepEvent(data.pop("event")),
            kind=StepKind(data.pop("kind")),
            **data,
        )


class OverhangInfoSchema(Schema):
    alpha = fields.Float(required=True)
    height = fields.Float(required=True)
    span_length = fields.Float(required=True)
    anchor_length = fields.Float(required=True)
    landing_length = fields.Float(required=True)
    anchor_end = fields.Float(required=True)
    span_end = fields.Float(required=True)
    end_substrate = fields.Str(allow_none=True, load_default=None)

    @post_load
    def make_info(self, data, **_) -> OverhangInfo:
        return OverhangInfo(**data)


class FeatureMetaSchema(Schema):
    index = fields.Int(required=True)
    design_index = fields.Int(required=True)
    kind = fields.Str(required=True)
    planned_length = fields.Float(required=True)
    tape = fields.Str(required=True)
    width = fields.Float(required=True)
    speed = fields.Float(required=True)
    mode = fields.Str(required=True, validate=validate.OneOf(ToolpathMode.members()))
    compaction_setpoint = fields.Float(required=True)
    straight = fields.Bool(required=True)
    closed = fields.Bool(required=True)
    layer = fields.Int(load_default=0)
    overhang = fields.Nested(OverhangInfoSchema, allow_none=True, load_default=None)

    @post_load
    def make_meta(self, data, **_) -> FeatureMeta:
        data["mode"] = ToolpathMode(data["mode"])
        return FeatureMeta(**data)


class MotionProgramSchema(VersionedSchema):
    design_name = fields.Str(load_default="design")
    tape_ref = fields.Str(required=True)
    substrate_ref = fields.Str(required=True)
    mode = fields.Str(required=True, validate=validate.OneOf(ToolpathMode.members()))
    features = fields.List(fields.Nested(FeatureMetaSchema), required=True)
    steps = fields.List(fields.Nested(MotionStepSchema), required=True)

    @post_load
    def make_program(self, data, **_) -> MotionProgram:
        data.pop("schema_version", None)
        data["mode"] = ToolpathMode(data["mode"])
        return MotionProgram(**data)


def dump_program(program: MotionProgram) -> dict:
    return MotionProgramSchema().dump(program)


def program_id(program: MotionProgram) -> str:
    """Content hash of the serialized program"""
    return hash_string(canonical_json(dump_program(program)))
