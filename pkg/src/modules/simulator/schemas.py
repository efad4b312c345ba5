from marshmallow import Schema, fields, post_load, validate

from common.schemas import FloatArray, VersionedSchema
from common.utils import load_with
from modules.simulator.models import FeaturePlacement, PlacementOutcome

__all__ = ["PlacementOutcomeSchema", "dump_outcomes", "load_outcomes"]


class FeaturePlacementSchema(Schema):
    feature = fields.Int(required=True)
    centerline = FloatArray(required=True)
    lateral_deviation = FloatArray(required=True)
    width_profile = FloatArray(required=True)
    end_cut_offsets = fields.Tuple((fields.Float(), fields.Float()), required=True)
    nominal_width = fields.Float(required=True, validate=validate.Range(min=0, min_inclusive=False))
    planned_length = fields.Float(required=True)
    straight = fields.Bool(load_default=False)
    closed = fields.Bool(load_default=False)
    speed = fields.Float(required=True)
    kind = fields.Str(required=True)
    layer = fields.Int(load_default=0)

    @post_load
    def make_placement(self, data, **_) -> FeaturePlacement:
        return FeaturePlacement(**data)


class PlacementOutcomeSchema(VersionedSchema):
    program_id = fields.Str(required=True)
    seed = fields.Int(required=True)
    tape_ref = fields.Str(required=True)
    substrate_ref = fields.Str(required=True)
    noise_profile = fields.Str(load_default="custom")
    calibration_version = fields.Str(allow_none=True, load_default=None)
    feasibility_flags = fields.List(fields.Str(), load_default=list)
    placements = fields.List(fields.Nested(FeaturePlacementSchema), required=True)

    @post_load
    def make_outcome(self, data, **_) -> PlacementOutcome:
        data.pop("schema_version", None)
        return PlacementOutcome(**data)


def dump_outcomes(outcomes: list[PlacementOutcome]) -> list[dict]:
    return PlacementOutcomeSchema(many=True).dump(outcomes)


def load_outcomes(data: list[dict] | dict) -> list[PlacementOutcome]:
    """Accepts a single outcome or a list of them"""
    if isinstance(data, dict):
        data = [data]
    return load_with(PlacementOutcomeSchema(many=True), data)
