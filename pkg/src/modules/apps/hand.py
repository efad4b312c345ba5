import logging
from pathlib import Path

from marshmallow import Schema, fields, validate, post_load, validates_schema, ValidationError

from common.exceptions import InvalidInputError
from common.schemas import VersionedSchema
from common.utils import catalog_path, read_json, load_with
from modules.apps.models import SensorGrid, HandRegion, HandLayout, HandCommand, TouchEvent

__all__ = ["load_hand_layout", "map_to_hand_command"]
logger = logging.getLogger(__name__)
index_pair = fields.Tuple((fields.Int(), fields.Int()), required=True)


class SensorGridSchema(Schema):
    rows = fields.Int(load_default=6, validate=validate.Range(min=1))
    cols = fields.Int(load_default=6, validate=validate.Range(min=1))
    pitch = fields.Float(load_default=0.015)
    C0 = fields.Float(load_default=10e-12)
    dC_max = fields.Float(load_default=2e-12)
    F_sat = fields.Float()
    crosstalk = fields.Float(load_default=0.0)

    @post_load
    def make_grid(self, data, **_) -> SensorGrid:
        return SensorGrid(**data)


class HandRegionSchema(Schema):
    finger = fields.Int(required=True, validate=validate.Range(min=1))
    rows = index_pair
    cols = index_pair

    @validates_schema
    def validate_ranges(self, data, **_):
        for name in ("rows", "cols"):
            low, high = data[name]
            if not 0 <= low <= high:
                raise ValidationError(f"Expected 0 <= first <= last, got {data[name]}", name)

    @post_load
    def make_region(self, data, **_) -> HandRegion:
        return HandRegion(**data)


class HandLayoutSchema(VersionedSchema):
    grid = fields.Nested(SensorGridSchema, load_default=None)
    regions = fields.List(fields.Nested(HandRegionSchema), required=True)

    @post_load
    def make_layout(self, data, **_) -> HandLayout:
        return HandLayout(regions=data["regions"], grid=data["grid"] or SensorGrid())


def load_hand_layout(path: str | Path | None = None) -> HandLayout:
    """Grid and finger regions from a layout JSON (shipped hand_layout.json by default)"""
    layout = load_with(HandLayoutSchema(), read_json(path or catalog_path("hand_layout.json")))
    for region in layout.regions:
        if region.rows[1] >= layout.grid.rows or region.cols[1] >= layout.grid.cols:
            raise InvalidInputError(
                f"Region of finger {region.finger} exceeds the {layout.grid.shape} grid"
            )
    return layout


def map_to_hand_command(
    touch: TouchEvent | None, layout: HandLayout, grid: SensorGrid | None = None
) -> HandCommand | None:
    """Finger of the touched region, bend in proportion to the node's response; None if unmapped"""
    if touch is None:
        return None

    finger = layout.finger_at(touch.row, touch.col)
    if finger is None:
        logger.debug("Touch at (%i, %i) is outside every finger region", touch.row, touch.col)
        return None

    grid = grid or layout.grid
    bend = min(max(touch.dC / grid.dC_max, 0.0), 1.0)
    return HandCommand(finger=finger, bend=bend)
