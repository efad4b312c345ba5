from marshmallow import Schema, fields, validate, post_load, ValidationError

from core import settings
from common.schemas import Vector3, FloatArray, VersionedSchema
from common.enums import DesignKind, SurfaceKind, ToolpathMode, FeatureKind
from common.exceptions import BaseApplicationError
from modules.geometry.generators import gen_wave, gen_circle, gen_arc, gen_polygon
from modules.geometry.models import (
    Design,
    Point3,
    LayerStack,
    PathFeature,
    PlaneSurface,
    ConformalPatch,
    OverhangFeature,
    FeatureOverrides,
    HemisphereSurface,
)

__all__ = ["DesignSchema", "PathSpecSchema", "OverridesSchema", "path_to_spec"]

PATH_KINDS = [
    DesignKind.WAVE,
    DesignKind.CIRCLE,
    DesignKind.ARC,
    DesignKind.POLYGON,
    DesignKind.POLYLINE,
    DesignKind.PATH,
]
REQUIRED_FIELDS = {
    DesignKind.WAVE: ("wavelength", "total_length"),
    DesignKind.CIRCLE: ("diameter",),
    DesignKind.ARC: ("radius", "sweep"),
    DesignKind.POLYGON: ("vertices",),
    DesignKind.POLYLINE: ("vertices",),
    DesignKind.PATH: ("samples",),
    DesignKind.CONFORMAL: ("surface", "path"),
    DesignKind.LAYERS: ("base",),
    DesignKind.OVERHANG: ("height", "span"),
}


def _build(builder, *args, **kwargs):
    """Runs geometry builders, converting domain errors into schema validation errors"""
    try:
        return builder(*args, **kwargs)
    except BaseApplicationError as exc:
        raise ValidationError(str(exc)) from exc


def _check_required(data: dict) -> None:
    missing = [name for name in REQUIRED_FIELDS[data["kind"]] if data.get(name) is None]
    if missing:
        raise ValidationError({name: ["Missing data for required field."] for name in missing})


class OverridesSchema(Schema):
    speed = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    mode = fields.Str(validate=validate.OneOf(ToolpathMode.members()))
    compaction_force = fields.Float(validate=validate.Range(min=0))
    min_radius = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    tape = fields.Str()

    @post_load
    def make_overrides(self, data, **_) -> FeatureOverrides:
        if "mode" in data:
            data["mode"] = ToolpathMode(data["mode"])
        return FeatureOverrides(**data)


class PathSpecSchema(Schema):
    """Planar path authored by generator parameters (or raw samples for kind=path)"""

    kind = fields.Str(required=True, validate=validate.OneOf(PATH_KINDS))
    sample_step = fields.Float(
        load_default=settings.SAMPLE_STEP, validate=validate.Range(min=0, min_inclusive=False)
    )
    amplitude = fields.Float(load_default=0.0)
    wavelength = fields.Float()
    total_length = fields.Float()
    diameter = fields.Float()
    radius = fields.Float()
    sweep = fields.Float()
    start_angle = fields.Float(load_default=0.0)
    center = Vector3(load_default=None)
    vertices = fields.List(FloatArray())
    samples = FloatArray()
    corners = fields.List(fields.Int(), load_default=list)
    closed = fields.Bool(load_default=False)
    segmented = fields.Bool(load_default=False)
    fillet = fields.Bool(load_default=False)

    @post_load
    def make_path(self, data, **_) -> PathFeature:
        _check_required(data)
        step = data["sample_step"]
        center = Point3(*data["center"]) if data["center"] is not None else Point3(0.0, 0.0, 0.0)
        match data["kind"]:
            case DesignKind.WAVE:
                return _build(
                    gen_wave, data["amplitude"], data["wavelength"], data["total_length"], step
                )
            case DesignKind.CIRCLE:
                return _build(gen_circle, data["diameter"], step, center)
            case DesignKind.ARC:
                return _build(
                    gen_arc, data["radius"], data["sweep"], step, center, data["start_angle"]
                )
            case DesignKind.POLYGON | DesignKind.POLYLINE:
                closed = data["kind"] == DesignKind.POLYGON and data["closed"]
                return _build(
                    gen_polygon,
                    [tuple(vertex) for vertex in data["vertices"]],
                    closed,
                    step,
                    segmented=data["segmented"],
                    fillet=data["fillet"],
                )

        return _build(
            PathFeature,
            kind=FeatureKind.SEGMENT_CHAIN,
            samples=data["samples"],
            closed=data["closed"],
            sample_step=step,
            corners=tuple(data["corners"]),
            segmented=data["segmented"],
            fillet=data["fillet"],
        )


class SurfaceSchema(Schema):
    kind = fields.Str(required=True, validate=validate.OneOf(SurfaceKind.members()))
    normal = Vector3(load_default=None)
    offset = fields.Float(load_default=0.0)
    center = Vector3(load_default=None)
    radius = fields.Float()

    @post_load
    def make_surface(self, data, **_) -> PlaneSurface | HemisphereSurface:
        if data["kind"] == SurfaceKind.HEMISPHERE:
            if data.get("radius") is None or data["center"] is None:
                raise ValidationError("Hemisphere needs 'center' and 'radius'")
            return _build(HemisphereSurface, center=data["center"], radius=data["radius"])

        normal = data["normal"] if data["normal"] is not None else (0.0, 0.0, 1.0)
        return _build(PlaneSurface, normal=normal, offset=data["offset"])


class FeatureSpecSchema(PathSpecSchema):
    kind = fields.Str(required=True, validate=validate.OneOf(DesignKind.members()))
    overrides = fields.Nested(OverridesSchema, load_default=None)
    # conformal
    surface = fields.Nested(SurfaceSchema)
    path = fields.Nested(PathSpecSchema)
    # layers
    base = fields.Nested(PathSpecSchema)
    layer_count = fields.Int(load_default=1)
    layer_height = fields.Float(load_default=None)
    alternate_rotation = fields.Float(load_default=0.0)
    strands = fields.Int(load_default=1)
    strand_pitch = fields.Float(load_default=0.0)
    # overhang
    start = Vector3(load_default=None)
    height = fields.Float()
    span = fields.Float()
    anchor_length = fields.Float(load_default=settings.ANCHOR_LENGTH)
    landing_length = fields.Float(load_default=0.02)
    heading_angle = fields.Float(load_default=0.0)
    end_substrate = fields.Str(load_default=None)

    @post_load
    def make_path(self, data, **_) -> tuple:
        overrides = data.pop("overrides") or FeatureOverrides()
        kind = data["kind"]
        if kind in PATH_KINDS:
            return super().make_path(data), overrides

        _check_required(data)
        match kind:
            case DesignKind.CONFORMAL:
                feature = ConformalPatch(surface=data["surface"], path2d=data["path"])
            case DesignKind.LAYERS:
                feature = _build(
                    LayerStack,
                    base=data["base"],
                    layer_count=data["layer_count"],
                    layer_height=data["layer_height"] or 50e-6,
                    alternate_rotation=data["alternate_rotation"],
                    strands=data["strands"],
                    strand_pitch=data["strand_pitch"],
                )
            case _:
                start = data["start"] if data["start"] is not None else (0.0, 0.0, 0.0)
                feature = _build(
                    OverhangFeature,
                    start=Point3(*map(float, start)),
                    height=data["height"],
                    span=data["span"],
                    anchor_length=data["anchor_length"],
                    landing_length=data["landing_length"],
                    heading_angle=data["heading_angle"],
                    end_substrate=data["end_substrate"],
                )
        return feature, overrides


class DesignSchema(VersionedSchema):
    """
    Design file: {"schema_version": "1", "name": ..., "features": [{"kind": "wave", ...}]}
    All lengths in meters, angles in radians, forces in newtons, speeds in m/s.
    """

    name = fields.Str(load_default="design")
    features = fields.List(
        fields.Nested(FeatureSpecSchema), required=True, validate=validate.Length(min=1)
    )

    @post_load
    def make_design(self, data, **_) -> Design:
        features, overrides = zip(*data["features"])
        return Design(features=features, overrides=overrides, name=data["name"])


def path_to_spec(path: PathFeature) -> dict:
    """Raw (kind=path) design entry for any sampled path"""
    return {
        "kind": str(DesignKind.PATH),
        "samples": path.samples.tolist(),
        "closed": path.closed,
        "corners": list(path.corners),
        "segmented": path.segmented,
        "fillet": path.fillet,
        "sample_step": path.sample_step,
    }

