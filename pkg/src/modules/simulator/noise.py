import logging
from pathlib import Path

from marshmallow import Schema, fields, validate, post_load, EXCLUDE

from core import settings
from common.schemas import VersionedSchema
from common.exceptions import NotFoundError, InvalidInputError, ImproperlyConfiguredError
from common.utils import catalog_path, read_json, load_with
from modules.simulator.models import NoiseModel

__all__ = ["NoiseModelSchema", "load_noise", "noise_profiles"]
logger = logging.getLogger(__name__)
non_negative = validate.Range(min=0)


class NoiseModelSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    cut_irregularity_sigma = fields.Float(required=True, validate=non_negative)
    repeatability_sigma = fields.Float(required=True, validate=non_negative)
    lateral_walk_sigma = fields.Float(required=True, validate=non_negative)
    accel_overshoot_gain = fields.Float(required=True, validate=non_negative)
    width_spread_gain = fields.Float(required=True, validate=non_negative)
    spur_width_fraction = fields.Tuple(
        (fields.Float(), fields.Float()), load_default=(0.25, 0.30)
    )
    seed = fields.Int(load_default=0, validate=validate.Range(min=0, max=2**64 - 1))
    name = fields.Str(load_default="custom")
    calibration_version = fields.Str(allow_none=True, load_default=None)

    @post_load
    def make_noise(self, data, **_) -> NoiseModel:
        return NoiseModel(**data)


class NoiseCatalogSchema(VersionedSchema):
    class Meta:
        unknown = EXCLUDE

    calibration_version = fields.Str(required=True)
    profiles = fields.Dict(keys=fields.Str(), values=fields.Dict(), required=True)


def noise_profiles() -> tuple[dict[str, dict], str]:
    """Raw profiles from the versioned noise catalog and its calibration version"""
    path = catalog_path("noise.json")
    try:
        catalog = load_with(NoiseCatalogSchema(), read_json(path))
    except InvalidInputError as exc:
        raise ImproperlyConfiguredError(details={"catalog": str(path), "errors": exc.details})
    return catalog["profiles"], catalog["calibration_version"]


def load_noise(profile: str | Path = settings.DEFAULT_NOISE_PROFILE, seed: int = 0) -> NoiseModel:
    """Noise model by catalog profile name ('default', 'zero') or by a JSON file path"""
    profiles, version = noise_profiles()
    if str(profile) in profiles:
        data = profiles[str(profile)] | {"name": str(profile), "calibration_version": version}
    elif Path(profile).is_file():
        data = read_json(profile)
        data.setdefault("name", Path(profile).stem)
    else:
        raise NotFoundError(f"Unknown noise profile '{profile}'. Known: {sorted(profiles)}")

    noise = load_with(NoiseModelSchema(), data | {"seed": seed})
    logger.debug("Noise profile %s (calibration %s), seed %i", noise.name, version, seed)
    return noise
