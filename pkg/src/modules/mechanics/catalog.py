import logging
from functools import lru_cache

from marshmallow import Schema, fields, validate, post_load, EXCLUDE

from core import settings
from common.schemas import VersionedSchema
from common.exceptions import NotFoundError, ImproperlyConfiguredError, InvalidInputError
from common.utils import catalog_path, read_json, load_with
from modules.mechanics.models import TapeSpec, SubstrateSpec

__all__ = [
    "TapeSchema",
    "SubstrateSchema",
    "load_tapes",
    "load_substrates",
    "get_tape",
    "get_substrate",
]
logger = logging.getLogger(__name__)
positive = validate.Range(min=0, min_inclusive=False)


class TapeSchema(Schema):
    name = fields.Str(required=True)
    material = fields.Str(load_default="copper")
    width = fields.Float(required=True, validate=positive)
    thickness = fields.Float(required=True, validate=positive)
    elastic_modulus = fields.Float(required=True, validate=positive)
    resistivity = fields.Float(required=True, validate=positive)
    peel_strength = fields.Float(required=True, validate=positive)

    @post_load
    def make_tape(self, data, **_) -> TapeSpec:
        return TapeSpec(**data)


class SubstrateSchema(Schema):
    name = fields.Str(required=True)
    mu = fields.Float(required=True, validate=positive)
    peel_force_per_width = fields.Float(required=True, validate=positive)
    roughness_rank = fields.Int(required=True, validate=validate.Range(min=1))
    roughness_factor = fields.Float(load_default=1.0, validate=positive)

    @post_load
    def make_substrate(self, data, **_) -> SubstrateSpec:
        return SubstrateSpec(**data)


class TapeCatalogSchema(VersionedSchema):
    class Meta:
        unknown = EXCLUDE

    tapes = fields.List(fields.Nested(TapeSchema), required=True)


class SubstrateCatalogSchema(VersionedSchema):
    class Meta:
        unknown = EXCLUDE

    substrates = fields.List(fields.Nested(SubstrateSchema), required=True)


def _check_substrate_ordering(substrates: list[SubstrateSpec]) -> None:
    """Rougher substrates must adhere worse and scatter more"""
    ordered = sorted(substrates, key=lambda substrate: substrate.roughness_rank)
    for smoother, rougher in zip(ordered, ordered[1:]):
        if rougher.peel_force_per_width >= smoother.peel_force_per_width:
            raise ImproperlyConfiguredError(
                f"Substrate '{rougher.name}' is rougher than '{smoother.name}' "
                f"but does not have a lower peel force per width"
            )
        if rougher.roughness_factor < smoother.roughness_factor:
            raise ImproperlyConfiguredError(
                f"Substrate '{rougher.name}' has a smaller roughness factor than '{smoother.name}'"
            )


def _load(filename: str, schema: VersionedSchema, key: str) -> dict:
    path = catalog_path(filename)
    try:
        items = load_with(schema, read_json(path))[key]
    except InvalidInputError as exc:
        raise ImproperlyConfiguredError(details={"catalog": str(path), "errors": exc.details})

    catalog = {item.name: item for item in items}
    if len(catalog) != len(items):
        raise ImproperlyConfiguredError(f"Duplicate names in catalog {path}")

    logger.debug("Loaded %i items from %s", len(catalog), path)
    return catalog


@lru_cache
def _tapes(config_dir: str) -> dict[str, TapeSpec]:
    return _load("tapes.json", TapeCatalogSchema(), "tapes")


@lru_cache
def _substrates(config_dir: str) -> dict[str, SubstrateSpec]:
    substrates = _load("substrates.json", SubstrateCatalogSchema(), "substrates")
    _check_substrate_ordering(list(substrates.values()))
    return substrates


def load_tapes() -> dict[str, TapeSpec]:
    return dict(_tapes(str(settings.CONFIG_DIR)))


def load_substrates() -> dict[str, SubstrateSpec]:
    return dict(_substrates(str(settings.CONFIG_DIR)))


def get_tape(name: str | None = None) -> TapeSpec:
    name = name or settings.DEFAULT_TAPE
    try:
        return load_tapes()[name]
    except KeyError:
        raise NotFoundError(f"Unknown tape '{name}'. Known: {sorted(load_tapes())}")


def get_substrate(name: str | None = None) -> SubstrateSpec:
    name = name or settings.DEFAULT_SUBSTRATE
    try:
        return load_substrates()[name]
    except KeyError:
        raise NotFoundError(f"Unknown substrate '{name}'. Known: {sorted(load_substrates())}")
