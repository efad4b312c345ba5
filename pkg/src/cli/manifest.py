import dataclasses
import datetime
import logging
from pathlib import Path

import numpy as np
from marshmallow import fields

from core import settings
from common.schemas import VersionedSchema
from common.utils import canonical_json, hash_string, utcnow, write_json

__all__ = ["RunManifest", "build_manifest", "write_manifest", "manifest_path"]
logger = logging.getLogger(__name__)
CATALOG_FILES = ("tapes.json", "substrates.json", "noise.json", "hand_layout.json")


@dataclasses.dataclass(frozen=True)
class RunManifest:
    command: str
    inputs: tuple[str, ...]
    output: str
    config_hash: str
    seed: int | None
    tool_versions: dict[str, str]
    started_at: datetime.datetime
    finished_at: datetime.datetime


class RunManifestSchema(VersionedSchema):
    command = fields.Str(required=True)
    inputs = fields.List(fields.Str(), required=True)
    output = fields.Str(required=True)
    config_hash = fields.Str(required=True)
    seed = fields.Int(allow_none=True)
    tool_versions = fields.Dict(keys=fields.Str(), values=fields.Str())
    started_at = fields.DateTime(required=True)
    finished_at = fields.DateTime(required=True)


def config_hash(command: str, options: dict) -> str:
    """Hash over the command options, tunables and the catalog files in use"""
    catalogs = {}
    for filename in CATALOG_FILES:
        path = Path(settings.CONFIG_DIR) / filename
        catalogs[filename] = path.read_text() if path.is_file() else None

    tunables = {
        name: getattr(settings, name)
        for name in (
            "SAMPLE_STEP",
            "MIN_RADIUS",
            "LEAD_IN",
            "CUT_DWELL",
            "RETRACT_HEIGHT",
            "TRAVEL_SPEED",
            "STEPS_PER_METER",
            "CUT_CYCLE_DURATION",
            "SVG_DEVIATION_SCALE",
        )
    }
    source = {"command": command, "options": options, "tunables": tunables, "catalogs": catalogs}
    return hash_string(canonical_json(source))


def build_manifest(
    command: str,
    inputs: list[str],
    output: str,
    options: dict,
    started_at: datetime.datetime,
    seed: int | None = None,
) -> RunManifest:
    return RunManifest(
        command=command,
        inputs=tuple(str(path) for path in inputs),
        output=str(output),
        config_hash=config_hash(command, options),
        seed=seed,
        tool_versions={
            "tapeslicer": settings.TOOL_VERSION,
            "schema": settings.SCHEMA_VERSION,
            "numpy": np.__version__,
        },
        started_at=started_at,
        finished_at=utcnow(),
    )


def manifest_path(output: str | Path) -> Path:
    output = Path(output)
    return output.with_name(f"{output.name}.manifest.json")


def write_manifest(manifest: RunManifest) -> Path:
    path = manifest_path(manifest.output)
    write_json(path, RunManifestSchema().dump(manifest))
    logger.debug("Run manifest written to %s", path)
    return path
