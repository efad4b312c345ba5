import datetime
import hashlib
import json
import logging
from pathlib import Path
from typing import Any

from marshmallow import Schema, ValidationError

from core import settings
from common.statuses import ErrorCode
from common.exceptions import BaseApplicationError, InvalidInputError, ImproperlyConfiguredError

logger = logging.getLogger(__name__)


def log_message(exc, error_data, level=logging.ERROR):
    """
    Helps to log caught errors by exception handler
    """
    error_details = {
        "error": error_data.get("error", "Unbound exception"),
        "details": error_data.get("details", str(exc)),
    }
    message = "{exc.__class__.__name__} '{error}': [{details}]".format(exc=exc, **error_details)
    logger.log(level, message, exc_info=(level == logging.ERROR))


def error_payload(exc: Exception) -> tuple[dict, int]:
    """
    Returns machine-readable payload and exit code for any given exception.
    Payload will be formatted by our format: {"status": "CODE", "error": "text", "details": ...}
    """
    error_message = "Something went wrong!"
    error_details = f"Raised Error: {exc.__class__.__name__}"
    error_code = ErrorCode.INTERNAL_ERROR
    exit_code = 1
    if isinstance(exc, BaseApplicationError):
        error_message = exc.message
        error_details = exc.details
        error_code = exc.error_code
        exit_code = exc.exit_code

    payload = {"status": str(error_code), "error": error_message, "details": error_details}
    log_level = logging.ERROR if exit_code == 1 else logging.WARNING
    log_message(exc, payload, log_level)
    return payload, exit_code


def hash_string(source_string: str) -> str:
    """
    Stable sha256 hex digest of given string

    >>> hash_string('127.0.0.1')
    '12ca17b49af2289436f303e0166030a21e525d266e209267433801a8fd4071a0'
    """
    return hashlib.sha256(source_string.encode()).hexdigest()


def canonical_json(data: Any) -> str:
    """Serializes data with sorted keys and fixed separators (byte-stable output)"""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), allow_nan=False)


def write_json(path: str | Path, data: Any) -> None:
    Path(path).write_text(json.dumps(data, sort_keys=True, indent=1, allow_nan=False) + "\n")


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"Couldn't read JSON from {path}: {exc}") from exc


def load_with(schema: Schema, data: Any) -> Any:
    """Loads data by marshmallow schema, converting validation errors to our error format"""
    try:
        return schema.load(data)
    except ValidationError as exc:
        details = {"schema": schema.__class__.__name__, "errors": exc.messages}
        raise InvalidInputError(details=details) from exc


def utcnow() -> datetime.datetime:
    """Just simple wrapper for deprecated datetime.utcnow"""
    return datetime.datetime.now(datetime.UTC)


def catalog_path(filename: str) -> Path:
    """Path of a shipped catalog file (the directory is overridable by TAPESLICER_CONFIG_DIR)"""
    path = Path(settings.CONFIG_DIR) / filename
    if not path.is_file():
        raise ImproperlyConfiguredError(f"Catalog file {path} not found")
    return path
