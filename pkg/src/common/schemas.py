import numpy as np
from marshmallow import fields, Schema, ValidationError, validate, post_dump

from core import settings


class Vector3(fields.Field):
    """Numpy 3-vector <-> JSON list of 3 floats"""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return [float(component) for component in value]

    def _deserialize(self, value, attr, data, **kwargs):
        try:
            vector = np.asarray(value, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ValidationError("Expected a list of 3 numbers.") from exc

        if vector.shape != (3,) or not np.all(np.isfinite(vector)):
            raise ValidationError("Expected a list of 3 finite numbers.")
        return vector


class FloatArray(fields.Field):
    """Numpy array of floats (any shape) <-> nested JSON lists"""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return np.asarray(value, dtype=float).tolist()

    def _deserialize(self, value, attr, data, **kwargs):
        try:
            array = np.asarray(value, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ValidationError("Expected numeric list.") from exc

        if not np.all(np.isfinite(array)):
            raise ValidationError("Expected finite numbers.")
        return array


class VersionedSchema(Schema):
    """Root schema of every artifact written to disk"""

    schema_version = fields.Str(
        load_default=settings.SCHEMA_VERSION,
        validate=validate.Equal(settings.SCHEMA_VERSION),
    )

    @post_dump
    def add_version(self, data, **_):
        data["schema_version"] = settings.SCHEMA_VERSION
        return data
