from marshmallow import Schema, fields

from common.schemas import VersionedSchema
from modules.metrics.stats import QualityReport

__all__ = ["QualityReportSchema", "dump_reports"]


class MetricStatsSchema(Schema):
    mean = fields.Float(required=True)
    std = fields.Float(allow_none=True)
    n = fields.Int(required=True)


class QualityReportSchema(Schema):
    feature = fields.Int(required=True)
    n = fields.Int(required=True)
    insufficient = fields.Bool(required=True)
    metrics = fields.Dict(keys=fields.Str(), values=fields.Nested(MetricStatsSchema))


class QualityReportsSchema(VersionedSchema):
    reports = fields.List(fields.Nested(QualityReportSchema), required=True)


def dump_reports(reports: list[QualityReport]) -> dict:
    return QualityReportsSchema().dump({"reports": reports})
