import dataclasses
import logging

import numpy as np

from common.exceptions import InsufficientDataError
from modules.simulator.models import PlacementOutcome
from modules.metrics.quality import PlacementMetrics, measure

__all__ = ["MetricStats", "QualityReport", "batch_stats", "quality_report"]
logger = logging.getLogger(__name__)
METRICS = tuple(
    field.name for field in dataclasses.fields(PlacementMetrics) if field.name != "feature"
)


@dataclasses.dataclass(frozen=True)
class MetricStats:
    mean: float
    std: float | None
    n: int


@dataclasses.dataclass(frozen=True)
class QualityReport:
    """Batch mean and sample standard deviation (n - 1) of every metric of one feature"""

    feature: int
    n: int
    metrics: dict[str, MetricStats]
    insufficient: bool = False

    def __getattr__(self, name: str) -> MetricStats:
        metrics = self.__dict__.get("metrics", {})
        if name in metrics:
            return metrics[name]
        raise AttributeError(name)


def _stats(values: list[float]) -> MetricStats | None:
    if not values:
        return None

    array = np.asarray(values, dtype=float)
    std = float(array.std(ddof=1)) if len(array) > 1 else None
    return MetricStats(mean=float(array.mean()), std=std, n=len(array))


def batch_stats(outcomes: list[PlacementOutcome], feature: int = 0) -> QualityReport:
    """Per-metric batch statistics; with a single outcome only means are reported"""
    if not outcomes:
        raise InsufficientDataError("Batch is empty")

    measured = [measure(outcome, feature) for outcome in outcomes]
    insufficient = len(measured) < 2
    if insufficient:
        logger.warning(
            "Batch of %i outcome(s): standard deviations need at least 2", len(measured)
        )

    metrics = {}
    for name in METRICS:
        values = [getattr(item, name) for item in measured if getattr(item, name) is not None]
        stats = _stats(values)
        if stats is not None:
            metrics[name] = stats
    return QualityReport(
        feature=feature, n=len(measured), metrics=metrics, insufficient=insufficient
    )


def quality_report(outcomes: list[PlacementOutcome]) -> list[QualityReport]:
    """Batch statistics of every feature of the outcomes"""
    if not outcomes:
        raise InsufficientDataError("Batch is empty")
    return [batch_stats(outcomes, feature) for feature in range(len(outcomes[0].placements))]
