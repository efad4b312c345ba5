import json

import pytest

from common.exceptions import InsufficientDataError
from modules.metrics import batch_stats, dump_reports, quality_report
from tests.helpers import make_outcome, make_placement, straight_centerline


def line_outcome(length: float, seed: int = 0):
    return make_outcome(
        make_placement(straight_centerline(length), planned_length=0.15), seed=seed
    )


class TestBatchStats:
    def test_mean_and_sample_std(self):
        report = batch_stats([line_outcome(0.149, 0), line_outcome(0.151, 1)])
        assert report.n == 2
        assert not report.insufficient
        assert report.effective_length.mean == pytest.approx(0.15)
        assert report.effective_length.std == pytest.approx(1.414e-3, rel=1e-3)
        assert report.length_error.mean == pytest.approx(0.0, abs=1e-12)

    def test_single_outcome__means_only(self, caplog):
        report = batch_stats([line_outcome(0.151)])
        assert report.insufficient
        assert report.effective_length.mean == pytest.approx(0.151)
        assert report.effective_length.std is None
        assert "at least 2" in caplog.text

    def test_empty__insufficient_data(self):
        with pytest.raises(InsufficientDataError) as exc_info:
            batch_stats([])
        assert exc_info.value.exit_code == 2

    def test_curved_feature__no_straightness(self):
        outcome = make_outcome(make_placement(straight=False))
        report = batch_stats([outcome, outcome])
        assert "straightness_deviation" not in report.metrics
        assert report.width_deviation.std == 0.0

    def test_unknown_metric__attribute_error(self):
        report = batch_stats([line_outcome(0.15)])
        with pytest.raises(AttributeError):
            report.smoothness


def test_quality_report__every_feature():
    outcomes = [
        make_outcome(make_placement(), make_placement(straight_centerline(0.1), feature=1), seed=s)
        for s in range(3)
    ]
    reports = quality_report(outcomes)
    assert [report.feature for report in reports] == [0, 1]
    assert reports[1].effective_length.mean == pytest.approx(0.1)

    with pytest.raises(InsufficientDataError):
        quality_report([])


def test_dump_reports():
    reports = quality_report([line_outcome(0.149), line_outcome(0.151)])
    data = json.loads(json.dumps(dump_reports(reports)))
    assert data["schema_version"] == "1"
    (report,) = data["reports"]
    assert report["n"] == 2
    assert report["insufficient"] is False
    assert report["metrics"]["effective_length"]["std"] == pytest.approx(1.414e-3, rel=1e-3)
