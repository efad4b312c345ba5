import numpy as np
import pytest

from common.exceptions import InvalidParameterError, InvalidInputError
from common.utils import write_json
from modules.apps import (
    SensorGrid,
    decode_replay,
    decode_touch,
    force_from_response,
    load_replay,
    sensor_response,
    synthesize_touch,
)


@pytest.fixture
def grid() -> SensorGrid:
    return SensorGrid()


class TestSensorResponse:
    def test_saturates_at_4_9n(self, grid):
        assert sensor_response(4.9, grid) == pytest.approx(0.95 * grid.dC_max, rel=1e-9)

    def test_no_force__no_response(self, grid):
        assert sensor_response(0.0, grid) == 0.0

    def test_monotone(self, grid):
        responses = [sensor_response(force, grid) for force in np.linspace(0.0, 20.0, 81)]
        assert all(second > first for first, second in zip(responses, responses[1:]))
        assert responses[-1] < grid.dC_max

    @pytest.mark.parametrize("force", [0.1, 1.0, 2.5, 4.9, 8.0])
    def test_inverse(self, grid, force):
        assert force_from_response(sensor_response(force, grid), grid) == pytest.approx(
            force, rel=1e-2
        )

    def test_negative_force__fail(self, grid):
        with pytest.raises(InvalidParameterError):
            sensor_response(-0.1, grid)

    def test_full_scale__finite_force(self, grid):
        assert np.isfinite(force_from_response(grid.dC_max, grid))


class TestDecodeTouch:
    def test_single_touch(self, grid):
        event = decode_touch(synthesize_touch(2, 3, 3.0, grid), grid)
        assert (event.row, event.col) == (2, 3)
        assert event.force == pytest.approx(3.0, rel=1e-2)
        assert event.dC == pytest.approx(sensor_response(3.0, grid))

    def test_crosstalk__peak_wins(self, grid):
        dC_map = synthesize_touch(0, 5, 2.0, grid, crosstalk=0.3)
        assert dC_map[1, 5] == pytest.approx(0.3 * dC_map[0, 5])
        assert dC_map[0, 4] == pytest.approx(0.3 * dC_map[0, 5])
        assert np.count_nonzero(dC_map) == 3
        event = decode_touch(dC_map, grid)
        assert (event.row, event.col) == (0, 5)

    def test_tie__lowest_node(self, grid):
        dC_map = np.zeros(grid.shape)
        dC_map[3, 0] = dC_map[1, 4] = 1e-12
        event = decode_touch(dC_map, grid)
        assert (event.row, event.col) == (1, 4)

    def test_no_touch__none(self, grid):
        assert decode_touch(np.zeros(grid.shape), grid) is None

    def test_shape_mismatch__fail(self, grid):
        with pytest.raises(InvalidInputError):
            decode_touch(np.zeros((4, 4)), grid)

    def test_off_grid__fail(self, grid):
        with pytest.raises(InvalidParameterError):
            synthesize_touch(6, 0, 1.0, grid)


def test_replay(grid, tmp_path):
    frames = [synthesize_touch(4, 1, 1.5, grid), np.zeros(grid.shape)]
    path = tmp_path / "replay.json"
    write_json(path, {"schema_version": "1", "frames": [frame.tolist() for frame in frames]})

    first, second = decode_replay(load_replay(path), grid)
    assert (first.row, first.col) == (4, 1)
    assert first.force == pytest.approx(1.5, rel=1e-2)
    assert second is None


def test_replay__invalid_file(tmp_path):
    path = tmp_path / "replay.json"
    write_json(path, {"schema_version": "1"})
    with pytest.raises(InvalidInputError):
        load_replay(path)
