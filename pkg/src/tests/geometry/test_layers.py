import math

import numpy as np
import pytest

from common.exceptions import InvalidParameterError
from modules.geometry.generators import gen_polygon, gen_circle
from modules.geometry.layers import expand_layers
from modules.geometry.models import LayerStack


@pytest.fixture
def base_line():
    return gen_polygon([(0.0, 0.0), (0.1, 0.0)], closed=False)


class TestExpandLayers:
    def test_single_layer__ok(self, base_line):
        placements = expand_layers(LayerStack(base=base_line))
        assert len(placements) == 1
        assert placements[0].z_offset == 0.0
        assert placements[0].rotation == 0.0
        assert np.allclose(placements[0].path.samples, base_line.samples)

    def test_woodpile__alternating(self, base_line):
        stack = LayerStack(
            base=base_line, layer_count=4, layer_height=50e-6, alternate_rotation=math.pi / 2
        )
        placements = expand_layers(stack)
        assert [item.layer for item in placements] == [0, 1, 2, 3]
        assert [item.z_offset for item in placements] == pytest.approx([0, 50e-6, 100e-6, 150e-6])
        assert [item.rotation for item in placements] == pytest.approx([0, math.pi / 2] * 2)
        for item in placements:
            assert np.allclose(item.path.samples[:, 2], item.z_offset)
            assert item.path.length == pytest.approx(base_line.length, rel=1e-12)

        # odd layers cross the even ones at the base's centre
        crossing = placements[1].path.samples
        assert np.allclose(crossing[:, 0], 0.05)
        assert crossing[:, 1].min() == pytest.approx(-0.05)

    def test_wall__stacked_lines(self, base_line):
        placements = expand_layers(LayerStack(base=base_line, layer_count=2))
        lower, upper = (item.path.samples for item in placements)
        assert np.allclose(lower[:, :2], upper[:, :2])
        assert np.allclose(upper[:, 2] - lower[:, 2], 50e-6)

    def test_strands__parallel_copies(self, base_line):
        stack = LayerStack(base=base_line, strands=3, strand_pitch=0.01)
        placements = expand_layers(stack)
        assert [item.strand for item in placements] == [0, 1, 2]
        offsets = [item.path.samples[0, 1] for item in placements]
        assert offsets == pytest.approx([-0.01, 0.0, 0.01])

    def test_closed_base__length_preserved(self):
        circle = gen_circle(0.05)
        placements = expand_layers(
            LayerStack(base=circle, layer_count=3, alternate_rotation=math.pi / 2)
        )
        assert all(item.path.closed for item in placements)
        assert all(
            item.path.length == pytest.approx(circle.length, rel=1e-12) for item in placements
        )

    @pytest.mark.parametrize(
        "params",
        [
            {"layer_count": 0},
            {"layer_height": 0.0},
            {"strands": 0},
            {"strands": 2, "strand_pitch": 0.0},
        ],
    )
    def test_invalid_stack__fail(self, base_line, params):
        with pytest.raises(InvalidParameterError):
            LayerStack(base=base_line, **params)
