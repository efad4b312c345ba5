import math

import numpy as np
import pytest

from common.enums import FeatureKind, ToolpathMode
from common.exceptions import InvalidInputError
from common.utils import load_with
from modules.geometry.generators import gen_wave
from modules.geometry.models import (
    ConformalPatch,
    HemisphereSurface,
    LayerStack,
    OverhangFeature,
    PathFeature,
)
from modules.geometry.schemas import DesignSchema, path_to_spec


def load_design(*features: dict, **extra):
    return load_with(DesignSchema(), {"schema_version": "1", "features": list(features)} | extra)


class TestDesignSchema:
    def test_path_kinds__ok(self):
        design = load_design(
            {"kind": "wave", "amplitude": 0.01, "wavelength": 0.05, "total_length": 0.15},
            {"kind": "circle", "diameter": 0.1, "center": [0.2, 0.0, 0.0]},
            {"kind": "arc", "radius": 0.05, "sweep": math.pi},
            {"kind": "polygon", "vertices": [[0, 0], [0.1, 0], [0.1, 0.1]], "closed": True},
            {"kind": "polyline", "vertices": [[0, 0], [0.15, 0]]},
            name="mixed",
        )
        assert design.name == "mixed"
        kinds = [feature.kind for feature in design.features]
        assert kinds == [
            FeatureKind.WAVE,
            FeatureKind.CIRCLE,
            FeatureKind.ARC,
            FeatureKind.SEGMENT_CHAIN,
            FeatureKind.SEGMENT_CHAIN,
        ]
        assert design.features[1].samples[:, 0].min() == pytest.approx(0.15)
        assert design.features[3].closed
        assert not design.features[4].closed

    def test_overrides__ok(self):
        design = load_design(
            {
                "kind": "polyline",
                "vertices": [[0, 0], [0.15, 0]],
                "overrides": {"speed": 0.05, "mode": "compaction", "tape": "copper-3.175"},
            }
        )
        overrides = design.overrides[0]
        assert overrides.speed == 0.05
        assert overrides.mode == ToolpathMode.COMPACTION
        assert overrides.tape == "copper-3.175"
        assert overrides.min_radius is None

    def test_conformal__ok(self):
        design = load_design(
            {
                "kind": "conformal",
                "surface": {"kind": "hemisphere", "center": [0, 0, 0], "radius": 0.05},
                "path": {"kind": "polyline", "vertices": [[0, 0], [0.05, 0]]},
            }
        )
        patch = design.features[0]
        assert isinstance(patch, ConformalPatch)
        assert isinstance(patch.surface, HemisphereSurface)
        assert patch.surface.radius == 0.05
        assert isinstance(patch.path2d, PathFeature)

    def test_layers__ok(self):
        design = load_design(
            {
                "kind": "layers",
                "base": {"kind": "polyline", "vertices": [[0, 0], [0.1, 0]]},
                "layer_count": 4,
                "alternate_rotation": math.pi / 2,
            }
        )
        stack = design.features[0]
        assert isinstance(stack, LayerStack)
        assert stack.layer_count == 4
        assert stack.layer_height == 50e-6

    def test_overhang__ok(self):
        design = load_design(
            {"kind": "overhang", "height": 0.02, "span": 0.02, "end_substrate": "wood"}
        )
        overhang = design.features[0]
        assert isinstance(overhang, OverhangFeature)
        assert overhang.alpha == pytest.approx(math.pi / 4)
        assert overhang.anchor_length == 0.04
        assert overhang.end_substrate == "wood"

    @pytest.mark.parametrize(
        "feature",
        [
            {"kind": "circle"},
            {"kind": "wave", "wavelength": 0.05},
            {"kind": "overhang", "height": 0.02},
            {"kind": "spiral", "diameter": 0.1},
            {"kind": "circle", "diameter": -0.1},
            {"kind": "polyline", "vertices": [[0, 0], [0, 0]]},
            {"kind": "conformal", "surface": {"kind": "hemisphere"}, "path": {"kind": "circle"}},
        ],
    )
    def test_invalid_feature__fail(self, feature):
        with pytest.raises(InvalidInputError) as exc_info:
            load_design(feature)
        assert exc_info.value.exit_code == 2
        assert exc_info.value.details["schema"] == "DesignSchema"

    def test_no_features__fail(self):
        with pytest.raises(InvalidInputError):
            load_design()

    def test_schema_version_mismatch__fail(self):
        with pytest.raises(InvalidInputError):
            load_with(
                DesignSchema(),
                {"schema_version": "0", "features": [{"kind": "circle", "diameter": 0.1}]},
            )


def test_path_to_spec__raw_path_loads_back():
    wave = gen_wave(0.01, 0.05, 0.1)
    design = load_design(path_to_spec(wave))
    assert np.array_equal(design.features[0].samples, wave.samples)
    assert design.features[0].sample_step == wave.sample_step
