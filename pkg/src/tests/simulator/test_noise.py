import json

import numpy as np
import pandas as pd
import pytest

from common.exceptions import NotFoundError, InvalidInputError, InvalidParameterError
from modules.simulator import (
    NoiseModel,
    batch_simulate,
    dump_outcomes,
    load_noise,
    load_outcomes,
    profiles_frame,
    write_profiles_csv,
)


class TestLoadNoise:
    def test_default_profile(self, default_noise):
        assert default_noise.name == "default"
        assert default_noise.calibration_version == "2"
        assert default_noise.accel_overshoot_gain == pytest.approx(0.0225)
        assert default_noise.width_spread_gain == pytest.approx(0.752)
        assert default_noise.lateral_walk_sigma == pytest.approx(6e-4)
        assert not default_noise.is_zero

    def test_zero_profile(self, zero_noise):
        assert zero_noise.is_zero

    def test_seed(self):
        noise = load_noise("default", seed=42)
        assert noise.seed == 42
        assert noise.with_seed(43).seed == 43
        assert noise.with_seed(43).lateral_walk_sigma == noise.lateral_walk_sigma

    def test_from_file(self, tmp_path):
        path = tmp_path / "bench.json"
        path.write_text(
            json.dumps(
                {
                    "cut_irregularity_sigma": 1e-4,
                    "repeatability_sigma": 0.0,
                    "lateral_walk_sigma": 1e-4,
                    "accel_overshoot_gain": 0.01,
                    "width_spread_gain": 0.5,
                }
            )
        )
        noise = load_noise(path, seed=5)
        assert noise.name == "bench"
        assert noise.seed == 5
        assert noise.accel_overshoot_gain == 0.01

    def test_unknown__not_found(self):
        with pytest.raises(NotFoundError):
            load_noise("turbulent")

    def test_negative_seed__invalid(self):
        with pytest.raises(InvalidInputError):
            load_noise("default", seed=-1)

    @pytest.mark.parametrize(
        "params",
        [
            {"lateral_walk_sigma": -1e-4},
            {"spur_width_fraction": (0.3, 0.2)},
            {"spur_width_fraction": (0.25, 0.6)},
            {"seed": 2**64},
        ],
    )
    def test_invalid_model__fail(self, params):
        with pytest.raises(InvalidParameterError):
            NoiseModel(**params)


class TestOutcomeArtifacts:
    @pytest.fixture
    def outcomes(self, line_program, tape, substrate, default_noise):
        return batch_simulate(line_program, tape, substrate, default_noise, 3)

    def test_schema__loads_dumped(self, outcomes):
        data = dump_outcomes(outcomes)
        assert all(item["schema_version"] == "1" for item in data)
        loaded = load_outcomes(json.loads(json.dumps(data)))
        assert [outcome.seed for outcome in loaded] == [0, 1, 2]
        assert np.allclose(loaded[1].placement(0).centerline, outcomes[1].placement(0).centerline)
        assert loaded[0].placement(0).end_cut_offsets == outcomes[0].placement(0).end_cut_offsets

    def test_schema__single_outcome(self, outcomes):
        (loaded,) = load_outcomes(dump_outcomes(outcomes[:1])[0])
        assert loaded.program_id == outcomes[0].program_id

    def test_schema__invalid(self):
        with pytest.raises(InvalidInputError):
            load_outcomes({"schema_version": "1", "seed": 0})

    def test_profiles_frame(self, outcomes):
        frame = profiles_frame(outcomes)
        samples = sum(len(outcome.placement(0).centerline) for outcome in outcomes)
        assert len(frame) == samples
        assert frame.index.names == ["seed", "feature", "sample"]
        assert list(frame.columns) == ["arc_position", "x", "y", "z", "lateral_deviation", "width"]

    def test_profiles_csv(self, outcomes, tmp_path):
        path = write_profiles_csv(outcomes, tmp_path / "profiles.csv")
        frame = pd.read_csv(path, index_col=["seed", "feature", "sample"])
        assert sorted(set(frame.index.get_level_values("seed"))) == [0, 1, 2]
        assert frame["width"].max() > 0
