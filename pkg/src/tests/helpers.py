import json
import re
from pathlib import Path

import numpy as np
import pytest

from modules.geometry.generators import gen_polygon
from modules.geometry.models import Design
from modules.simulator.models import FeaturePlacement, PlacementOutcome

NOMINAL_WIDTH = 6.35e-3
GOLDEN_DIR = Path(__file__).parent / "golden"
DECIMAL = re.compile(r"-?\d+\.\d+")
SCRUBBED = "*"


def line_design(length: float = 0.15, name: str = "line") -> Design:
    return Design(features=(gen_polygon([(0.0, 0.0), (length, 0.0)], closed=False),), name=name)


def straight_centerline(length: float = 0.15, step: float = 1e-3) -> np.ndarray:
    count = int(round(length / step)) + 1
    x = np.linspace(0.0, length, count)
    return np.column_stack([x, np.zeros_like(x), np.zeros_like(x)])


def make_placement(
    centerline: np.ndarray | None = None,
    lateral: np.ndarray | None = None,
    width: np.ndarray | None = None,
    nominal_width: float = NOMINAL_WIDTH,
    planned_length: float | None = None,
    straight: bool = True,
    feature: int = 0,
) -> FeaturePlacement:
    """As-placed tape built by hand: defaults to a perfect 15 cm line of nominal width"""
    centerline = straight_centerline() if centerline is None else np.asarray(centerline, float)
    count = len(centerline)
    if planned_length is None:
        planned_length = float(np.linalg.norm(np.diff(centerline, axis=0), axis=1).sum())
    return FeaturePlacement(
        feature=feature,
        centerline=centerline,
        lateral_deviation=np.zeros(count) if lateral is None else lateral,
        width_profile=np.full(count, nominal_width) if width is None else width,
        end_cut_offsets=(0.0, 0.0),
        nominal_width=nominal_width,
        planned_length=planned_length,
        straight=straight,
    )


def make_outcome(
    *placements: FeaturePlacement, seed: int = 0, program_id: str = "program"
) -> PlacementOutcome:
    return PlacementOutcome(
        program_id=program_id,
        seed=seed,
        placements=placements or (make_placement(),),
        tape_ref="copper-6.35",
        substrate_ref="acrylic",
    )


def read_golden(name: str) -> str:
    path = GOLDEN_DIR / name
    if not path.exists():
        pytest.fail(f"Golden file {path} is missing")
    return path.read_text(encoding="utf-8")


def _split_decimals(text: str) -> tuple[list[str], list[float]]:
    """Non-blank stripped lines with decimals replaced by '#', plus those decimals in order"""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    numbers = [float(value) for line in lines for value in DECIMAL.findall(line)]
    return [DECIMAL.sub("#", line) for line in lines], numbers


def assert_svg_matches_golden(svg: str, name: str, tolerance: float = 2e-3):
    lines, numbers = _split_decimals(svg)
    golden_lines, golden_numbers = _split_decimals(read_golden(name))
    assert lines == golden_lines
    assert numbers == pytest.approx(golden_numbers, abs=tolerance)


def _scrub(data, keys: tuple[str, ...]):
    if isinstance(data, dict):
        return {
            key: SCRUBBED if key in keys else _scrub(value, keys) for key, value in data.items()
        }
    if isinstance(data, list):
        return [_scrub(item, keys) for item in data]
    return data


def assert_close(actual, expected, where: str = "$"):
    """Recursive equality where every number is compared with a relative tolerance"""
    if isinstance(expected, dict):
        assert isinstance(actual, dict), where
        assert sorted(actual) == sorted(expected), where
        for key, value in expected.items():
            assert_close(actual[key], value, f"{where}.{key}")
    elif isinstance(expected, list):
        assert isinstance(actual, list) and len(actual) == len(expected), where
        for index, (item, value) in enumerate(zip(actual, expected)):
            assert_close(item, value, f"{where}[{index}]")
    elif isinstance(expected, (int, float)) and not isinstance(expected, bool):
        assert not isinstance(actual, bool), where
        assert actual == pytest.approx(expected, rel=1e-9, abs=1e-12), where
    else:
        assert actual == expected, where


def assert_json_matches_golden(data: dict, name: str, scrub: tuple[str, ...] = ()):
    assert_close(_scrub(data, scrub), json.loads(read_golden(name)))
