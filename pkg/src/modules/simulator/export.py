import logging
from pathlib import Path

import numpy as np
import pandas as pd

from modules.geometry.paths import cumulative_length
from modules.simulator.models import PlacementOutcome

__all__ = ["profiles_frame", "write_profiles_csv"]
logger = logging.getLogger(__name__)
PROFILE_COLUMNS = ["x", "y", "z", "lateral_deviation", "width"]


def profiles_frame(outcomes: list[PlacementOutcome]) -> pd.DataFrame:
    """Per-sample placement profiles indexed by (seed, feature, sample)"""
    frames = []
    for outcome in outcomes:
        for placement in outcome.placements:
            frame = pd.DataFrame(placement.centerline, columns=["x", "y", "z"])
            frame["arc_position"] = cumulative_length(placement.centerline)
            frame["lateral_deviation"] = placement.lateral_deviation
            frame["width"] = placement.width_profile
            frame["seed"] = outcome.seed
            frame["feature"] = placement.feature
            frame["sample"] = np.arange(len(frame))
            frames.append(frame)

    columns = ["seed", "feature", "sample", "arc_position", *PROFILE_COLUMNS]
    if not frames:
        return pd.DataFrame(columns=columns).set_index(["seed", "feature", "sample"])
    return pd.concat(frames, ignore_index=True)[columns].set_index(["seed", "feature", "sample"])


def write_profiles_csv(outcomes: list[PlacementOutcome], path: str | Path) -> Path:
    path = Path(path)
    profiles_frame(outcomes).to_csv(path, float_format="%.9g")
    logger.info("Placement profiles written to %s", path)
    return path
