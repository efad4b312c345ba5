"""
Derives the default noise gains from the target phenomenology stored in noise.json:

    python -m cli.calibrate --n 100            # print the derived profile
    python -m cli.calibrate --write noise.json # write an updated catalog

End overshoot and width spread follow in closed form from the speed targets; the lateral
walk is solved numerically against the straightness target on a reference line.
"""

import argparse
import dataclasses
import json
import logging
import logging.config
import math

import numpy as np
from scipy.optimize import brentq

from core import settings
from common.utils import catalog_path, read_json, write_json
from modules.geometry.generators import gen_polygon
from modules.geometry.models import Design
from modules.mechanics.catalog import get_tape, get_substrate
from modules.planner import PlanParams, plan
from modules.simulator import NoiseModel, batch_simulate, load_noise
from modules.metrics import straightness_deviation, effective_length

logger = logging.getLogger("cli")
# mean of |xi| for standard normal xi
HALF_NORMAL_MEAN = math.sqrt(2 / math.pi)


def overshoot_gain(length_growth: float, reference_length: float, max_speed: float) -> float:
    """Both ends overshoot: total growth = 2 * gain * speed"""
    return length_growth * reference_length / (2 * max_speed)


def width_gain(width_growth: float, max_speed: float) -> float:
    return width_growth / (max_speed * HALF_NORMAL_MEAN)


def mean_straightness_ratio(noise: NoiseModel, reference_length: float, speed: float, n: int):
    design = Design(features=(gen_polygon([(0.0, 0.0), (reference_length, 0.0)], closed=False),))
    tape, substrate = get_tape(), get_substrate()
    program = plan(design, tape, substrate, PlanParams(speed=speed))
    outcomes = batch_simulate(program, tape, substrate, noise, n)
    ratios = [straightness_deviation(item) / effective_length(item) for item in outcomes]
    return float(np.mean(ratios))


def calibrate(n: int = 100) -> tuple[dict, dict]:
    """(default profile, targets) re-derived from the catalog targets"""
    catalog = read_json(catalog_path("noise.json"))
    targets = catalog["targets"]
    base = load_noise("default")
    noise = dataclasses.replace(
        base,
        accel_overshoot_gain=overshoot_gain(
            targets["length_growth_at_max_speed"], targets["reference_length"], settings.SPEED_MAX
        ),
        width_spread_gain=width_gain(targets["width_growth_at_max_speed"], settings.SPEED_MAX),
    )

    def residual(sigma: float) -> float:
        candidate = dataclasses.replace(noise, lateral_walk_sigma=sigma)
        ratio = mean_straightness_ratio(
            candidate, targets["reference_length"], targets["reference_speed"], n
        )
        logger.info("lateral_walk_sigma=%.4g: mean straightness ratio %.4g", sigma, ratio)
        return ratio - targets["straightness_ratio"]

    sigma = brentq(residual, 1e-5, 5e-3, xtol=1e-6)
    profile = {
        "accel_overshoot_gain": round(noise.accel_overshoot_gain, 6),
        "cut_irregularity_sigma": noise.cut_irregularity_sigma,
        "lateral_walk_sigma": round(sigma, 6),
        "repeatability_sigma": noise.repeatability_sigma,
        "spur_width_fraction": list(noise.spur_width_fraction),
        "width_spread_gain": round(noise.width_spread_gain, 4),
    }
    return profile, targets


def main():
    parser = argparse.ArgumentParser(description="Derive default noise gains")
    parser.add_argument("--n", type=int, default=100, help="seeds per straightness evaluation")
    parser.add_argument("--version", default=None, help="calibration version to record")
    parser.add_argument("--write", default=None, help="write the updated catalog here")
    args = parser.parse_args()
    logging.config.dictConfig(settings.LOGGING)

    profile, _ = calibrate(args.n)
    print(json.dumps(profile, indent=1, sort_keys=True))
    if args.write:
        catalog = read_json(catalog_path("noise.json"))
        catalog["profiles"]["default"] = profile
        if args.version:
            catalog["calibration_version"] = args.version
        write_json(args.write, catalog)
        logger.info("Noise catalog written to %s", args.write)


if __name__ == "__main__":
    main()
