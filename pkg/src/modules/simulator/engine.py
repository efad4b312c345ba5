import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed

import numpy as np

from core import settings
from common.enums import ToolpathMode
from common.exceptions import InvalidParameterError, InvalidInputError, PlacementFailureError
from modules.geometry.paths import cumulative_length
from modules.mechanics.catalog import get_tape
from modules.mechanics.forces import compaction_quality
from modules.mechanics.models import TapeSpec, SubstrateSpec
from modules.planner.anchors import assess_anchor
from modules.planner.models import MotionProgram, FeatureMeta
from modules.planner.schemas import program_id
from modules.simulator.models import NoiseModel, FeaturePlacement, PlacementOutcome

__all__ = ["simulate", "batch_simulate", "simulate_overhang", "adjust_end"]
logger = logging.getLogger(__name__)


def adjust_end(
    centerline: np.ndarray,
    lateral: np.ndarray,
    width: np.ndarray,
    length: float,
    sample_step: float = settings.SAMPLE_STEP,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Moves the tape end by `length` along the path: positive extends collinearly
    (profiles keep their end values), negative cuts the tape shorter.
    """
    if length > 0:
        direction = centerline[-1] - centerline[-2]
        direction = direction / np.linalg.norm(direction)
        parts = max(1, math.ceil(length / sample_step - 1e-9))
        offsets = np.linspace(0.0, length, parts + 1)[1:, None]
        return (
            np.vstack([centerline, centerline[-1] + direction * offsets]),
            np.concatenate([lateral, np.repeat(lateral[-1], parts)]),
            np.concatenate([width, np.repeat(width[-1], parts)]),
        )
    if length == 0:
        return centerline, lateral, width

    positions = cumulative_length(centerline)
    keep_until = positions[-1] + length
    if keep_until <= settings.GEOMETRY_TOLERANCE:
        raise PlacementFailureError(
            details={
                "reason": f"end cut of {-length:.6g} m exceeds the {positions[-1]:.6g} m tape"
            }
        )

    index = int(np.searchsorted(positions, keep_until, side="right"))
    cut = np.array([np.interp(keep_until, positions, centerline[:, axis]) for axis in range(3)])
    kept = slice(0, index)
    result = (centerline[kept], lateral[kept], width[kept])
    if keep_until - positions[index - 1] > 1e-15:
        result = (
            np.vstack([result[0], cut]),
            np.append(result[1], np.interp(keep_until, positions, lateral)),
            np.append(result[2], np.interp(keep_until, positions, width)),
        )
    return result


def _truncated_normal(rng: np.random.Generator, sigma: float, bound: float = 3.0) -> float:
    if sigma == 0:
        return 0.0
    while True:
        value = rng.standard_normal()
        if abs(value) <= bound:
            return float(value * sigma)


def _add_spur(centerline, lateral, width, rng, noise: NoiseModel, nominal: float):
    """Uneven cut: a narrow sliver of tape sticks out beyond the cut line"""
    direction = centerline[-1] - centerline[-2]
    direction = direction / np.linalg.norm(direction)
    spur = noise.cut_irregularity_sigma * rng.uniform(0.5, 1.5)
    fraction = rng.uniform(*noise.spur_width_fraction)
    return (
        np.vstack([centerline, centerline[-1] + direction * spur]),
        np.append(lateral, lateral[-1]),
        np.append(width, nominal * fraction),
    )


def _deviation_scale(meta: FeatureMeta, substrate: SubstrateSpec) -> float:
    scale = substrate.roughness_factor
    if meta.mode == ToolpathMode.COMPACTION:
        scale *= compaction_quality(meta.compaction_setpoint)
    return scale


def _check_overhang(
    program: MotionProgram, meta: FeatureMeta, tape: TapeSpec, substrate: SubstrateSpec
) -> str:
    """Re-evaluates the anchor at every step of the free span; fails at the first slip/peel"""
    info = meta.overhang
    positions = cumulative_length(program.laying_frames(meta.index)[0])
    on_span = (positions > info.anchor_end + 1e-12) & (positions <= info.span_end + 1e-12)
    span_positions = positions[on_span]
    for position in span_positions:
        report = assess_anchor(
            tape, substrate, meta.speed, info.anchor_length, info.alpha, position - info.anchor_end
        )
        if not report.feasible:
            raise PlacementFailureError(
                message=f"placement-failure: anchored tape failed in {report.failure}",
                details={
                    "feature": meta.design_index,
                    "arc_position": round(float(position), 9),
                    "failure": str(report.failure),
                    "shear_margin": report.shear_margin,
                    "peel_margin": report.peel_margin,
                },
            )
    return f"anchor-ok:{meta.index}"


def _place_feature(
    program: MotionProgram,
    meta: FeatureMeta,
    substrate: SubstrateSpec,
    noise: NoiseModel,
    rng: np.random.Generator,
) -> FeaturePlacement:
    planned, approaches, headings = program.laying_frames(meta.index)
    lateral_axis = np.cross(approaches, headings)
    positions = cumulative_length(planned)
    count = len(planned)

    steps = np.sqrt(np.diff(positions))
    walk = rng.standard_normal(count - 1) * noise.lateral_walk_sigma * steps
    jitter = rng.standard_normal(count) * noise.repeatability_sigma
    scale = _deviation_scale(meta, substrate)
    lateral = scale * (np.concatenate([[0.0], np.cumsum(walk)]) + jitter)
    if meta.overhang is not None:
        # taut free span stays on the straight chord
        info = meta.overhang
        on_span = (positions >= info.anchor_end - 1e-12) & (positions <= info.span_end + 1e-12)
        lateral[on_span] = 0.0

    spread = np.abs(rng.standard_normal(count))
    width = meta.width * (1.0 + noise.width_spread_gain * meta.speed * spread)
    overshoot = noise.accel_overshoot_gain * meta.speed
    offsets = (
        overshoot + _truncated_normal(rng, noise.cut_irregularity_sigma),
        overshoot + _truncated_normal(rng, noise.cut_irregularity_sigma),
    )

    centerline = planned + lateral[:, None] * lateral_axis
    centerline, lateral, width = adjust_end(centerline, lateral, width, offsets[1])
    centerline, lateral, width = (
        array[::-1]
        for array in adjust_end(centerline[::-1], lateral[::-1], width[::-1], offsets[0])
    )
    if noise.cut_irregularity_sigma > 0:
        centerline, lateral, width = _add_spur(centerline, lateral, width, rng, noise, meta.width)
        centerline, lateral, width = (
            array[::-1]
            for array in _add_spur(
                centerline[::-1], lateral[::-1], width[::-1], rng, noise, meta.width
            )
        )

    return FeaturePlacement(
        feature=meta.index,
        centerline=centerline,
        lateral_deviation=lateral,
        width_profile=width,
        end_cut_offsets=offsets,
        nominal_width=meta.width,
        planned_length=meta.planned_length,
        straight=meta.straight,
        closed=meta.closed,
        speed=meta.speed,
        kind=meta.kind,
        layer=meta.layer,
    )


def simulate(
    program: MotionProgram,
    tape: TapeSpec,
    substrate: SubstrateSpec,
    noise: NoiseModel,
) -> PlacementOutcome:
    """
    As-placed tape for every feature of the program. Deterministic given the noise seed:
    random draws happen in feature order from one generator.
    """
    if not program.features:
        raise InvalidInputError("Program has no printed features")

    rng = np.random.default_rng(noise.seed)
    flags = []
    placements = []
    for meta in program.features:
        if meta.overhang is not None:
            feature_tape = tape if meta.tape == tape.name else get_tape(meta.tape)
            flags.append(_check_overhang(program, meta, feature_tape, substrate))
        placements.append(_place_feature(program, meta, substrate, noise, rng))

    return PlacementOutcome(
        program_id=program_id(program),
        seed=noise.seed,
        placements=tuple(placements),
        tape_ref=program.tape_ref,
        substrate_ref=substrate.name,
        noise_profile=noise.name,
        calibration_version=noise.calibration_version,
        feasibility_flags=tuple(flags),
    )


def batch_simulate(
    program: MotionProgram,
    tape: TapeSpec,
    substrate: SubstrateSpec,
    noise: NoiseModel,
    n: int,
    workers: int | None = None,
) -> list[PlacementOutcome]:
    """`n` outcomes with seeds seed, seed + 1, ... ordered by seed"""
    if n < 1:
        raise InvalidParameterError(f"Batch size must be >= 1, got {n}")

    workers = settings.SIMULATION_WORKERS if workers is None else workers
    seeds = [noise.seed + offset for offset in range(n)]
    if workers <= 1 or n == 1:
        outcomes = [simulate(program, tape, substrate, noise.with_seed(seed)) for seed in seeds]
    else:
        outcomes = []
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [
                executor.submit(simulate, program, tape, substrate, noise.with_seed(seed))
                for seed in seeds
            ]
            for future in as_completed(futures):
                outcomes.append(future.result())
        outcomes.sort(key=lambda outcome: outcome.seed)

    logger.info("Simulated %i placement(s) of program %s", n, outcomes[0].program_id[:12])
    return outcomes


def simulate_overhang(
    fragment: MotionProgram, tape: TapeSpec, substrate: SubstrateSpec, noise: NoiseModel
) -> PlacementOutcome:
    """Simulates an overhang fragment; raises placement-failure when the anchor lets go"""
    if not any(meta.overhang is not None for meta in fragment.features):
        raise InvalidInputError("Program fragment has no overhang feature")
    return simulate(fragment, tape, substrate, noise)
