import dataclasses
import logging

import numpy as np

from common.exceptions import InvalidInputError, PlacementFailureError
from modules.simulator.engine import adjust_end
from modules.simulator.models import FeaturePlacement, PlacementOutcome
from modules.controlsync.models import SyncTrace

__all__ = ["couple_to_simulator"]
logger = logging.getLogger(__name__)


def _shift_end(placement: FeaturePlacement, deficit: float) -> FeaturePlacement:
    """Moves the trailing cut by `deficit`, keeping a cut spur (if any) attached to the tape end"""
    width = placement.width_profile
    body = np.flatnonzero(width >= 0.5 * placement.nominal_width)
    last = int(body[-1]) + 1 if len(body) else len(width)
    centerline, lateral, width_body = adjust_end(
        placement.centerline[:last], placement.lateral_deviation[:last], width[:last], deficit
    )
    shift = centerline[-1] - placement.centerline[last - 1]
    return dataclasses.replace(
        placement,
        centerline=np.vstack([centerline, placement.centerline[last:] + shift]),
        lateral_deviation=np.concatenate([lateral, placement.lateral_deviation[last:]]),
        width_profile=np.concatenate([width_body, width[last:]]),
        end_cut_offsets=(placement.end_cut_offsets[0], placement.end_cut_offsets[1] + deficit),
    )


def couple_to_simulator(trace: SyncTrace, outcome: PlacementOutcome) -> PlacementOutcome:
    """Applies the feed deficit of every feature to the end cut of its as-placed tape"""
    if trace.program_id != outcome.program_id:
        raise InvalidInputError(
            details={
                "reason": "trace and outcome come from different programs",
                "trace_program": trace.program_id,
                "outcome_program": outcome.program_id,
            }
        )
    if not trace.complete:
        raise InvalidInputError("Sync trace is incomplete: feeder was never stopped")

    deficits = {record.feature: record.deficit for record in trace.feeds}
    placements = []
    for placement in outcome.placements:
        deficit = deficits.get(placement.feature, 0.0)
        if deficit == 0:
            placements.append(placement)
            continue
        try:
            placements.append(_shift_end(placement, deficit))
        except PlacementFailureError as exc:
            raise PlacementFailureError(
                details={"feature": placement.feature, "deficit": deficit} | exc.details
            ) from exc

    logger.debug("Coupled %i feed deficit(s) into outcome seed %i", len(deficits), outcome.seed)
    return dataclasses.replace(outcome, placements=tuple(placements))
