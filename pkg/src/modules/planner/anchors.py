import logging

from core import settings
from modules.mechanics.models import TapeSpec, SubstrateSpec, AnchorState
from modules.mechanics.forces import (
    anchor_feasible,
    adhesion_from_peel,
    peel_force,
    required_anchor_length,
    tension_estimate,
)
from modules.planner.models import FeasibilityReport

__all__ = ["span_tension", "assess_anchor"]
logger = logging.getLogger(__name__)


def span_tension(speed: float, span_length: float, tape: TapeSpec) -> float:
    """Tension of the free span: the feeder runs slightly slower than the pull (FEED_SLIP)"""
    feed_speed = speed / (1 + settings.FEED_SLIP)
    return tension_estimate(speed, feed_speed, span_length, tape)


def assess_anchor(
    tape: TapeSpec,
    substrate: SubstrateSpec,
    speed: float,
    anchor_length: float,
    alpha: float,
    span_length: float,
    end_substrate: SubstrateSpec | None = None,
) -> FeasibilityReport:
    """Checks the anchored run on `substrate` against the tension of a span pulled at `alpha`"""
    force = peel_force(tape, substrate)
    F_t = span_tension(speed, max(span_length, settings.GEOMETRY_TOLERANCE), tape)
    F_adhesion = adhesion_from_peel(force, tape.width, anchor_length)
    state = AnchorState(F_t=F_t, alpha=alpha, F_adhesion=F_adhesion, mu=substrate.mu)
    check = anchor_feasible(state)
    report = FeasibilityReport(
        feasible=check.feasible,
        shear_margin=check.shear_margin,
        peel_margin=check.peel_margin,
        F_t=F_t,
        F_adhesion=F_adhesion,
        alpha=alpha,
        anchor_length=anchor_length,
        required_anchor_length=required_anchor_length(F_t, alpha, substrate.mu, force),
        substrate=substrate.name,
        end_substrate=end_substrate.name if end_substrate else None,
        failure=check.failure,
    )
    logger.debug(
        "Anchor %.4g m on %s: F_t=%.4g N, F_adh=%.4g N, feasible=%s",
        anchor_length,
        substrate.name,
        F_t,
        F_adhesion,
        report.feasible,
    )
    return report
