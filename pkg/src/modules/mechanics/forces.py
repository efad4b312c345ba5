import math
import logging

from core import settings
from common.enums import WrinkleRisk
from common.exceptions import InvalidParameterError
from modules.mechanics.models import TapeSpec, SubstrateSpec, AnchorState, AnchorCheck

__all__ = [
    "anchor_feasible",
    "adhesion_from_peel",
    "peel_force",
    "required_anchor_length",
    "tension_estimate",
    "scaled_min_radius",
    "wrinkle_risk",
    "compaction_quality",
    "trace_resistance",
]
logger = logging.getLogger(__name__)


def anchor_feasible(state: AnchorState) -> AnchorCheck:
    """
    Anchored tape holds the span when both conditions hold:
        shear: F_t * cos(alpha) <= mu * F_adhesion
        peel:  F_t * sin(alpha) <= F_adhesion
    """
    shear_margin = state.mu * state.F_adhesion - state.F_t * math.cos(state.alpha)
    peel_margin = state.F_adhesion - state.F_t * math.sin(state.alpha)
    return AnchorCheck(
        feasible=shear_margin >= 0 and peel_margin >= 0,
        shear_margin=shear_margin,
        peel_margin=peel_margin,
    )


def adhesion_from_peel(peel_force: float, tape_width: float, anchored_length: float) -> float:
    """
    Vertical adhesion of an anchored run, scaled linearly from a 180 degree peel test
    over the reference strip length: F_adhesion = peel_force / L_ref * anchored_length
    """
    if peel_force <= 0 or tape_width <= 0:
        raise InvalidParameterError(
            f"peel_force and tape_width must be positive, got {peel_force}, {tape_width}"
        )
    if anchored_length < 0:
        raise InvalidParameterError(f"anchored_length must be >= 0, got {anchored_length}")

    return peel_force / settings.PEEL_REFERENCE_LENGTH * anchored_length


def peel_force(tape: TapeSpec, substrate: SubstrateSpec) -> float:
    """Peel force of the tape on the substrate: the weaker interface limits the bond"""
    return min(tape.peel_strength, substrate.peel_force_per_width) * tape.width


def required_anchor_length(F_t: float, alpha: float, mu: float, peel: float) -> float:
    """Shortest anchored run satisfying both anchor conditions (closed-form inversion)"""
    if peel <= 0 or mu <= 0:
        raise InvalidParameterError("peel force and mu must be positive")

    needed = max(F_t * math.cos(alpha) / mu, F_t * math.sin(alpha), 0.0)
    return needed * settings.PEEL_REFERENCE_LENGTH / peel


def tension_estimate(
    pull_speed: float,
    feed_speed: float,
    span_length: float,
    tape: TapeSpec,
    cap: float | None = None,
) -> float:
    """
    Linear-elastic span tension from the pull/feed rate mismatch:
        F_t = E * w * t * (pull - feed) / feed, clamped to [0, cap]
    Tape cannot push, so F_t = 0 whenever feed >= pull.
    """
    if span_length <= 0:
        raise InvalidParameterError(f"span_length must be positive, got {span_length}")
    if pull_speed < 0 or feed_speed < 0:
        raise InvalidParameterError("Speeds must be non-negative")

    cap = settings.TENSION_CAP if cap is None else cap
    strain = (pull_speed - feed_speed) / max(feed_speed, 1e-12)
    return min(cap, max(0.0, tape.axial_stiffness * strain))


def scaled_min_radius(min_radius: float, tape: TapeSpec) -> float:
    """Printable radius scales linearly with tape width (reference: 6.35 mm tape)"""
    return min_radius * tape.width / settings.REFERENCE_TAPE_WIDTH


def wrinkle_risk(radius: float, tape: TapeSpec, min_radius: float) -> WrinkleRisk:
    """
    Wrinkling risk of laying `tape` along a bend of `radius`: fail below the width-scaled
    minimum radius, warn from that radius (inclusive) up to twice it, none above.
    A radius exactly at the minimum is printable but reported as warn.
    """
    if radius <= 0:
        raise InvalidParameterError(f"radius must be positive, got {radius}")

    threshold = scaled_min_radius(min_radius, tape)
    if radius < threshold:
        return WrinkleRisk.FAIL
    if radius < 2 * threshold:
        logger.debug("Radius %.4g m is close to the wrinkle threshold %.4g m", radius, threshold)
        return WrinkleRisk.WARN
    return WrinkleRisk.NONE


def compaction_quality(compaction_force: float) -> float:
    """Lateral deviation scale vs roller force: 1 + c * (F - F_opt)^2, equal to 1 at the optimum"""
    if compaction_force < 0:
        raise InvalidParameterError(f"Compaction force must be >= 0, got {compaction_force}")

    offset = compaction_force - settings.COMPACTION_OPTIMUM
    return 1.0 + settings.COMPACTION_CURVATURE * offset**2


def trace_resistance(length: float, tape: TapeSpec) -> float:
    if length <= 0:
        raise InvalidParameterError(f"Trace length must be positive, got {length}")

    return tape.resistivity * length / tape.cross_section
