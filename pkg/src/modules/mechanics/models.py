import dataclasses
import math

from common.enums import AnchorFailure, RoughnessRank
from common.exceptions import InvalidParameterError

__all__ = ["TapeSpec", "SubstrateSpec", "AnchorState", "AnchorCheck"]


@dataclasses.dataclass(frozen=True)
class TapeSpec:
    """Physical tape description; SI units (peel_strength in N per meter of width)"""

    name: str
    width: float
    thickness: float
    elastic_modulus: float
    resistivity: float
    peel_strength: float
    material: str = "copper"

    def __post_init__(self):
        for field in ("width", "thickness", "elastic_modulus", "resistivity", "peel_strength"):
            value = getattr(self, field)
            if not (value > 0 and math.isfinite(value)):
                raise InvalidParameterError(f"TapeSpec.{field} must be positive, got {value}")

    @property
    def cross_section(self) -> float:
        return self.width * self.thickness

    @property
    def axial_stiffness(self) -> float:
        """E*A: tension per unit strain, N"""
        return self.elastic_modulus * self.cross_section


@dataclasses.dataclass(frozen=True)
class SubstrateSpec:
    """
    Print surface material. `roughness_factor` scales lateral placement noise;
    higher roughness rank means lower peel force per width.
    """

    name: str
    mu: float
    peel_force_per_width: float
    roughness_rank: RoughnessRank
    roughness_factor: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "roughness_rank", RoughnessRank(self.roughness_rank))
        if self.mu <= 0:
            raise InvalidParameterError(f"SubstrateSpec.mu must be positive, got {self.mu}")
        if self.peel_force_per_width <= 0:
            raise InvalidParameterError(
                f"SubstrateSpec.peel_force_per_width must be positive: {self.peel_force_per_width}"
            )
        if self.roughness_factor <= 0:
            raise InvalidParameterError("SubstrateSpec.roughness_factor must be positive")


@dataclasses.dataclass(frozen=True)
class AnchorState:
    F_t: float
    alpha: float
    F_adhesion: float
    mu: float

    def __post_init__(self):
        if self.F_t < 0:
            raise InvalidParameterError(f"Tension must be non-negative, got {self.F_t}")
        if not 0 <= self.alpha <= math.pi / 2 + 1e-12:
            raise InvalidParameterError(f"alpha must be in [0, pi/2], got {self.alpha}")
        if self.F_adhesion < 0:
            raise InvalidParameterError(f"Adhesion must be non-negative, got {self.F_adhesion}")
        if self.mu <= 0:
            raise InvalidParameterError(f"mu must be positive, got {self.mu}")


@dataclasses.dataclass(frozen=True)
class AnchorCheck:
    feasible: bool
    shear_margin: float
    peel_margin: float

    @property
    def failure(self) -> AnchorFailure | None:
        """Condition that failed (shear is reported first when both are violated)"""
        if self.shear_margin < 0:
            return AnchorFailure.SHEAR
        if self.peel_margin < 0:
            return AnchorFailure.PEEL
        return None
