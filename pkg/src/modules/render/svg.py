import dataclasses
import logging
from pathlib import Path

import numpy as np
from jinja2 import Template

from core import settings
from common.exceptions import InvalidInputError
from modules.planner.models import MotionProgram
from modules.simulator.models import PlacementOutcome

__all__ = ["render_program", "render_outcome", "write_svg"]
logger = logging.getLogger(__name__)
MM = 1000.0
MARGIN = 10.0
LAYER_PITCH = 3.0


@dataclasses.dataclass(frozen=True)
class RibbonFeature:
    index: int
    layer: int
    centerline: np.ndarray  # (N, 2) display coordinates, mm
    half_width: np.ndarray  # (N,) mm
    reference: np.ndarray | None = None  # dashed line, defaults to the centerline


def _fmt(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


def _normals(points: np.ndarray) -> np.ndarray:
    """Left-hand unit normals of an (N, 2) polyline; vertical runs keep the last good normal"""
    tangents = np.gradient(points, axis=0) if len(points) > 2 else np.diff(points, axis=0)
    if len(tangents) < len(points):
        tangents = np.vstack([tangents, tangents[-1:]])

    normals = np.zeros_like(points)
    last = np.array([0.0, 1.0])
    for index, (dx, dy) in enumerate(tangents):
        length = np.hypot(dx, dy)
        if length > 1e-12:
            last = np.array([-dy, dx]) / length
        normals[index] = last
    return normals


def _ribbon_path(feature: RibbonFeature, to_svg) -> str:
    normals = _normals(feature.centerline)
    offset = normals * feature.half_width[:, None]
    outline = np.vstack([feature.centerline + offset, (feature.centerline - offset)[::-1]])
    points = [to_svg(point) for point in outline]
    head, *tail = points
    return f"M{head} " + " ".join(f"L{point}" for point in tail) + " Z"


def _render(features: list[RibbonFeature], title: str, subtitle: str) -> str:
    if not features:
        raise InvalidInputError("Nothing to render: no printed features")

    stacked = np.vstack([feature.centerline for feature in features])
    reach = max(float(feature.half_width.max()) for feature in features)
    low = stacked.min(axis=0) - reach
    high = stacked.max(axis=0) + reach
    top_height = high[1] - low[1] + 2 * MARGIN
    width = high[0] - low[0] + 2 * MARGIN

    def to_svg(point: np.ndarray) -> str:
        x = point[0] - low[0] + MARGIN
        y = high[1] - point[1] + MARGIN
        return f"{_fmt(x)},{_fmt(y)}"

    side_view = None
    height = top_height
    if any(feature.layer > 0 for feature in features):
        layers = max(feature.layer for feature in features)
        side_view = {
            "offset": _fmt(top_height + MARGIN),
            "bars": [
                {
                    "layer": feature.layer,
                    "x1": _fmt(feature.centerline[:, 0].min() - low[0] + MARGIN),
                    "x2": _fmt(feature.centerline[:, 0].max() - low[0] + MARGIN),
                    "y": _fmt((layers - feature.layer) * LAYER_PITCH),
                }
                for feature in features
            ],
        }
        height = top_height + 2 * MARGIN + layers * LAYER_PITCH + MARGIN

    context = {
        "title": title,
        "subtitle": subtitle,
        "width": _fmt(width),
        "height": _fmt(height),
        "margin": _fmt(MARGIN),
        "label_y": _fmt(MARGIN - 2),
        "features": [
            {
                "index": feature.index,
                "layer": feature.layer,
                "ribbon": _ribbon_path(feature, to_svg),
                "centerline": " ".join(
                    to_svg(point)
                    for point in (
                        feature.centerline if feature.reference is None else feature.reference
                    )
                ),
            }
            for feature in features
        ],
        "side_view": side_view,
    }
    template_path = settings.TEMPLATE_PATH / "svg" / "placement.svg"
    with open(template_path, encoding="utf-8") as f:
        template = Template(f.read(), trim_blocks=True)

    return template.render(**context)


def render_program(program: MotionProgram) -> str:
    """Top view of the planned tape ribbons (plus a side view for layered programs)"""
    features = []
    for meta in program.features:
        positions = program.laying_frames(meta.index)[0]
        features.append(
            RibbonFeature(
                index=meta.index,
                layer=meta.layer,
                centerline=positions[:, :2] * MM,
                half_width=np.full(len(positions), meta.width / 2 * MM),
            )
        )

    logger.debug("Rendering program '%s' (%i feature(s))", program.design_name, len(features))
    return _render(features, title=program.design_name, subtitle=f"planned, {program.mode} mode")


def render_outcome(outcome: PlacementOutcome, scale: float = settings.SVG_DEVIATION_SCALE) -> str:
    """
    As-placed ribbons with lateral and width deviations exaggerated by `scale`;
    the dashed line is the placed centerline with the lateral deviation removed.
    """
    features = []
    for placement in outcome.placements:
        centerline = placement.centerline[:, :2] * MM
        normals = _normals(centerline)
        lateral = placement.lateral_deviation[:, None] * MM
        planned = centerline - normals * lateral
        spread = (placement.width_profile - placement.nominal_width) * MM
        features.append(
            RibbonFeature(
                index=placement.feature,
                layer=placement.layer,
                centerline=planned + normals * lateral * scale,
                half_width=np.maximum(placement.nominal_width * MM + spread * scale, 1e-3) / 2,
                reference=planned,
            )
        )

    subtitle = f"as placed, seed {outcome.seed}, deviation x{scale:g}"
    return _render(features, title=f"outcome {outcome.program_id[:12]}", subtitle=subtitle)


def write_svg(svg: str, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(svg, encoding="utf-8")
    logger.info("SVG written to %s", path)
    return path
