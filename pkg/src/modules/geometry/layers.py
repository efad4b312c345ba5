import numpy as np

from modules.geometry.models import LayerStack, LayerPlacement
from modules.geometry.paths import rotation_about_z

__all__ = ["expand_layers"]


def _strand_direction(stack: LayerStack) -> np.ndarray:
    """In-plane unit vector perpendicular to the base chord (x-axis chord for closed paths)"""
    chord = stack.base.end - stack.base.start
    chord[2] = 0.0
    if stack.base.closed or np.linalg.norm(chord) < 1e-12:
        chord = np.array([1.0, 0.0, 0.0])

    chord /= np.linalg.norm(chord)
    return np.array([-chord[1], chord[0], 0.0])


def expand_layers(stack: LayerStack) -> list[LayerPlacement]:
    """
    Layer k is lifted by k * layer_height and rotated by (k mod 2) * alternate_rotation
    about the vertical axis through the base's bounding-box centre.
    Placements are ordered by layer, then strand.
    """
    base = stack.base
    pivot = (base.samples.min(axis=0) + base.samples.max(axis=0)) / 2
    pivot[2] = 0.0
    across = _strand_direction(stack)
    shifts = (np.arange(stack.strands) - (stack.strands - 1) / 2) * stack.strand_pitch

    placements = []
    for layer in range(stack.layer_count):
        rotation = (layer % 2) * stack.alternate_rotation
        matrix = rotation_about_z(rotation)
        z_offset = layer * stack.layer_height
        for strand, shift in enumerate(shifts):
            # rotate about the pivot: R (p - pivot) + pivot, then lift
            translation = pivot - matrix @ pivot + matrix @ (across * shift)
            translation = translation + np.array([0.0, 0.0, z_offset])
            placements.append(
                LayerPlacement(
                    path=base.transformed(matrix, translation),
                    z_offset=float(z_offset),
                    rotation=float(rotation),
                    layer=layer,
                    strand=strand,
                )
            )

    return placements
