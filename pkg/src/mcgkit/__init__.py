"""mcgkit: exact curves, mapping classes and compression-body certificates."""

from .surface import Triangulation, SurfaceError, build_torus
from .curves import NormalMulticurve, CurveError, NonEmbedded, slope_curve

__all__ = [
    "Triangulation", "SurfaceError", "build_torus",
    "NormalMulticurve", "CurveError", "NonEmbedded", "slope_curve",
]
