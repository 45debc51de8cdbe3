"""Exact tools for simple extensions of polytopes and the lower bounds on their size."""

from .errors import SimplextError
from .graph import SkeletonGraph
from .polytope import HPolytope, VPolytope, enumerate_vertices, face_lattice, facet_description, skeleton

__version__ = "0.1.0"

__all__ = [
    "HPolytope",
    "SimplextError",
    "SkeletonGraph",
    "VPolytope",
    "enumerate_vertices",
    "face_lattice",
    "facet_description",
    "skeleton",
]
