"""Exact rational polyhedral kernel: H/V conversion, faces, projections, cones, distances."""

from lctpoly.exactgeom.linalg import Vector, dot, fmt_q, q, qvec
from lctpoly.exactgeom.polytope import (
    HalfSpace,
    HPolytope,
    VRep,
    cone_from,
    contains,
    contains_point,
    dimension,
    hausdorff_distance,
    intersect,
    project,
    project_vrep,
    ray_exit,
    squared_distance_to,
    vertex_enumerate,
)

__all__ = [
    "HalfSpace",
    "HPolytope",
    "VRep",
    "Vector",
    "cone_from",
    "contains",
    "contains_point",
    "dimension",
    "dot",
    "fmt_q",
    "hausdorff_distance",
    "intersect",
    "project",
    "project_vrep",
    "q",
    "qvec",
    "ray_exit",
    "squared_distance_to",
    "vertex_enumerate",
]
