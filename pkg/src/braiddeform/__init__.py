"""Deformations of the braid arrangement: region counts via trees, sketches and series."""

from __future__ import annotations

from .core import (
    DeformationSpec,
    Hyperplane,
    Region,
    Sign,
    Vertex,
    characteristic,
    parse_offsets,
    rank,
    sign_vector,
    tutte_from_coboundary,
    zaslavsky,
)
from .count import (
    coboundary_from_trees,
    is_transitive_set,
    signed_region_count,
    unsigned_region_count,
)
from .errors import BraidDeformError
from .poly import Poly
from .series import ExpSeries
from .trees import PlaneTree, enumerate_trees, family, tree_count

__all__ = [
    "BraidDeformError",
    "DeformationSpec",
    "ExpSeries",
    "Hyperplane",
    "PlaneTree",
    "Poly",
    "Region",
    "Sign",
    "Vertex",
    "characteristic",
    "coboundary_from_trees",
    "enumerate_trees",
    "family",
    "is_transitive_set",
    "parse_offsets",
    "rank",
    "sign_vector",
    "signed_region_count",
    "tree_count",
    "tutte_from_coboundary",
    "unsigned_region_count",
    "zaslavsky",
]
