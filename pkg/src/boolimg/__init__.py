"""Deciding when finite set families are realizable as pseudoclopens of a connected compactum."""

from .atomgraph import AtomGraph, build_graph, components, describe, is_connected, project, to_dot
from .decide import (
    algebra_meet,
    extract_chain_disjoint,
    extract_pi_sequence,
    has_pivot_hereditarily,
    is_irredundant,
    is_realizable,
    is_realizable_exhaustive,
    is_strongly_irredundant,
    verify_partition_property,
)
from .errors import BoundExceeded, FormatError, PostconditionError
from .family import CubeSpace, SetFamily, canonicalize, cube_form, product_family, signatures
from .witness import build_witness, canonical_pseudoclopens, decompose_along_path, verify_isomorphism

__version__ = "0.1.0"

__all__ = [
    "AtomGraph",
    "BoundExceeded",
    "CubeSpace",
    "FormatError",
    "PostconditionError",
    "SetFamily",
    "algebra_meet",
    "build_graph",
    "build_witness",
    "canonical_pseudoclopens",
    "canonicalize",
    "components",
    "cube_form",
    "decompose_along_path",
    "describe",
    "extract_chain_disjoint",
    "extract_pi_sequence",
    "has_pivot_hereditarily",
    "is_connected",
    "is_irredundant",
    "is_realizable",
    "is_realizable_exhaustive",
    "is_strongly_irredundant",
    "product_family",
    "project",
    "signatures",
    "to_dot",
    "verify_isomorphism",
    "verify_partition_property",
]
