"""Exact computations with affine semigroups and their Demazure roots."""

from .lattice import (
    LatticeError,
    hermite_normal_form,
    minimal_embedding,
    pairing,
    primitive,
)
from .cones import Cone, IntBox, SlicePolyhedron, cone_from_generators, dual
from .semigroup import (
    AffineSemigroup,
    APFamily,
    HilbertBasis,
    SemigroupError,
)
from .roots import (
    RootCheck,
    RootSet,
    RootWitness,
    is_root,
    is_root_saturated,
    reconstruct_saturation_from_roots,
    root_set,
    root_subset,
    roots_in_box,
)
from .algebra import AlgebraElement, DerivationSpec
from .classify import Classification, SlFamily, classify, emit_sl_family, explore_same_roots

__version__ = "0.1.0"

__all__ = [
    "AffineSemigroup",
    "AlgebraElement",
    "APFamily",
    "Classification",
    "Cone",
    "DerivationSpec",
    "HilbertBasis",
    "IntBox",
    "LatticeError",
    "RootCheck",
    "RootSet",
    "RootWitness",
    "SemigroupError",
    "SlFamily",
    "SlicePolyhedron",
    "classify",
    "cone_from_generators",
    "dual",
    "emit_sl_family",
    "explore_same_roots",
    "hermite_normal_form",
    "is_root",
    "is_root_saturated",
    "minimal_embedding",
    "pairing",
    "primitive",
    "reconstruct_saturation_from_roots",
    "root_set",
    "root_subset",
    "roots_in_box",
]
