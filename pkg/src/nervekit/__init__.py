"""Finite simplicial sets, bicategories, their nerves, actions and 2-torsors."""

from .errors import NervekitError, VerificationReport
from .simplicial import (
    SimplexTable,
    AugmentedSimplexTable,
    SimplicialMap,
    MonotoneMap,
    classify,
    factorize_monotone,
    horn_set,
    is_aspherical,
    kan_status,
    simplicial_kernel,
    validate_simplicial,
)
from .functors import build_contraction, coskeleton, decalage, skeleton, truncate
from .category import FiniteCategory, FiniteGroup
from .bicategory import FiniteBicategory, StrictHomomorphism, is_bigroupoid, validate_bicategory
from .nerve import classical_nerve, cocycle_check, duskin_nerve, nerve_map
from .action import BicatAction, FiberedAction, action_bicategory, canonical_projection, validate_action
from .torsor import (
    TorsorCandidate,
    build_torsor,
    check_torsor_axioms,
    decalage_comparison,
    is_exact_fibration,
    is_simplicial_action,
    verify_glenn_torsor,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentedSimplexTable",
    "BicatAction",
    "FiberedAction",
    "FiniteBicategory",
    "FiniteCategory",
    "FiniteGroup",
    "MonotoneMap",
    "NervekitError",
    "SimplexTable",
    "SimplicialMap",
    "StrictHomomorphism",
    "TorsorCandidate",
    "VerificationReport",
    "action_bicategory",
    "build_contraction",
    "build_torsor",
    "canonical_projection",
    "check_torsor_axioms",
    "classical_nerve",
    "classify",
    "cocycle_check",
    "coskeleton",
    "decalage",
    "decalage_comparison",
    "duskin_nerve",
    "factorize_monotone",
    "horn_set",
    "is_aspherical",
    "is_bigroupoid",
    "is_exact_fibration",
    "is_simplicial_action",
    "kan_status",
    "nerve_map",
    "simplicial_kernel",
    "skeleton",
    "truncate",
    "validate_action",
    "validate_bicategory",
    "validate_simplicial",
    "verify_glenn_torsor",
]
