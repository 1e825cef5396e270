"""Special subvarieties from families of abelian covers of the projective line."""

from .classifier import (
    ClassificationReport,
    SfVsSG,
    Verdict,
    classify,
    decomposable_structure_check,
    expected_special_dim_decomposable,
    possible_sf_dims,
    star_condition,
    tutti_diversi,
)
from .groups import (
    AbelianGroup,
    Automorphism,
    Character,
    automorphisms,
    char_fraction,
    characters,
    conjugate,
    element_order,
    is_self_conjugate,
    make_group,
)
from .hodge import (
    EigenspaceProfile,
    FactorLabel,
    FactorMultiset,
    conjugation_pair_sum,
    delta,
    dim_SG,
    dim_sym_square_invariants,
    eigenspace_multiplicities,
    factors,
)
from .monodromy import (
    MonodromyDatum,
    ValidatedDatum,
    canonical_form,
    dim_family,
    enumerate_data,
    genus,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "Automorphism",
    "Character",
    "ClassificationReport",
    "EigenspaceProfile",
    "FactorLabel",
    "FactorMultiset",
    "MonodromyDatum",
    "SfVsSG",
    "ValidatedDatum",
    "Verdict",
    "automorphisms",
    "canonical_form",
    "char_fraction",
    "characters",
    "classify",
    "conjugate",
    "conjugation_pair_sum",
    "decomposable_structure_check",
    "delta",
    "dim_SG",
    "dim_family",
    "dim_sym_square_invariants",
    "eigenspace_multiplicities",
    "element_order",
    "enumerate_data",
    "expected_special_dim_decomposable",
    "factors",
    "genus",
    "is_self_conjugate",
    "make_group",
    "possible_sf_dims",
    "star_condition",
    "tutti_diversi",
    "validate",
]
