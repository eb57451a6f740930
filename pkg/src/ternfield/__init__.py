"""Exact computational algebra for unital 3-fields.

Fields here add three elements at a time: the carrier has a ternary addition
nu (a commutative ternary group) and a binary multiplication that makes the
whole carrier a group, with no additive zero anywhere.  The package builds
the classic examples (odd residues mod 2^n, odd rationals, truncated dyadics,
quotient polynomial fields, matrix and quaternion constructions), wraps every
field in its enveloping binary ring, and verifies the structural claims it
makes by exhaustive computation.
"""

from .ternary_kernel import (
    CarrierSizeError,
    FiniteThreeField,
    ProperThreeThreeField,
    StructureError,
    TernaryCarrier,
    Verdict,
    check_distributivity,
    check_ternary_group,
    detect_derived_structure,
    kernel_backend,
    odd_residue_field,
    quer_add,
    twisted_coset,
)
from .pair_envelope import (
    EnvelopeRing,
    Morphism,
    RingMorphism,
    RingTable,
    build_envelope,
    embedding_criterion,
    evenly_maximal_check,
    field_isomorphism,
    lift_morphism,
    quotient_by_ideal,
    residue_ring,
    retract_addition,
    ring_isomorphism,
    units_as_3field,
    universal_extension,
    verify_local,
)
from .dyadic import (
    DEFAULT_PRECISION,
    OddDenomRational,
    PrecisionError,
    QOddField,
    TruncatedDyadic,
    jn_membership,
    norm2_str,
    odd_rational,
    reduce_mod,
    val2,
)
from .poly_fields import (
    QuotientAlgebra,
    QuotientFieldSpec,
    TernaryPolynomial,
    build_f0,
    build_quotient_field,
    cardinality,
    completely_even,
    eval_hom,
    eval_hom_surjectivity,
    norm2,
    parity,
    prime_subfield,
    product_field,
    taylor_epimorphism,
)
from .automorphisms import (
    CompositionTable,
    automorphism_group,
    cayley_table,
    enumerate_endomorphisms,
    fingerprint_group,
    letter_label_map,
    truncation_morphism,
)
from .structures import (
    GroupAlgebraResult,
    MatrixFieldResult,
    QuaternionFieldResult,
    ThreeVectorSpace,
    cyclic_group,
    free_resolution,
    free_space,
    group_algebra,
    quaternion_conjugation_check,
    quaternion_field,
    quaternion_inverse_check,
    quotient_field_space,
    toeplitz_field,
    triangular_field,
    vector_power_space,
)

__version__ = "0.1.0"

__all__ = [
    "CarrierSizeError",
    "CompositionTable",
    "DEFAULT_PRECISION",
    "EnvelopeRing",
    "FiniteThreeField",
    "GroupAlgebraResult",
    "MatrixFieldResult",
    "Morphism",
    "OddDenomRational",
    "PrecisionError",
    "ProperThreeThreeField",
    "QOddField",
    "QuaternionFieldResult",
    "QuotientAlgebra",
    "QuotientFieldSpec",
    "RingMorphism",
    "RingTable",
    "StructureError",
    "TernaryCarrier",
    "TernaryPolynomial",
    "ThreeVectorSpace",
    "TruncatedDyadic",
    "Verdict",
    "automorphism_group",
    "build_envelope",
    "build_f0",
    "build_quotient_field",
    "cardinality",
    "cayley_table",
    "check_distributivity",
    "check_ternary_group",
    "completely_even",
    "cyclic_group",
    "detect_derived_structure",
    "embedding_criterion",
    "enumerate_endomorphisms",
    "eval_hom",
    "eval_hom_surjectivity",
    "evenly_maximal_check",
    "field_isomorphism",
    "fingerprint_group",
    "free_resolution",
    "free_space",
    "group_algebra",
    "jn_membership",
    "kernel_backend",
    "letter_label_map",
    "lift_morphism",
    "norm2",
    "norm2_str",
    "odd_rational",
    "odd_residue_field",
    "parity",
    "prime_subfield",
    "product_field",
    "quaternion_conjugation_check",
    "quaternion_field",
    "quaternion_inverse_check",
    "quer_add",
    "quotient_by_ideal",
    "quotient_field_space",
    "reduce_mod",
    "residue_ring",
    "retract_addition",
    "ring_isomorphism",
    "taylor_epimorphism",
    "toeplitz_field",
    "triangular_field",
    "truncation_morphism",
    "twisted_coset",
    "units_as_3field",
    "universal_extension",
    "val2",
    "vector_power_space",
    "verify_local",
    "__version__",
]
