"""Exact computations with ternary omega-Lie algebras over Q(zeta_24)."""

from .scalar import (
    I,
    OMEGA,
    OMEGA_BAR,
    ONE,
    SQRT2,
    SQRT3,
    ZERO,
    ZETA,
    CycNum,
    ParseError,
    cyc_conj,
    cyc_embed,
    cyc_format,
    cyc_parse,
)
from .perms import SIGMA, TAU, Perm5, check_presentation, compose, cyclic_sum, generate_subgroup, inverse
from .algebra import (
    BRACKETS,
    CONJUGATE_BRACKET,
    OMEGA_BRACKET,
    PRODUCT_BRACKET,
    REDUCED_BRACKET,
    BasisError,
    Bracket,
    ClosureError,
    Element,
    ShapeError,
    StructureTensor,
    TernaryAlgebra,
    assoc_q,
    assoc_t,
    commutativity_type,
    conj_commutator,
    omega_commutator,
    reduced_commutator,
    structure_constants,
    ternary_product,
    transform_constants,
)
from .laws import (
    LawReport,
    check_assoc,
    check_construction_conditions,
    check_ga15_identity,
    check_ga15_system,
    check_omega_symmetry,
)
from .zoo import (
    ConstructionError,
    CubicMatrix,
    FiniteRelation,
    G_elements,
    algebra_from_descriptor,
    canonical_G_basis,
    cubic_algebra,
    cubic_scalar_trace_algebra,
    cubic_trace,
    make_algebra_from_form,
    random_algebra,
    rect_algebra,
    relation_ternary,
    vector_algebra,
)
from .subalg import (
    DimensionError,
    Subspace,
    canonical_2dim,
    classify_2dim,
    classify_constants_2dim,
    direct_sum_report,
    find_isomorphism,
    induced_constants,
    is_abelian,
    is_ideal,
    is_subalgebra,
)

__version__ = "0.1.0"
