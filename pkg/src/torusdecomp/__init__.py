"""Exact symbolic toolkit for torus decompositions of plane quartics.

Everything runs over explicit towers of rational extensions with exact
arithmetic; no floats anywhere.
"""

__version__ = "0.1.0"

from .fieldtower import (
    FieldTower,
    FieldElement,
    ExtensionStep,
    QQ,
    tower_extend,
    lift,
    invert,
    try_invert,
    exact_quotient,
    equals,
    TowerError,
    DuplicateName,
    NonMonicMinpoly,
    TowerMismatch,
    ZeroDivisor,
    NotInvertible,
)
from .polyring import (
    PolyRing,
    MultiPoly,
    ProjectiveTransform,
    PolyError,
    InexactDivision,
    SingularTransform,
    exact_divide,
    substitute,
    specialize,
    transform,
    partial_derivative,
    evaluate,
    resultant,
    gcd_multi,
    factor_linear,
)
from .localsing import (
    ProjPoint,
    LocalType,
    LocalIncidence,
    QLClass,
    SingularLocus,
    SingError,
    NonReducedCurve,
    NonIsolated,
    LineContained,
    InvalidIncidence,
    PointNotOnCurve,
    UnresolvedSingularLocus,
    affine_germ,
    multiplicity,
    milnor_number,
    line_intersection_multiplicity,
    classify_singularity,
    singular_points,
    conic_rank,
    lemma_oracle_visible,
    lemma_oracle_invisible23,
    lemma_oracle_invisible24,
    type_label,
    classify_QL,
    TABLE_ROWS,
    NONEXISTENT_ROWS,
)
from .torusdec import (
    DecompositionError,
    NonMonomialResidual,
    CurveNotPreserved,
    BaseIdentityFails,
    ZeroC,
    QuasiTorusDecomposition,
    verify_quasi,
    VisibleFactorization,
    expand_visible,
    VisibleQuarticDecomposition,
    verify_visible_quartic,
    InvisibleData23,
    InvisibleData24,
    build_invisible_23,
    build_invisible_24,
    solve_visible_quartic,
    transform_decomposition,
    canonicalize_visible,
    quasi_step,
    quasi_chain,
    QuasiChain,
)
from .degen import (
    KConditionFails,
    BasePointMultiplicityFails,
    decomposition_radical_parts,
    SexticFamily,
    build_sextic_family,
    QuarticFamily,
    quartic_family,
    family_specialize,
    is_reduced,
    degeneration_check,
    FAMILY_CLAIMS,
    BEST_EFFORT_FAMILIES,
)
from .catalog import (
    CatalogEntry,
    UnknownEntry,
    catalog_list,
    catalog_verify,
)
