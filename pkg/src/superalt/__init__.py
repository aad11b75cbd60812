"""Exact verification and construction toolkit for Z2-graded
hom-alternative and hom-prealternative structures."""

from .fields import QQ, FieldError, FpElement, PrimeField, RationalField
from .core import (
    EvenBilinear,
    EvenMap,
    SuperSpace,
    ValidationError,
    Vector,
    independent_columns,
    nullspace,
    solve_in_span,
)
from .laws import (
    DEFAULT_JORDAN_CYCLE,
    JORDAN_CYCLES,
    PRE_LAWS,
    PRODUCT_LAWS,
    HomAlgebra,
    HomPreAlgebra,
    HypothesisError,
    LawReport,
    calibrate_jordan,
    check_morphism,
    check_pre_law,
    check_product_law,
    hom_associator,
    law_identities,
    pre_associator,
    signed,
)
from .constructions import (
    DERIVED_N_CAP,
    alt_of,
    averaging_product,
    centroid_twist,
    derived_n,
    plus_jordan,
    rb_split,
    scale,
    tensor_alt,
    tensor_map,
    tensor_pairs,
    tensor_space,
    transpose,
    yau_twist,
)
from .operators import (
    OPERATOR_KINDS,
    OInduced,
    OperatorSpec,
    SearchResult,
    check_o_operator,
    check_operator,
    enumerate_even_maps,
    enumerate_signed_permutation_maps,
    o_induced,
    search_operators,
)
from .bimodules import (
    CALIBRATED_PBM_VARIANT,
    AltBimodule,
    PbmVariant,
    PreBimodule,
    calibrate_pre_bimodule,
    check_alt_bimodule,
    check_pre_bimodule,
    project_bimodule,
    rb_induced_bimodules,
    regular_bimodule,
    twist_bimodule,
)
from .corpus import (
    build_named,
    builtin_names,
    grassmann1,
    grassmann1_twisted,
    integration,
    jordan_calibration_instances,
    matrix_algebra,
    octonions,
    perturb_bilinear,
    perturb_pre,
    perturb_product,
    reduce_instance,
    reduce_map,
    sanity_table,
    standard_pre_instances,
    truncpoly,
    zero,
)

__version__ = "0.1.0"
