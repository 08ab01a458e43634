"""Exact-arithmetic gauge computations for Maurer-Cartan elements in
weight-nilpotent graded Lie and associative algebras, with four independent
computation routes and verification tooling.

All values are immutable after construction and all operations are pure
functions, so everything here is safe to share across threads and to
evaluate in parallel over independent inputs.
"""

from .errors import (
    AlgebraError,
    ArityError,
    DegreeError,
    DivergenceError,
    InvalidInputError,
    InvertibilityError,
    KindError,
    NotMaurerCartanError,
    ParseError,
)
from .freealg import (
    DerivationTable,
    FreeAlgebra,
    FreeAlgebraElement,
    FreeGenerator,
    RepresentingAlgebra,
    apply_derivation,
    bracket_derivation,
    build_cylinder,
    build_representing,
    commutative_projection,
    cylinder_gauge,
    embed_linear,
    evaluate_against,
    evaluation_derivation,
    exp_bracket_derivation,
    exp_derivation,
    gauge_via_exp,
    tensor_envelope,
)
from .gauge import (
    CheckReport,
    LSPresentation,
    SullivanReport,
    WitnessReport,
    bch,
    bernoulli,
    dynkin_image,
    evaluate_lie,
    exp_assoc,
    gauge_closed,
    gauge_dga,
    gauge_trees_A,
    gauge_trees_L,
    graded_commutator,
    homotopy_witness_check,
    invert_unital,
    lie_projection_residue,
    log_assoc,
    ls_interval,
    sullivan_witness,
    verify_ls,
)
from .graded import (
    GradedElement,
    Generator,
    antisymmetry_sign,
    canonical_key,
    canonicalize,
    homogeneous_components,
    koszul_sign,
    rat,
    suspend,
)
from .specfile import (
    SpecDocument,
    parse_spec,
    render_document,
    render_element,
    render_word_element,
)
from .structure import (
    AlgebraSpec,
    PolyPath,
    StructureReport,
    commutator_dgla,
    eval_bracket,
    is_maurer_cartan,
    mc_defect,
    mc_defect_poly,
    suspended_op,
    validate_structure,
)
from .trees import (
    Labelling,
    PlanarTree,
    RootedTree,
    enumerate_planar,
    enumerate_trees,
    labellings,
    linear_extensions_brute,
    monotone_count,
    tree_coefficient,
    tree_word_A,
    tree_word_L,
)

__version__ = "0.1.0"
