"""Exact matroid depth parameters, contraction*-decompositions and their
tamed-set extensions."""

from .decomposition import (
    SearchReport,
    StarDecomposition,
    csd,
    csd_search,
    elements_under,
    is_valid,
    valid_decompositions,
)
from .depth import (
    altered_contraction_depth,
    altered_deletion_depth,
    contraction_depth,
    csd_gf2_quotient,
    deletion_depth,
    depth,
    depth_witness,
)
from .io import format_matroid, parse_matroid, read_matroid, write_matroid
from .matroid import (
    ComponentPartition,
    ElementKind,
    ExplicitMatroid,
    GF2Matroid,
    GraphicMatroid,
    InputError,
    Matroid,
    MinorView,
    DualView,
    ParseError,
    ResourceError,
    UniformMatroid,
    circuits,
    classify,
    components,
    direct_sum,
    dual,
    elements_of,
    free_matroid,
    mask_of,
    minor,
    restrict,
)
from .tamed import (
    ExtendedSet,
    TamedExtension,
    TamingRules,
    TokenLedger,
    distribute,
    extension,
    is_tamed,
    token_assignment,
    token_ledger,
)
from .tree import RootedTree, rooted_trees

__version__ = "0.1.0"
