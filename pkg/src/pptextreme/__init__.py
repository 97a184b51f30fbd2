"""Extreme points of the convex set of bipartite density matrices with positive partial transpose."""

from .bipartite import (
    BipartiteDims,
    DensityMatrix,
    NotDensityMatrixError,
    NotPPTError,
    density_matrix,
    is_ppt,
    partial_transpose,
    product_state,
    rank_pair,
)
from .catalog import NamedState, bell_state, by_name, horodecki_state, maximally_mixed, pure_product, upb_tiles_state
from .extremality import ExtremalityReport, Verdict, check_rank_bound, is_pure_product, test_extremality
from .linalg import (
    DEFAULT_TOL,
    SpectralDecomposition,
    Tolerances,
    image_projector,
    is_psd,
    numerical_rank,
    spectral_decompose,
)
from .mspace import basis, combined_operator, conjugation_superop, devectorize, pt_superop, vectorize
from .search import (
    BorderlineSpectrumError,
    SearchError,
    SearchTrace,
    convex_split,
    find_extreme,
    line_search_to_boundary,
    random_face_direction,
    rank_survey,
    traceless_direction,
)
from .sections import Region, SectionSpec, face_section, locate_joins, sample_section, section_through, trace_face_section

__version__ = "0.1.0"
