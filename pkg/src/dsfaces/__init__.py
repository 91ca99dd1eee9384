"""Exact arithmetic for face systems in a simplex.

Long and classical f/h-vectors, Dehn-Sommerville systems, the structured
matrices that relate them, six distinguished bases of R^(m+1), the fixed
spaces and cones of the reversal matrices, and a lattice-point engine for the
associated rational polytopes.  All computation is over exact integers and
rationals.
"""

__version__ = "0.1.0"

from .exact_linalg import (
    MATRIX_NAMES,
    MinorScanTooLargeError,
    SingularMatrixError,
    binom,
    build_matrix,
    char_poly_U,
    char_poly_U_product_form,
    inverse,
    is_totally_unimodular,
    krawtchouk_expansion,
    rank,
)
from .face_systems import (
    FaceSystem,
    FaceSystemFormatError,
    ambient_threshold,
    boundary_complex,
    classical_fh,
    is_complex,
    is_ds,
    is_ds_family,
    load_face_system,
    long_f,
    long_h,
    save_face_system,
)
from .bases import (
    BASIS_KINDS,
    basis_vectors,
    boundary_f,
    boundary_h,
    coords,
    fh_bar,
    six_bases,
    table1_entry,
    verify_table1,
)
from .spaces import (
    binomial_row,
    cone_generators,
    class_structure_verify,
    eigenspace_spanning,
    generator_image_check,
    generator_coords,
    hyperplane_spanning,
    in_cone,
    in_eigenspace,
    table23_entry,
)
from .polytopes import (
    PolytopeHandle,
    contains,
    default_bounds,
    multiplicity,
    prism_check,
)
from .enumeration import (
    CapExceededError,
    EnumerationReport,
    ds_fvectors,
    enumerate_eigen_lattice,
    genfun_identity_check,
    oracle_box,
    oracle_powerset,
    table4_row,
    total_ds_count,
)
from .projectors import (
    biorthogonality_check,
    line_projector,
    norm_sq,
    rank1_projector_entry,
    subspace_projector,
)
