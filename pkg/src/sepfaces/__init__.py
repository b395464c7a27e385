"""Numerical geometry of separable quantum states.

Faces of the separable body measured by sampled spans, the group of partial
transposes and the PPT / fullness tests built on it, a one-parameter family
of optimal entanglement witnesses on two qutrits with the cyclic inequality
behind its positivity, a catalog of boundary states, and exact enumeration of
product vectors in generic subspaces of 2 x m systems.
"""

from .shapes import (
    HermOp,
    ProductVector,
    ShapeMismatchError,
    SystemShape,
    compose,
    expand,
    gauge_fix,
    product_projector,
    pure_state,
    sample_product_vector,
    symmetric_projector,
)
from .hermspace import (
    DEFAULT_TOL,
    EigenData,
    TolPolicy,
    TransposeMask,
    all_masks,
    eigh,
    herm_from_json,
    herm_to_json,
    is_full,
    is_ppt,
    is_psd,
    numerical_rank,
    partial_transpose,
    principal_minor_sums,
    real_span_rank,
)
from .faces import (
    FaceDimReport,
    HyperplaneSpec,
    count_generic_pv,
    face_dim_hyperplane,
    face_of_pair,
    real_sym_subspace_dims,
    real_symmetric_face_dim,
    sample_pv_in_hyperplane,
    symmetric_face_dim,
    theta_basis,
)
from .witness import (
    CyclicParams,
    WitnessFamilyPoint,
    WitnessReport,
    analyze_witness,
    charpoly_check,
    cyclic_gap,
    make_wb,
    seesaw_min,
    w1_identity_check,
    xb_matrix,
    zero_set_recover,
)
from .catalog import (
    BoundaryCertificate,
    NamedState,
    boundary_certificate,
    compose_boundary,
    delta_simplex,
    full_boundary_from_pptes,
    make_named,
    separable_d_le_6,
)
from .pencil import (
    SubspaceSpec,
    build_pencil,
    enumerate_pv,
    example_pi_polytope,
    random_subspace,
)

__version__ = "0.1.0"
