"""Generalized principal logarithms in SVD-closed subgroups of U_n."""

from .config import Tolerances, tolerances, use_tolerances
from .errors import ToleranceError, UlogError, ValidationError
from .linalg import (
    EigenDecomp, UnitaryEigen, frob_inner, frob_norm, herm_eig, mat_exp_general, mat_exp_skew,
    principal_log_angle, unitary_eig,
)
from .svd import SvdSystem, rodrigues_exp, svd_decompose, verify_svd_system
from .embeddings import (
    apply_automorphism, canonical_matrix, decomplexify, quaternion_embed, shuffle_permutation,
)
from .jordan import centralizer_structure, real_jordan_form, twisted_structure
from .groups import GroupSpec, algebra_contains, algebra_sample, contains, haar_sample, parse_group_spec
from .plog import (
    PlogElement, PlogStructure, TorusLogSet, check_plog, component_of, orbit_sample, plog_in_group,
    plog_structure, plog_unitary, svd_reduce_log, tangent_rank, torus_plogs,
)
from .geodesy import Geodesic, diameter, distance, geodesic_point, is_minimizing, minimizing_geodesics

__version__ = "0.1.0"
