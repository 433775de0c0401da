"""Geometry of monic conjugate-reciprocal polynomials with unit-circle roots."""

from .basis import (
    BasisMatrix,
    build_basis,
    cr_relation_residual,
    cr_to_real,
    norm_preservation_check,
    real_to_cr,
)
from .errors import (
    DimensionMismatchError,
    ImaginaryResidueError,
    InvalidDegreeError,
    NotConjugateReciprocalError,
    NumericFailure,
    OffCircleError,
    ToleranceDisagreement,
)
from .membership import (
    BOUNDARY,
    EXTERIOR,
    INTERIOR,
    MembershipVerdict,
    Partition,
    RootSample,
    classify,
    classify_batch,
    classify_partition,
    coefficient_bound_exceeded,
    coefficient_bounds,
    equal_up_to_reflection,
    partition_reduce,
    precedes,
    reduce_closure,
    real_coords_from_roots_batch,
    sample_points,
    sample_root_vector,
    sample_root_vectors,
)
from .polyroots import (
    coeffs_from_roots,
    coeffs_from_roots_batch,
    discriminant,
    discriminant_from_roots,
    roots_from_coeffs,
    roots_from_coeffs_batch,
    unit_circle_residual,
)
from .symmetry import (
    binomial_kernel,
    binomial_kernel_selfconv,
    conjugation_action,
    dihedral_group,
    parseval_distance,
    rotation_action,
    vertex,
    vertex_distance_squared,
    vertex_span_determinant,
    vertices,
    verify_isometry,
)
from .tolerances import Tolerances, default_tolerances
from .volume import (
    VolumeEstimate,
    boundary_curve,
    boundary_projection,
    circumscribed_radius,
    coefficient_map,
    jacobian_abs,
    jacobian_abs_batch,
    jacobian_fd_check,
    jacobian_omega_invariance,
    log_jacobian_abs,
    volume_closed_form,
    volume_mc_hit,
    volume_mc_jacobian,
)

__version__ = "0.1.0"
