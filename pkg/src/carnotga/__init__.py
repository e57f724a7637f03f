"""Geometric-algebra steering toolkit for two step-2 Carnot group models."""

from .errors import (
    AntipodalVectors,
    CarnotGAError,
    DegenerateConfiguration,
    DependentVectors,
    FlagMismatch,
    InfeasibleTarget,
    NearZeroNorm,
    RotorDomain,
)
from .flags import (
    Flag,
    FramePair,
    align_bases,
    align_flags,
    flag_from_basis,
    frame_flag_36,
    frame_flag_47,
    rotor_between_vectors,
)
from .ga import (
    Multivector,
    Rotor,
    blade_index,
    blade_name,
    dual,
    geometric_product,
    grade_project,
    inner_product,
    norm,
    normalize,
    outer_product,
    pseudoscalar,
    reverse,
    sandwich,
)
from .models import (
    GeodesicParams36,
    GeodesicParams47,
    Invariants36,
    Invariants47,
    Model,
    Model36Point,
    Model47Point,
    fiber_solution_36,
    fiber_solution_47,
    group_inverse_36,
    group_inverse_47,
    group_product_36,
    group_product_47,
    invariant_closed_forms,
    invariants,
    invariants_36,
    invariants_47,
    omega_matrix,
    representative_geodesic_36,
    representative_geodesic_47,
    so3_action,
)
from .solver import (
    SolveRequest,
    SolveResult,
    SolveSolution,
    aligned_fiber_inputs,
    residual,
    rk4_endpoint,
    solve,
)
from .steering import (
    SteerOptions,
    SteerReport,
    compute_invariants,
    point_from_blade_map,
    point_to_blade_map,
    report_to_dict,
    steer,
    verify_report,
)

__version__ = "0.1.0"

__all__ = [
    "AntipodalVectors",
    "CarnotGAError",
    "DegenerateConfiguration",
    "DependentVectors",
    "Flag",
    "FlagMismatch",
    "FramePair",
    "GeodesicParams36",
    "GeodesicParams47",
    "InfeasibleTarget",
    "Invariants36",
    "Invariants47",
    "Model",
    "Model36Point",
    "Model47Point",
    "Multivector",
    "NearZeroNorm",
    "Rotor",
    "RotorDomain",
    "SolveRequest",
    "SolveResult",
    "SolveSolution",
    "SteerOptions",
    "SteerReport",
    "align_bases",
    "align_flags",
    "aligned_fiber_inputs",
    "blade_index",
    "blade_name",
    "compute_invariants",
    "dual",
    "fiber_solution_36",
    "fiber_solution_47",
    "flag_from_basis",
    "frame_flag_36",
    "frame_flag_47",
    "geometric_product",
    "grade_project",
    "group_inverse_36",
    "group_inverse_47",
    "group_product_36",
    "group_product_47",
    "inner_product",
    "invariant_closed_forms",
    "invariants",
    "invariants_36",
    "invariants_47",
    "norm",
    "normalize",
    "omega_matrix",
    "outer_product",
    "point_from_blade_map",
    "point_to_blade_map",
    "pseudoscalar",
    "report_to_dict",
    "representative_geodesic_36",
    "representative_geodesic_47",
    "residual",
    "reverse",
    "rk4_endpoint",
    "rotor_between_vectors",
    "sandwich",
    "so3_action",
    "solve",
    "steer",
    "verify_report",
]
