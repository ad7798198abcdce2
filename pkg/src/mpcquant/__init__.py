"""Equivariance checks, momentum shifts, and quantized energy levels for
Hamiltonian torus actions on metaplectic-c prequantizable symplectic
manifolds, with a floating-point holonomy cross-check on explicit models."""

from .equivariance import (
    EquivarianceReport,
    FixedPointDatum,
    SystemData,
    check_equivariance,
    defect,
    half_sum,
    shifted_system,
    solve_shift,
    transform_system,
)
from .exact import Covector, UnimodularMatrix, frac_part, is_integral, rat
from .holonomy import (
    OrbitSpec,
    closed_form_holonomy,
    is_quantized_via_holonomy,
    numeric_mpc_holonomy,
    orbit_action_integral,
    orbit_spec_for_level,
)
from .models import (
    OscillatorSpec,
    ProjectiveSpec,
    oscillator,
    oscillator_t1,
    oscillator_tn,
    projective_space,
    solved_constant,
    standard_basis,
)
from .mpc import (
    ParameterPair,
    SymplecticMatrix,
    c_map,
    det_c,
    halfform_phase,
    track_sqrt,
)
from .spectrum import (
    Halfspace,
    MomentumPolyhedron,
    QuantizedLevel,
    ReductionReport,
    Region,
    classify_value,
    count_levels,
    hull_from_fixed_points,
    quantized_levels,
    reduction_report,
)

__version__ = "0.1.0"

__all__ = [
    "Covector",
    "EquivarianceReport",
    "FixedPointDatum",
    "Halfspace",
    "MomentumPolyhedron",
    "OrbitSpec",
    "OscillatorSpec",
    "ParameterPair",
    "ProjectiveSpec",
    "QuantizedLevel",
    "ReductionReport",
    "Region",
    "SymplecticMatrix",
    "SystemData",
    "UnimodularMatrix",
    "c_map",
    "check_equivariance",
    "classify_value",
    "closed_form_holonomy",
    "count_levels",
    "defect",
    "det_c",
    "frac_part",
    "half_sum",
    "halfform_phase",
    "hull_from_fixed_points",
    "is_integral",
    "is_quantized_via_holonomy",
    "numeric_mpc_holonomy",
    "orbit_action_integral",
    "orbit_spec_for_level",
    "oscillator",
    "oscillator_t1",
    "oscillator_tn",
    "projective_space",
    "quantized_levels",
    "rat",
    "reduction_report",
    "shifted_system",
    "solve_shift",
    "solved_constant",
    "standard_basis",
    "track_sqrt",
    "transform_system",
]
