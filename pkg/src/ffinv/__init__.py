"""Compositional inverses of permutation polynomials over finite field towers."""

from .errors import (
    FFInvError,
    BadExponent,
    DeskScaleExceeded,
    HypothesisViolated,
    NoSolution,
    NoSuitableRoot,
    NotPermutation,
    OracleMismatch,
    SingularDickson,
    TraceZero,
    ZeroC,
)
from .ff_core import FieldTower, build_tower, get_tower, parse_field_spec
from .poly import (
    Poly,
    brute_inverse,
    compose_mod,
    functions_equal,
    interpolate,
    is_permutation,
    restricted_inverse_table,
)
from .subspace import SubspaceBasis, kernel, image, s_psi, projection_idempotent
from .linearized import (
    LinPoly,
    circulant_subspace_inverse,
    count_idempotents,
    dickson_det,
    dickson_matrix,
    enumerate_idempotents,
    ker_trace_alpha_inverse,
    lin_compose,
    lin_inverse_full,
    pc_kernel_inverse,
    pc_polynomial,
    subspace_inverse,
)
from .formulas import (
    AgwInstance,
    InverseCertificate,
    MultiTermInverter,
    check_agw_conditions,
    invert_agw_general,
    invert_additive_case,
    invert_bilinear_general,
    invert_l1l2,
    invert_nice2,
    invert_q2_powerQ,
    invert_shifted_frobenius,
    invert_trace_translate,
    preimage_multiterm,
)

__version__ = "1.0.0"
