"""Exact Poisson-type Lie bialgebras on Q[x, y] and their duals."""

from .core import (
    NEG_INF,
    DerivationSpec,
    Monomial,
    Polynomial,
    Tensor,
    Tensor2,
    Tensor3,
    derivation_bracket,
    euler_bracket,
    jacobi_defect,
    leibniz_defect,
    partial,
    poisson_bracket,
    poly_mul,
    tensor,
    virasoro_like_bracket,
)
from .dual import (
    CoeffSequence,
    DualFunctional,
    DualityOracle,
    DualTensor2,
    DualTensor3,
    GuardRingViolation,
    delta_closed,
    delta_mu,
    dual_bracket_bruteforce,
    mu_circ,
    pairing,
    pairing2,
    partial_circ,
    rational_series_coeffs,
    satisfies_recurrence,
    translate_space_dim,
)
from .coboundary import (
    JacobiPairError,
    RElement,
    adjoint_action2,
    co_jacobi_defect3,
    cobracket_r,
    cocycle_defect,
    cybe_defect,
    jacobi_pair_r,
)
from .closedforms import (
    TheoremParams,
    VerificationReport,
    closed_form_bracket,
    prop44_r_family,
    prop44_xy_family,
    random_params,
    thm42_bracket,
    thm43_bracket,
    thm45_bracket,
    thm46_bracket,
    verify_theorem,
)
from .parser import ParseError, parse_functional, parse_poly, parse_tensor

__version__ = "0.1.0"
