"""Sums of powers of binary Hermitian forms over the five Euclidean
imaginary quadratic rings, the transfer polynomials they satisfy, the
parabolic cocycle spaces those polynomials live in, and the exact special
values of the attached quadratic Dirichlet L-functions.
"""

from .cfrac import CFExpansion, hurwitz_cf, phi
from .field import (
    EUCLIDEAN_DS,
    FieldSpec,
    QuadElem,
    QuadInt,
    field,
    is_norm,
    kronecker,
    lattice_points_with_norm_below,
    nearest_int,
    nonnorm_deltas,
    smallest_nonnorm,
)
from .forms import (
    BiPoly,
    GroupElement,
    HermitianForm,
    act,
    alpha,
    alpha_direct,
    delta_forms,
    enumerate_window,
    expand_P,
    gen_S,
    gen_T,
    gen_T_omega,
    identity,
    translation,
)
from .hsum import (
    AverageReport,
    HEvalReport,
    ReductionCheck,
    average_quadrature,
    eval_exact,
    eval_truncated,
    formula_average,
    reduction_identity_check,
    tail_bound,
)
from .lfun import (
    CONSTANCY_SCOPE,
    LValue,
    bench_negative,
    l_closed_form,
    functional_equation_negative,
    generalized_bernoulli,
    l_negative_exact,
    l_positive_numeric,
    local_count_coeffs,
    local_factor,
    r_count,
    r_count_naive,
    theta,
    zseries_closed_form,
    zseries_partial,
)
from .linalg import quad_kernel, quad_rank_modular
from .polyspace import (
    SubspaceReport,
    act_poly,
    apply_word,
    eigen_labels,
    epsilon,
    kernel_words,
    membership,
    operator_matrix,
    wkk,
)

__version__ = "0.1.0"

__all__ = [
    "AverageReport",
    "BiPoly",
    "CFExpansion",
    "CONSTANCY_SCOPE",
    "EUCLIDEAN_DS",
    "FieldSpec",
    "GroupElement",
    "HEvalReport",
    "HermitianForm",
    "LValue",
    "QuadElem",
    "QuadInt",
    "ReductionCheck",
    "SubspaceReport",
    "act",
    "act_poly",
    "alpha",
    "alpha_direct",
    "apply_word",
    "average_quadrature",
    "bench_negative",
    "l_closed_form",
    "delta_forms",
    "eigen_labels",
    "enumerate_window",
    "epsilon",
    "eval_exact",
    "eval_truncated",
    "expand_P",
    "field",
    "formula_average",
    "functional_equation_negative",
    "gen_S",
    "gen_T",
    "gen_T_omega",
    "generalized_bernoulli",
    "hurwitz_cf",
    "identity",
    "is_norm",
    "kernel_words",
    "kronecker",
    "l_negative_exact",
    "l_positive_numeric",
    "lattice_points_with_norm_below",
    "local_count_coeffs",
    "local_factor",
    "membership",
    "nearest_int",
    "nonnorm_deltas",
    "operator_matrix",
    "phi",
    "quad_kernel",
    "quad_rank_modular",
    "r_count",
    "r_count_naive",
    "reduction_identity_check",
    "smallest_nonnorm",
    "tail_bound",
    "theta",
    "translation",
    "wkk",
    "zseries_closed_form",
    "zseries_partial",
    "__version__",
]
