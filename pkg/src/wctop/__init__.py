"""Weighted conditional type operators ``M_w E M_u`` on atomic measure spaces."""

from .condexp import (
    block_values,
    cond_expect,
    conditional_holder_slack,
    expectation_matrix,
    measure_with_density,
)
from .errors import *  # noqa: F401,F403
from .expansivity import (
    ClassificationReport,
    classify,
    completely_alternating_check,
    delta_poly,
    emv,
    multiplication_classify,
    necessary_A0_check,
    poly_A,
    reduce_to_emv,
    sufficient_A1_check,
    theta,
    theta_form,
    theta_integral_form,
    two_expansive_consequences,
)
from .gallery import (
    alpha_coefficients,
    example_noncontractive_check,
    geometric_functions,
    geometric_ladder,
    geometric_nat_space,
    kernel_apply,
    kernel_operator_bridge,
    lift_second,
    marginal,
    product_space,
    symmetric_functions,
    symmetric_space,
)
from .measure import (
    AtomicMeasureSpace,
    Partition,
    TruncationLadder,
    as_function,
    build_partition,
    build_space,
    discrete_partition,
    inner_product,
    is_A_measurable,
    lp_norm,
    support,
    trivial_partition,
    truncate,
)
from .operator import (
    DomainVerdict,
    OperatorMatrix,
    WctOperator,
    adjoint,
    apply_wct,
    closedness_witness,
    densely_defined_check,
    domain_approximant,
    domain_verdict,
    j_minus_one,
    norm_bound,
    pairing,
    to_matrix,
)
from .structure import (
    PolarPair,
    SpectrumReport,
    hyponormality_test,
    normality_test,
    polar_decompose,
    polar_residuals,
    spectral_radius,
    spectrum,
)

__version__ = "0.1.0"
