"""Class-number arithmetic and holomorphic projection of sesquiharmonic
coefficient streams, with the explicit weight-2 level-64 decomposition."""

__version__ = "0.1.0"

from .arith import (
    DirichletCharacter,
    Factorization,
    chi4,
    factorize,
    fundamental_decomposition,
    is_discriminant,
    kronecker,
    sqrt_if_square,
    square_divisors,
)
from .errors import ConvergenceError, DomainError, PrecisionError, ToleranceError
from .projection import (
    CuspCoefficients,
    ProjectionConfig,
    RChiBreakdown,
    SesquiCoefficients,
    alpha_nm,
    project_general,
    r_chi,
    r_chi_many,
    reference_table_config,
    z_coefficients,
    zagier_coefficients,
)
from .qseries import (
    EtaQuotientSpec,
    PowerSeries,
    basis_s2_64,
    eta_quotient,
    euler_product_series,
    hecke_t_p,
    theta_series,
    v_operator,
)
from .quadforms import (
    BQF,
    HurwitzCache,
    PellSolution,
    class_number_fundamental,
    hplus,
    hstar,
    hurwitz_direct,
    hurwitz_direct_table,
    hurwitz_fast,
    pell_fundamental,
    regulator,
)
from .decomp import BasisSolve, arithmetic_patterns, solve_on_basis, verify_hecke
from .shiftedconv import (
    ShiftedSumSeries,
    d_series_truncated,
    fit_exponent,
    partial_sums,
    symmetrized_check,
    symmetrized_sum,
)
from .special import (
    QuadratureResult,
    alpha_numeric,
    beta_fn,
    euler_gamma,
    hyp2f1,
    integrate_0_inf,
    upper_gamma_half,
)
