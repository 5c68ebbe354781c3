"""Gram-Backlund continuation of zeta, Laurent expansions on circles about
s = 1/2, and the null conditions those expansions satisfy at zeros."""
from .core_numerics import BernoulliTable, bernoulli, log_gamma, rising_product
from .errors import CapacityError, DomainError, ParameterError, PoleError, SamplingError, ZGBError
from .laurent import (
    GammaCircle,
    LaurentSeries,
    QuartetPoint,
    eval_series,
    expand,
    fgb_series,
    figure_series,
    laurent_coeffs,
    parity_orthogonality_check,
    q_coeffs_closed_form,
    q_series,
    split_parity,
)
from .null_conditions import (
    ResidualReport,
    ZeroCandidate,
    antisym_residual,
    critical_line_even_residual,
    critical_line_odd_residual,
    full_system_residual,
    hardy_z,
    quartet_grid_scan,
    scan_critical_line,
)
from .zeta_gb import (
    ComplexPoint,
    EvalParams,
    auto_params,
    check_factor_identity,
    dirichlet_oracle,
    evaluate_zeta,
    f_gb,
    q_of,
    reflect_zeta,
)

__version__ = "0.1.0"
