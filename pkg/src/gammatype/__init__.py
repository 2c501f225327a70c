"""Existence and divisibility of laws with Gamma-type moments."""

from ._kernels import BACKEND
from .classifier import (
    Decision,
    Family,
    FMode,
    Verdict,
    L_bound,
    U_bound,
    classify_catalog,
    classify_D,
    classify_half_cauchy_id,
    classify_ml2_domain,
    classify_ml3_nonneg,
    classify_X,
    half_cauchy_threshold,
)
from .divisibility import (
    ExactSequence,
    factorial_ratio_sequence,
    hausdorff_oracle,
    hausdorff_sufficient,
    malmsten_kernel,
    malmsten_kernel_check,
    unit_slope_normalize,
)
from .errors import (
    BracketError,
    ConstructionError,
    DenominatorPoleWarning,
    DomainError,
    GammaTypeError,
    NumericalError,
)
from .mittag_leffler import (
    Branch,
    EvalResult,
    MLParams,
    ml1_eval,
    ml2_eval,
    ml3_eval,
    ml3_min_on_ray,
    wright_eval,
)
from .moment_spec import (
    GammaTypeSpec,
    char_fn_eval,
    gamma_delta,
    janson_check,
    make_spec,
    mellin_eval,
    mellin_identity_check,
    preset,
)
from .numerics import (
    boundary_bracket,
    density_X_inverse,
    mellin_quadrature,
    nonneg_scan,
)
from .reports import Certificate, ScanReport

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BracketError",
    "Branch",
    "Certificate",
    "ConstructionError",
    "Decision",
    "DenominatorPoleWarning",
    "DomainError",
    "EvalResult",
    "ExactSequence",
    "FMode",
    "Family",
    "GammaTypeError",
    "GammaTypeSpec",
    "L_bound",
    "MLParams",
    "NumericalError",
    "ScanReport",
    "U_bound",
    "Verdict",
    "boundary_bracket",
    "char_fn_eval",
    "classify_D",
    "classify_X",
    "classify_catalog",
    "classify_half_cauchy_id",
    "classify_ml2_domain",
    "classify_ml3_nonneg",
    "density_X_inverse",
    "factorial_ratio_sequence",
    "gamma_delta",
    "half_cauchy_threshold",
    "hausdorff_oracle",
    "hausdorff_sufficient",
    "janson_check",
    "make_spec",
    "malmsten_kernel",
    "malmsten_kernel_check",
    "mellin_eval",
    "mellin_identity_check",
    "mellin_quadrature",
    "ml1_eval",
    "ml2_eval",
    "ml3_eval",
    "ml3_min_on_ray",
    "nonneg_scan",
    "preset",
    "unit_slope_normalize",
    "wright_eval",
]
