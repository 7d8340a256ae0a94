"""A computable non-Archimedean ordered field and infinitesimal-calculus procedures on top of it."""

from .analytic import evaluate, lift, parse_number, power, real_eval, taylor_coefficients
from .cauchy import DeltaIntegralResult, delta_integral, limit_via_st, variable_decompose
from .core import (
    DEFAULT_CONTEXT,
    Classification,
    Context,
    DecompositionResult,
    LCNumber,
    Sign3,
    add,
    adequal,
    archimedes_lemma_witness,
    classify,
    compare,
    constant,
    decompose,
    eps,
    exceeds,
    hankel_proportion,
    inverse,
    mul,
    neg,
    normalize,
    st,
    sub,
    truncate_tlh,
)
from .errors import (
    ContextMismatchError,
    DivergenceError,
    DomainError,
    InexactError,
    InfinitesimalError,
    LimitNotComputableError,
    NoBracketError,
    NotDifferentiableError,
    ParseError,
    UnliftableError,
    UnlimitedError,
)
from .euler import (
    ProductRunResult,
    arithmetic_equal,
    basel_partial,
    cancellation_ratio,
    cos_replacement_residual,
    exp_surrogate,
    factor_identity_residual,
    geometric_equal,
    sine_product,
    sinh_product,
    sinh_surrogate,
)
from .expr import Expr, ExprTree, parse
from .fermat_leibniz import (
    ContinuityReport,
    ProductRuleReport,
    adequality_derivative,
    adequality_extremum,
    microcontinuous_at,
    product_rule_report,
    tangent_line,
    weierstrass_probe,
)

__version__ = "0.1.0"
