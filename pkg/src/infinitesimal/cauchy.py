"""Cauchy's delta kernel, the decomposition of a variable quantity, and limits as standard parts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .analytic import evaluate, real_eval
from .core import DEFAULT_CONTEXT, Context, LCNumber, Scalar, st
from .errors import DivergenceError, InfinitesimalError, LimitNotComputableError, UnliftableError, UnlimitedError
from .expr import parse
from .quadrature import integrate


@dataclass(frozen=True)
class DeltaIntegralResult:
    value: float
    target: float
    abs_error: float
    alpha: float
    halfwidth: float
    quadrature_evals: int
    converged: bool = True


def delta_integral(F, a: float, alpha: float, halfwidth: float, tol: float = 1e-10,
                   budget: int = 10**6, var: str = "x") -> DeltaIntegralResult:
    """``1/2 * integral_{a-h}^{a+h} F(mu) * alpha / (alpha^2 + (mu-a)^2) dmu``.

    With ``mu = a + alpha*tan(t)`` the kernel times ``dmu`` is exactly ``dt``,
    so the integral becomes ``1/2 * integral F(a + alpha*tan t) dt`` over
    ``|t| <= arctan(h/alpha)`` and the spike of width ``alpha`` disappears.
    The target ``(pi/2) F(a)`` is approached when ``alpha << halfwidth``.
    """
    if not alpha > 0:
        raise InfinitesimalError("alpha must be positive")
    if not halfwidth > 0:
        raise InfinitesimalError("halfwidth must be positive")
    F = parse(F, exact=False) if isinstance(F, str) else F
    a, alpha, halfwidth = float(a), float(alpha), float(halfwidth)
    top = math.atan(halfwidth / alpha)

    def g(t):
        return 0.5 * real_eval(F, {var: a + alpha * math.tan(t)})

    res = integrate(g, -top, top, tol=tol, budget=budget)
    target = 0.5 * math.pi * real_eval(F, {var: a})
    return DeltaIntegralResult(res.value, target, abs(res.value - target), alpha, halfwidth, res.evals, res.converged)


def variable_decompose(q: LCNumber) -> tuple:
    """``q = c + alpha`` with ``c`` real and ``alpha`` infinitesimal or zero."""
    if not q.is_limited():
        raise UnlimitedError("no decomposition: quantity tends to infinity")
    c = st(q)
    return c, q - c


def limit_via_st(u, ctx: Optional[Context] = None, var: str = "n") -> Scalar:
    """Limit of a sequence as the standard part of its value at ``n = 1/eps``.

    No rearrangement is attempted: the expression has to be evaluable at the
    infinite index as written.
    """
    ctx = ctx or DEFAULT_CONTEXT
    u = parse(u, exact=ctx.exact) if isinstance(u, str) else u
    H = LCNumber.monomial(1, -1, ctx)
    try:
        value = evaluate(u, {var: H}, ctx)
    except UnliftableError as exc:
        raise LimitNotComputableError(f"limit not computable by this method: {exc}") from None
    if not value.is_limited():
        raise DivergenceError(f"sequence diverges to infinity (value {value} at n = eps^-1)")
    return st(value)
