"""Adequality procedures, the product rule by homogeneity, and two continuity tests.

The increment ``E`` of the adequality method is the base infinitesimal
``eps``: a function is compared at ``A`` and ``A + eps``, the difference is
divided by ``eps``, and the remaining ``eps`` terms are discarded by taking the
standard part.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .analytic import evaluate, real_eval
from .core import DEFAULT_CONTEXT, Context, LCNumber, Scalar, st
from .errors import DomainError, InfinitesimalError, NoBracketError, NotDifferentiableError
from .expr import Expr, parse

log = logging.getLogger(__name__)


def _tree(f, ctx: Context) -> Expr:
    return parse(f, exact=ctx.exact) if isinstance(f, str) else f


def difference_quotient(f, A, ctx: Optional[Context] = None, var: str = "x") -> LCNumber:
    """``(f(A + eps) - f(A)) / eps`` as a field element."""
    ctx = ctx or DEFAULT_CONTEXT
    f = _tree(f, ctx)
    a = LCNumber.constant(A, ctx)
    e = LCNumber.eps(ctx)
    return (evaluate(f, {var: a + e}, ctx) - evaluate(f, {var: a}, ctx)).shift(-1)


def adequality_derivative(f, A, ctx: Optional[Context] = None, var: str = "x") -> Scalar:
    q = difference_quotient(f, A, ctx, var)
    if not q.is_limited():
        raise NotDifferentiableError(f"not differentiable at {A}: difference quotient {q} is infinite")
    return st(q)


def adequality_extremum(f, lo, hi, ctx: Optional[Context] = None, var: str = "x") -> Scalar:
    """Critical point of ``f`` in ``[lo, hi]`` by bisection on the adequality derivative."""
    ctx = ctx or DEFAULT_CONTEXT
    f = _tree(f, ctx)
    lo, hi = ctx.scalar(lo), ctx.scalar(hi)
    if lo > hi:
        lo, hi = hi, lo
    g_lo = adequality_derivative(f, lo, ctx, var)
    if g_lo == 0:
        return lo
    g_hi = adequality_derivative(f, hi, ctx, var)
    if g_hi == 0:
        return hi
    if (g_lo > 0) == (g_hi > 0):
        raise NoBracketError(f"no bracketed critical point: derivative has sign {'+' if g_lo > 0 else '-'} at both ends")
    tol = max(ctx.tol, float(hi - lo) * 2.0**-60)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if not lo < mid < hi:
            break
        g = adequality_derivative(f, mid, ctx, var)
        if g == 0:
            return mid
        if (g > 0) == (g_lo > 0):
            lo, g_lo = mid, g
        else:
            hi = mid
    return (lo + hi) / 2


def tangent_line(f, A, ctx: Optional[Context] = None, var: str = "x") -> tuple:
    """``(slope, intercept)`` of the tangent to ``f`` at ``A``."""
    ctx = ctx or DEFAULT_CONTEXT
    f = _tree(f, ctx)
    A = ctx.scalar(A)
    slope = adequality_derivative(f, A, ctx, var)
    value = st(evaluate(f, {var: A}, ctx))
    return slope, value - slope * A


@dataclass(frozen=True)
class ProductRuleReport:
    lhs_quotient: LCNumber
    residual: LCNumber
    rhs: Scalar
    verdict: bool


def product_rule_report(u, v, x0, ctx: Optional[Context] = None, var: str = "x") -> ProductRuleReport:
    """Check ``d(uv)/dx = u dv/dx + v du/dx + du dv/dx`` at ``x0``.

    ``residual`` is what is left of the difference quotient of ``uv`` after
    removing ``(u dv + v du)/dx``; the rule holds when it is infinitesimal
    and the standard part of the quotient equals ``u v' + v u'``.
    """
    ctx = ctx or DEFAULT_CONTEXT
    u, v = _tree(u, ctx), _tree(v, ctx)
    x0 = LCNumber.constant(x0, ctx)
    X = x0 + LCNumber.eps(ctx)
    U, V = evaluate(u, {var: X}, ctx), evaluate(v, {var: X}, ctx)
    u0, v0 = evaluate(u, {var: x0}, ctx), evaluate(v, {var: x0}, ctx)
    du, dv = U - u0, V - v0
    lhs = (U * V - u0 * v0).shift(-1)
    linear = (u0 * dv + v0 * du).shift(-1)
    residual = lhs - linear
    rhs = st(u0) * st(dv.shift(-1)) + st(v0) * st(du.shift(-1))
    verdict = residual.is_infinitesimal() and lhs.is_limited() and st(lhs) == rhs
    return ProductRuleReport(lhs, residual, rhs, verdict)


DEFAULT_PROBES = ("eps", "-eps", "3*eps", "eps^2")


@dataclass(frozen=True)
class ContinuityReport:
    point: Scalar
    probes: list  # (probe, st of f(x0 + probe) - f(x0), or None on failure)
    microcontinuous: bool
    diagnostics: list = field(default_factory=list)


def microcontinuous_at(f, x0, probes: Optional[Sequence] = None, ctx: Optional[Context] = None,
                       var: str = "x") -> ContinuityReport:
    """Test ``x' ~ x0  =>  f(x') ~ f(x0)`` on a set of infinitesimal probes."""
    ctx = ctx or DEFAULT_CONTEXT
    if isinstance(x0, LCNumber):
        raise DomainError("microcontinuity is tested at real points only")
    f = _tree(f, ctx)
    x0 = ctx.scalar(x0)
    probes = [LCNumber.parse(p, ctx) if isinstance(p, str) else p for p in (probes or DEFAULT_PROBES)]
    for p in probes:
        if not p.is_infinitesimal():
            raise InfinitesimalError(f"probe {p} is not infinitesimal")
    base = LCNumber.constant(x0, ctx)
    rows, notes, ok = [], [], True
    try:
        f0 = evaluate(f, {var: base}, ctx)
    except (InfinitesimalError, ZeroDivisionError) as exc:
        return ContinuityReport(x0, [(p, None) for p in probes], False, [f"f({x0}): {exc}"])
    for p in probes:
        try:
            d = evaluate(f, {var: base + p}, ctx) - f0
            s = st(d)
        except (InfinitesimalError, ZeroDivisionError) as exc:
            rows.append((p, None))
            notes.append(f"probe {p}: {exc}")
            ok = False
            continue
        rows.append((p, s))
        if s != 0:
            ok = False
    return ContinuityReport(x0, rows, ok, notes)


def weierstrass_probe(f, x0, eps, delta_grid: Sequence, samples: int = 101, var: str = "x") -> Optional[float]:
    """First ``delta`` in a descending grid passing a sampled epsilon-delta check.

    Samples are the midpoints of ``samples`` equal cells covering
    ``(x0 - delta, x0 + delta)``.  This is evidence, not a proof.
    """
    if not eps > 0:
        raise InfinitesimalError("eps must be positive")
    grid = [float(d) for d in delta_grid]
    if any(d <= 0 for d in grid) or any(b > a for a, b in zip(grid, grid[1:])):
        raise InfinitesimalError("delta grid must be positive and descending")
    f = parse(f, exact=False) if isinstance(f, str) else f
    x0, eps = float(x0), float(eps)
    try:
        f0 = real_eval(f, {var: x0})
        for delta in grid:
            worst = 0.0
            for k in range(samples):
                t = -1.0 + (2 * k + 1) / samples
                worst = max(worst, abs(real_eval(f, {var: x0 + delta * t}) - f0))
                if not worst < eps:
                    break
            if worst < eps and math.isfinite(worst):
                return delta
    except (InfinitesimalError, ZeroDivisionError, OverflowError) as exc:
        log.warning("weierstrass probe of %s at %s failed: %s", f, x0, exc)
        return None
    return None
