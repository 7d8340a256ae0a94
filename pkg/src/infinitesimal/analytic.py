"""Lifting elementary functions to field elements.

A limited argument ``x`` splits as ``r + h`` with ``r = st(x)`` real and ``h``
infinitesimal; ``f(x)`` is then the Taylor sum of ``f`` at ``r`` in powers of
``h``, carried far enough that every omitted power lies outside the result's
depth window.  Rational powers (and so ``sqrt``) also work at unlimited and
infinitesimal arguments through ``c*eps^q*(1+u)`` and the binomial series.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Mapping, Optional

from .core import DEFAULT_CONTEXT, Context, LCNumber, inverse, mul, st
from .errors import ContextMismatchError, DomainError, InexactError, InfinitesimalError, ParseError, UnliftableError
from .expr import ELEMENTARY, BinOp, Call, Eps, Expr, Neg, Num, Pi, Pow, Var, free_variables, parse


def _factorials(count):
    out = [1]
    for m in range(1, count):
        out.append(out[-1] * m)
    return out


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _exact_root(c: Fraction, k: int) -> Fraction:
    p, q = _iroot(c.numerator, k), _iroot(c.denominator, k)
    if p**k != c.numerator or q**k != c.denominator:
        raise InexactError(f"{c} has no rational {k}-th root; use float mode")
    return Fraction(p, q)


def _binomials(a: Fraction, count: int):
    """C(a, m) for m < count."""
    out = [Fraction(1)]
    for m in range(1, count):
        out.append(out[-1] * (a - (m - 1)) / m)
    return out


def _scalar_power(c, a: Fraction, ctx: Context):
    if c < 0 and a.denominator % 2 == 0:
        raise DomainError(f"even root of negative value {c}")
    sign = -1 if (c < 0 and a.numerator % 2) else 1
    if ctx.exact:
        root = _exact_root(abs(c), a.denominator)
        return sign * root**a.numerator
    return sign * abs(c) ** float(a)


def _exact_or_raise(name, r):
    raise InexactError(f"{name}({r}) is not rational; use float mode")


def taylor_coefficients(f: str, r, count: int, ctx: Optional[Context] = None) -> list:
    """``f^(m)(r)/m!`` for ``m < count``.

    In exact mode the coefficients are Fractions and the call fails with
    :class:`InexactError` when one of them is irrational (``sin`` anywhere but
    0, ``ln`` anywhere but 1, ``sqrt`` off the rational squares, ...).
    """
    ctx = ctx or DEFAULT_CONTEXT
    r = ctx.scalar(r)
    if count <= 0:
        return []
    exact = ctx.exact
    fact = _factorials(count)
    one = ctx.one

    if f in ("exp", "sin", "cos", "sinh", "cosh"):
        if exact:
            if r != 0:
                _exact_or_raise(f, r)
            vals = {"exp": (one, one), "sin": (0, one), "cos": (one, 0), "sinh": (0, one), "cosh": (one, 0)}[f]
            v0, v1 = Fraction(vals[0]), Fraction(vals[1])
        else:
            v0, v1 = {
                "exp": (math.exp(r), math.exp(r)),
                "sin": (math.sin(r), math.cos(r)),
                "cos": (math.cos(r), -math.sin(r)),
                "sinh": (math.sinh(r), math.cosh(r)),
                "cosh": (math.cosh(r), math.sinh(r)),
            }[f]
        if f == "exp":
            cycle = (v0,)
        elif f in ("sin", "cos"):
            cycle = (v0, v1, -v0, -v1)
        else:
            cycle = (v0, v1)
        return [ctx.scalar(cycle[m % len(cycle)]) / fact[m] for m in range(count)]

    if f == "ln":
        if not r > 0:
            raise DomainError(f"ln of non-positive value {r}")
        if exact:
            if r != 1:
                _exact_or_raise(f, r)
            v0 = Fraction(0)
        else:
            v0 = math.log(r)
        return [v0] + [ctx.scalar((-1) ** (m + 1)) / (m * r**m) for m in range(1, count)]

    if f == "sqrt":
        if not r > 0:
            raise DomainError(f"sqrt has no Taylor expansion at {r}")
        root = _scalar_power(r, Fraction(1, 2), ctx)
        return [root * ctx.scalar(b) / r**m for m, b in enumerate(_binomials(Fraction(1, 2), count))]

    if f == "arctan":
        if exact:
            if r != 0:
                _exact_or_raise(f, r)
            v0 = Fraction(0)
        else:
            v0 = math.atan(r)
        # 1/(1 + (r+h)^2) = sum a_k h^k with (1+r^2) a_k + 2r a_{k-1} + a_{k-2} = [k == 0]
        base = one + r * r
        a = []
        for k in range(count - 1):
            rhs = (one if k == 0 else 0) - (2 * r * a[k - 1] if k >= 1 else 0) - (a[k - 2] if k >= 2 else 0)
            a.append(rhs / base)
        return [v0] + [a[m - 1] / m for m in range(1, count)]

    raise DomainError(f"no Taylor table for {f!r}")


def _series(coeffs, h: LCNumber) -> LCNumber:
    """Horner evaluation of ``sum coeffs[m] * h**m``."""
    acc = LCNumber.constant(coeffs[-1], h.context)
    for a in reversed(coeffs[:-1]):
        acc = mul(acc, h) + a
    return acc


def _terms_needed(h: LCNumber) -> int:
    return math.ceil(h.context.depth / h.order)


def lift(f: str, x: LCNumber) -> LCNumber:
    """Natural extension of the elementary function ``f`` at ``x``."""
    ctx = x.context
    if f == "sqrt":
        return power(x, Fraction(1, 2))
    if f == "step":
        return LCNumber.constant(0 if x < 0 else 1, ctx)
    if f not in ELEMENTARY:
        raise DomainError(f"unknown function {f!r}")
    if not x.is_limited():
        raise UnliftableError(f"{f} is unliftable at infinite argument {x}")
    r = st(x)
    h = x - r
    if f == "ln" and not r > 0:
        raise DomainError(f"ln of non-positive standard part {r}")
    if h.is_zero:
        return LCNumber.constant(taylor_coefficients(f, r, 1, ctx)[0], ctx).flagged(x.truncated)
    need = _terms_needed(h)
    coeffs = taylor_coefficients(f, r, need + 1, ctx)
    lead_zeros = next((m for m, c in enumerate(coeffs) if c != 0), len(coeffs))
    if lead_zeros > 1:
        coeffs = taylor_coefficients(f, r, need + lead_zeros, ctx)
    else:
        coeffs = coeffs[: need + lead_zeros]
    return _series(coeffs, h).flagged(True)


def power(x: LCNumber, exponent) -> LCNumber:
    """``x ** exponent`` for a rational exponent."""
    if isinstance(exponent, float) and exponent.is_integer():
        exponent = int(exponent)
    if not isinstance(exponent, numbers.Rational):
        raise TypeError(f"powers take rational exponents, got {exponent!r}")
    a = Fraction(exponent)
    ctx = x.context
    if x.is_zero:
        if a > 0:
            return x
        if a == 0:
            return LCNumber.constant(1, ctx)
        raise ZeroDivisionError("zero to a negative power")
    if a.denominator == 1:
        k = abs(a.numerator)
        result = LCNumber.constant(1, ctx).flagged(x.truncated)
        base = x
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return inverse(result) if a < 0 else result
    q, c = x.terms[0]
    mono = LCNumber.monomial(_scalar_power(c, a, ctx), q * a, ctx).flagged(x.truncated)
    if len(x.terms) == 1:
        return mono
    u = LCNumber._make(tuple((e - q, ci / c) for e, ci in x.terms[1:]), ctx, False)
    count = _terms_needed(u)
    coeffs = [ctx.scalar(b) for b in _binomials(a, count)]
    return mul(mono, _series(coeffs, u)).flagged(True)


def _resolve_context(binding: Mapping, ctx: Optional[Context]) -> Context:
    if ctx is not None:
        return ctx
    for v in binding.values():
        if isinstance(v, LCNumber):
            return v.context
    return DEFAULT_CONTEXT


def evaluate(expr, binding: Optional[Mapping] = None, ctx: Optional[Context] = None) -> LCNumber:
    """Evaluate an expression tree with variables bound to field elements.

    Scalars in ``binding`` are promoted to constants of ``ctx``.  Strings are
    parsed as expressions first.
    """
    binding = dict(binding or {})
    ctx = _resolve_context(binding, ctx)
    if isinstance(expr, str):
        expr = parse(expr, exact=ctx.exact)
    env = {}
    for name, v in binding.items():
        if isinstance(v, LCNumber):
            if v.context != ctx:
                raise ContextMismatchError(f"binding {name} lives in {v.context}, expected {ctx}")
            env[name] = v
        else:
            env[name] = LCNumber.constant(v, ctx)
    return _eval(expr, env, ctx)


def _eval(node: Expr, env: dict, ctx: Context) -> LCNumber:
    if isinstance(node, Var):
        try:
            return env[node.name]
        except KeyError:
            raise InfinitesimalError(f"unbound variable {node.name!r}") from None
    if isinstance(node, Num):
        return LCNumber.constant(node.value, ctx)
    if isinstance(node, Eps):
        return LCNumber.eps(ctx)
    if isinstance(node, Pi):
        if ctx.exact:
            raise InexactError("pi is not rational; use float mode")
        return LCNumber.constant(math.pi, ctx)
    if isinstance(node, Neg):
        return -_eval(node.operand, env, ctx)
    if isinstance(node, BinOp):
        left = _eval(node.left, env, ctx)
        right = _eval(node.right, env, ctx)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return mul(left, right)
        return mul(left, inverse(right))
    if isinstance(node, Pow):
        return power(_eval(node.base, env, ctx), node.exponent)
    if isinstance(node, Call):
        return lift(node.func, _eval(node.arg, env, ctx))
    raise TypeError(f"not an expression node: {node!r}")


_REAL_FUNCS = {
    "exp": math.exp,
    "sin": math.sin,
    "cos": math.cos,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "arctan": math.atan,
}


def real_eval(expr, binding: Optional[Mapping] = None) -> float:
    """Plain binary64 evaluation at real points, for sampling and quadrature."""
    if isinstance(expr, str):
        expr = parse(expr, exact=False)
    return _real(expr, {k: float(v) for k, v in (binding or {}).items()})


def _real(node: Expr, env: dict) -> float:
    if isinstance(node, Var):
        try:
            return env[node.name]
        except KeyError:
            raise InfinitesimalError(f"unbound variable {node.name!r}") from None
    if isinstance(node, Num):
        return float(node.value)
    if isinstance(node, Pi):
        return math.pi
    if isinstance(node, Eps):
        raise DomainError("eps has no real value")
    if isinstance(node, Neg):
        return -_real(node.operand, env)
    if isinstance(node, BinOp):
        a, b = _real(node.left, env), _real(node.right, env)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    if isinstance(node, Pow):
        b = _real(node.base, env)
        e = node.exponent
        if e.denominator == 1:
            if b == 0 and e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return b ** e.numerator
        if b < 0:
            if e.denominator % 2 == 0:
                raise DomainError(f"even root of negative value {b}")
            return (-1) ** (e.numerator % 2) * abs(b) ** float(e)
        return b ** float(e)
    if isinstance(node, Call):
        v = _real(node.arg, env)
        if node.func == "step":
            return 0.0 if v < 0 else 1.0
        if node.func == "ln":
            if v <= 0:
                raise DomainError(f"ln of non-positive value {v}")
            return math.log(v)
        if node.func == "sqrt":
            if v < 0:
                raise DomainError(f"sqrt of negative value {v}")
            return math.sqrt(v)
        return _REAL_FUNCS[node.func](v)
    raise TypeError(f"not an expression node: {node!r}")


def parse_number(text: str, ctx: Optional[Context] = None) -> LCNumber:
    """Read a field element written in the expression language (no variables)."""
    ctx = ctx or DEFAULT_CONTEXT
    tree = parse(text, exact=ctx.exact)
    names = free_variables(tree)
    if names:
        raise ParseError(f"a number literal cannot contain variables ({', '.join(sorted(names))})")
    return _eval(tree, {}, ctx)
