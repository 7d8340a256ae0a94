"""Euler's two comparisons of quantities and finite-scale reruns of his sine derivation.

The infinitely large exponent ``j`` of the original argument is a finite
integer here.  Every numerical routine returns its error against the library
reference so the trend as ``j`` or ``K`` grows can be checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .core import LCNumber, Scalar, adequal, st
from .errors import DomainError, InfinitesimalError, UnlimitedError


def arithmetic_equal(a: LCNumber, b: LCNumber) -> bool:
    """Equal up to an infinitesimal difference: ``a + n*dx - a = 0``."""
    return adequal(a, b)


def geometric_equal(a: LCNumber, b: LCNumber) -> bool:
    """Equal when the ratio is infinitely close to 1: ``(a + n*dx)/a = 1``."""
    if a.is_zero or b.is_zero:
        raise DomainError("geometric comparison undefined at zero")
    return adequal(a / b, LCNumber.constant(1, a.context))


def cancellation_ratio(num: LCNumber, den: LCNumber) -> tuple:
    """``(num/den, st(num/den))``; the ratio of two infinitesimals of the same order is finite."""
    if den.is_zero:
        raise ZeroDivisionError("zero denominator")
    ratio = num / den
    if not ratio.is_limited():
        raise UnlimitedError("orders incomparable: ratio infinite")
    return ratio, st(ratio)


@dataclass(frozen=True)
class ProductRunResult:
    x: float
    factor_count: int
    value: float
    reference: float
    abs_error: float
    tail_bound: float


def sine_product(x: float, K: int, hyperbolic: bool = False) -> ProductRunResult:
    """``x * prod_{k<=K} (1 -+ x^2/(k^2 pi^2))``, the partial sine (or sinh) product."""
    if K < 1:
        raise InfinitesimalError("need at least one factor")
    x = float(x)
    sign = 1.0 if hyperbolic else -1.0
    c = sign * x * x / (math.pi * math.pi)
    value = x
    for k in range(1, K + 1):
        value *= 1.0 + c / (k * k)
    try:
        reference = math.sinh(x) if hyperbolic else math.sin(x)
    except OverflowError:
        reference = math.inf
    tail = x * x / (math.pi * math.pi * K) * abs(reference)
    return ProductRunResult(x, K, value, reference, abs(value - reference), tail)


def sinh_product(x: float, K: int) -> ProductRunResult:
    return sine_product(x, K, hyperbolic=True)


def _binary_power(base, j: int):
    result = 1
    while j:
        if j & 1:
            result = result * base
        j >>= 1
        if j:
            base = base * base
    return result


def exp_surrogate(x, j: int, base: Optional[float] = None):
    """``(1 + k*x/j)**j`` with ``k = ln(base)`` (``k = 1`` for ``e``).

    Works for floats and, with small ``j``, exactly for Fractions.  The error
    against ``exp(k*x)`` is about ``(k*x)^2 * exp(k*x) / (2j)``.
    """
    if j < 1:
        raise InfinitesimalError("j must be a positive integer")
    k = 1 if base is None else math.log(base)
    if abs(k * x) >= j:
        raise InfinitesimalError("surrogate invalid: base non-positive")
    return _binary_power(1 + k * x / j, j)


def sinh_surrogate(x, j: int):
    """``((1 + x/j)**j - (1 - x/j)**j) / 2``."""
    return (exp_surrogate(x, j) - exp_surrogate(-x, j)) / 2


def factor_identity_residual(j: int, a: float, b: float) -> float:
    """Relative gap between ``a^j - b^j`` and its real factorization.

    The factors are ``a - b``, ``a + b`` when ``j`` is even, and
    ``a^2 + b^2 - 2ab cos(2 k pi / j)`` for ``1 <= k < j/2``.
    """
    if not 2 <= j <= 64:
        raise InfinitesimalError("j must lie in [2, 64]")
    a, b = float(a), float(b)
    lhs = a**j - b**j
    rhs = a - b
    if j % 2 == 0:
        rhs *= a + b
    for k in range(1, (j - 1) // 2 + 1):
        rhs *= a * a + b * b - 2 * a * b * math.cos(2 * k * math.pi / j)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def cos_replacement_residual(theta: float) -> tuple:
    """``(|cos t - (1 - t^2/2)|, t^4/24)``.

    Residual and bound differ by about ``t^6/720``, so the comparison is done
    in arbitrary precision with enough digits to resolve that gap; binary64
    cannot even resolve the residual itself for small ``t``.
    """
    theta = float(theta)
    if theta == 0:
        return 0.0, 0.0
    digits = 30 + max(0, math.ceil(-6 * math.log10(abs(theta))))
    with mpmath.workdps(digits):
        t = mpmath.mpf(theta)
        residual = abs(mpmath.cos(t) - (1 - t * t / 2))
        bound = t**4 / 24
        if residual > bound:
            raise ArithmeticError(f"Taylor bound violated at {theta}")
        return float(residual), float(bound)


def omitted_term_scaled(x: float, j: int) -> float:
    """``(x^2/j^2) * j``, the term dropped from each quadratic factor, multiplied by ``j``."""
    return x * x / (j * j) * j


def basel_partial(N: int, exact: bool = False) -> tuple:
    """``(sum_{n<=N} 1/n^2, pi^2/6, pi^2/6 - sum)``.

    Float sums go through ``math.fsum`` so the ``~1/N`` tail is measurable at
    ``N = 10**6``; ``exact=True`` returns the partial sum as a Fraction.
    """
    if N < 1:
        raise InfinitesimalError("N must be at least 1")
    target = math.pi**2 / 6
    if exact:
        s: Scalar = sum((Fraction(1, n * n) for n in range(1, N + 1)), Fraction(0))
        with mpmath.workdps(30):
            error = float(mpmath.pi**2 / 6 - mpmath.mpf(s.numerator) / s.denominator)
        return s, target, error
    s = math.fsum(1.0 / (n * n) for n in range(1, N + 1))
    with mpmath.workdps(30):
        error = float(mpmath.pi**2 / 6 - mpmath.mpf(s))
    return s, target, error
