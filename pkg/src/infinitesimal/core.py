"""The truncated-series ordered field.

An :class:`LCNumber` is a finite sum ``c_1*eps^q_1 + ... + c_k*eps^q_k`` with
rational exponents ``q_1 < ... < q_k`` and nonzero coefficients, where ``eps``
is a fixed positive infinitesimal.  Ordering is lexicographic on the leading
(lowest-exponent) coefficient, which makes ``eps`` smaller than every positive
real and ``eps**-1`` larger than every real.

Every number keeps only the terms whose exponent lies in the window
``[q_1, q_1 + depth)``.  Sums and products are exact whenever the true result
fits that window; otherwise the number is flagged ``truncated``.
"""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Union

from gmpy2 import mpq

from .errors import ContextMismatchError, DomainError, InexactError, UnlimitedError

Exponent = Fraction
Scalar = Union[Fraction, float]

_ZERO_EXP = Fraction(0)
_EXP_CACHE: dict = {}


def _exponent(k: int, den: int) -> Fraction:
    """``Fraction(k, den)``, memoized: the same few exponents recur constantly."""
    key = (k, den)
    f = _EXP_CACHE.get(key)
    if f is None:
        if len(_EXP_CACHE) > 1 << 16:
            _EXP_CACHE.clear()
        f = _EXP_CACHE[key] = Fraction(k, den)
    return f


def _common_den(*term_tuples) -> int:
    den = 1
    for terms in term_tuples:
        for e, _ in terms:
            d = e.denominator
            if den % d:
                den = den * d // math.gcd(den, d)
    return den


@dataclass(frozen=True)
class Context:
    """Arithmetic policy shared by a family of numbers.

    ``depth`` is the width of the exponent window, ``mode`` selects exact
    rational or binary64 coefficients, and ``tol`` is only consulted by
    validation code comparing float results.
    """

    depth: int = 8
    mode: str = "exact"
    tol: float = 1e-12

    def __post_init__(self):
        if isinstance(self.depth, bool) or not isinstance(self.depth, int) or self.depth < 2:
            raise ValueError(f"depth must be an integer >= 2, got {self.depth!r}")
        if self.mode not in ("exact", "float"):
            raise ValueError(f"mode must be 'exact' or 'float', got {self.mode!r}")
        if not self.tol >= 0:
            raise ValueError(f"tol must be nonnegative, got {self.tol!r}")

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    def scalar(self, value) -> Scalar:
        """Coerce ``value`` to this context's coefficient type."""
        if self.exact:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, numbers.Rational):
                return Fraction(int(value.numerator), int(value.denominator))
            raise InexactError(f"{value!r} is not an exact rational; use float mode")
        if isinstance(value, numbers.Real):
            return float(value)
        raise TypeError(f"cannot use {type(value).__name__} as a coefficient")

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.exact else 1.0


DEFAULT_CONTEXT = Context()


class Sign3(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def __str__(self):
        return self.name.lower()


class Classification(NamedTuple):
    kind: str  # zero | infinitesimal | appreciable | infinite
    bound: str  # limited | unlimited

    def __str__(self):
        return f"{self.kind}, {self.bound}"


def _sign(c) -> Sign3:
    return Sign3.POSITIVE if c > 0 else Sign3.NEGATIVE if c < 0 else Sign3.ZERO


class LCNumber:
    """An element of the truncated Levi-Civita-style field.

    Instances are immutable.  Build them with :func:`normalize`, the
    :meth:`constant`/:meth:`eps`/:meth:`monomial` constructors, :meth:`parse`,
    or arithmetic on existing numbers.  Plain ints, Fractions and (in float
    mode) floats are promoted to constants in arithmetic.
    """

    __slots__ = ("_terms", "_ctx", "_truncated")

    def __init__(self, terms: Iterable = (), ctx: Optional[Context] = None, truncated: bool = False):
        n = normalize(terms, ctx, truncated)
        self._terms = n._terms
        self._ctx = n._ctx
        self._truncated = n._truncated

    @classmethod
    def _make(cls, terms: tuple, ctx: Context, truncated: bool) -> LCNumber:
        self = object.__new__(cls)
        self._terms = terms
        self._ctx = ctx
        self._truncated = truncated
        return self

    @classmethod
    def _from_dict(cls, acc: dict, ctx: Context, truncated: bool = False) -> LCNumber:
        items = sorted((e, c) for e, c in acc.items() if c != 0)
        if items:
            cut = items[0][0] + ctx.depth
            if items[-1][0] >= cut:
                items = [t for t in items if t[0] < cut]
                truncated = True
        return cls._make(tuple(items), ctx, truncated)

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value, ctx: Optional[Context] = None) -> LCNumber:
        ctx = ctx or DEFAULT_CONTEXT
        c = ctx.scalar(value)
        return cls._make(((_ZERO_EXP, c),) if c != 0 else (), ctx, False)

    @classmethod
    def monomial(cls, coefficient, exponent, ctx: Optional[Context] = None) -> LCNumber:
        ctx = ctx or DEFAULT_CONTEXT
        c = ctx.scalar(coefficient)
        return cls._make(((Fraction(exponent), c),) if c != 0 else (), ctx, False)

    @classmethod
    def eps(cls, ctx: Optional[Context] = None) -> LCNumber:
        return cls.monomial(1, 1, ctx)

    @classmethod
    def parse(cls, text: str, ctx: Optional[Context] = None) -> LCNumber:
        """Read a literal such as ``3 + 2*eps - 5*eps^(3/2)``."""
        from .analytic import parse_number

        return parse_number(text, ctx)

    # -- accessors ---------------------------------------------------------

    @property
    def terms(self) -> tuple:
        return self._terms

    @property
    def context(self) -> Context:
        return self._ctx

    @property
    def truncated(self) -> bool:
        return self._truncated

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def order(self) -> Exponent:
        """Least exponent present."""
        if not self._terms:
            raise DomainError("zero has no leading exponent")
        return self._terms[0][0]

    @property
    def lead(self) -> Scalar:
        if not self._terms:
            raise DomainError("zero has no leading coefficient")
        return self._terms[0][1]

    def coefficient(self, exponent) -> Scalar:
        exponent = Fraction(exponent)
        for e, c in self._terms:
            if e == exponent:
                return c
        return self._ctx.zero

    def is_limited(self) -> bool:
        return not self._terms or self._terms[0][0] >= 0

    def is_infinitesimal(self) -> bool:
        """True for zero and for proper infinitesimals."""
        return not self._terms or self._terms[0][0] > 0

    def flagged(self, truncated: bool) -> LCNumber:
        if not truncated or self._truncated:
            return self
        return LCNumber._make(self._terms, self._ctx, True)

    def shift(self, k) -> LCNumber:
        """Multiply by ``eps**k`` (always exact)."""
        k = Fraction(k)
        return LCNumber._make(tuple((e + k, c) for e, c in self._terms), self._ctx, self._truncated)

    def scale(self, s) -> LCNumber:
        s = self._ctx.scalar(s)
        if s == 0:
            return LCNumber._make((), self._ctx, self._truncated)
        return LCNumber._make(tuple((e, c * s) for e, c in self._terms), self._ctx, self._truncated)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> LCNumber:
        if isinstance(other, LCNumber):
            if other._ctx != self._ctx:
                raise ContextMismatchError(f"context mismatch: {self._ctx} vs {other._ctx}")
            return other
        if isinstance(other, numbers.Real):
            return LCNumber.constant(other, self._ctx)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return sub(other, self)

    def __neg__(self):
        return neg(self)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, numbers.Real) and not isinstance(other, LCNumber):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, inverse(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(other, inverse(self))

    def __pow__(self, exponent):
        from .analytic import power

        return power(self, exponent)

    def __abs__(self):
        return neg(self) if self._terms and self._terms[0][1] < 0 else self

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LCNumber):
            return self._terms == other._terms
        if isinstance(other, numbers.Real):
            if other == 0:
                return not self._terms
            return len(self._terms) == 1 and self._terms[0][0] == 0 and self._terms[0][1] == other
        return NotImplemented

    def __hash__(self):
        if not self._terms:
            return hash(0)
        if len(self._terms) == 1 and self._terms[0][0] == 0:
            return hash(self._terms[0][1])
        return hash(self._terms)

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) is Sign3.NEGATIVE

    def __le__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) is not Sign3.POSITIVE

    def __gt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) is Sign3.POSITIVE

    def __ge__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) is not Sign3.NEGATIVE

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return format_lc(self)

    def __repr__(self):
        return f"LCNumber({format_lc(self)!r})"


def _check_same(x: LCNumber, y: LCNumber):
    if x._ctx != y._ctx:
        raise ContextMismatchError(f"context mismatch: {x._ctx} vs {y._ctx}")


def normalize(raw: Iterable, ctx: Optional[Context] = None, truncated: bool = False) -> LCNumber:
    """Build a number from ``(exponent, coefficient)`` pairs.

    Equal exponents are merged, zero coefficients dropped, and the depth
    window is applied relative to the least surviving exponent.
    """
    ctx = ctx or DEFAULT_CONTEXT
    acc: dict = {}
    for e, c in raw:
        e = Fraction(e)
        acc[e] = acc.get(e, 0) + ctx.scalar(c)
    return LCNumber._from_dict(acc, ctx, truncated)


def add(x: LCNumber, y: LCNumber) -> LCNumber:
    _check_same(x, y)
    if not y._terms:
        return x.flagged(y._truncated)
    if not x._terms:
        return y.flagged(x._truncated)
    den = _common_den(x._terms, y._terms)
    acc = {e.numerator * (den // e.denominator): c for e, c in x._terms}
    for e, c in y._terms:
        k = e.numerator * (den // e.denominator)
        acc[k] = acc[k] + c if k in acc else c
    return _from_scaled(acc, den, x._ctx, x._truncated or y._truncated)


def _from_scaled(acc: dict, den: int, ctx: Context, truncated: bool) -> LCNumber:
    items = sorted((k, c) for k, c in acc.items() if c != 0)
    if items:
        cut = items[0][0] + ctx.depth * den
        if items[-1][0] >= cut:
            items = [t for t in items if t[0] < cut]
            truncated = True
    return LCNumber._make(tuple((_exponent(k, den), c) for k, c in items), ctx, truncated)


def neg(x: LCNumber) -> LCNumber:
    return LCNumber._make(tuple((e, -c) for e, c in x._terms), x._ctx, x._truncated)


def sub(x: LCNumber, y: LCNumber) -> LCNumber:
    return add(x, neg(y))


def _fast(c):
    """Exact coefficients go through gmpy2 inside hot loops; floats pass through."""
    return mpq(c.numerator, c.denominator) if type(c) is Fraction else c


def _slow(c, exact: bool):
    return Fraction(int(c.numerator), int(c.denominator)) if exact else c


def mul(x: LCNumber, y: LCNumber) -> LCNumber:
    _check_same(x, y)
    truncated = x._truncated or y._truncated
    if not x._terms or not y._terms:
        return LCNumber._make((), x._ctx, truncated)
    # exponents scaled to integers over a common denominator: int keys hash
    # and add far faster than Fractions in the inner loop
    den = _common_den(x._terms, y._terms)
    xs = [(e.numerator * (den // e.denominator), _fast(c)) for e, c in x._terms]
    ys = [(e.numerator * (den // e.denominator), _fast(c)) for e, c in y._terms]
    cut = xs[0][0] + ys[0][0] + x._ctx.depth * den
    acc: dict = {}
    for e1, c1 in xs:
        for e2, c2 in ys:
            e = e1 + e2
            if e >= cut:
                truncated = True
                break
            acc[e] = acc[e] + c1 * c2 if e in acc else c1 * c2
    exact = x._ctx.exact
    items = tuple((_exponent(e, den), _slow(c, exact)) for e, c in sorted(acc.items()) if c != 0)
    return LCNumber._make(items, x._ctx, truncated)


def inverse(x: LCNumber) -> LCNumber:
    """Reciprocal, exact for monomials and a depth-order geometric series otherwise."""
    if not x._terms:
        raise ZeroDivisionError("division by zero")
    ctx = x._ctx
    q, c = x._terms[0]
    if len(x._terms) == 1:
        return LCNumber._make(((-q, ctx.one / c),), ctx, x._truncated)
    # x = c eps^q (1 + u).  The support of 1/(1+u) is the set of sums of
    # exponents of u below the depth, and b_e = -sum_f u_f b_{e-f}.
    den = _common_den(x._terms)
    k0 = q.numerator * (den // q.denominator)
    c = _fast(c)
    u = [(e.numerator * (den // e.denominator) - k0, _fast(ci) / c) for e, ci in x._terms[1:]]
    depth = ctx.depth * den
    support = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            for f, _ in u:
                e = s + f
                if e < depth and e not in support:
                    support.add(e)
                    nxt.append(e)
        frontier = nxt
    one = _fast(ctx.one)
    b = {0: one}
    for e in sorted(support)[1:]:
        acc = one - one
        for f, uf in u:
            if f > e:
                break
            prev = b.get(e - f)
            if prev is not None:
                acc -= uf * prev
        b[e] = acc
    inv_c = one / c
    exact = ctx.exact
    items = tuple((_exponent(e - k0, den), _slow(v * inv_c, exact)) for e, v in sorted(b.items()) if v != 0)
    return LCNumber._make(items, ctx, True)


def compare(x: LCNumber, y: LCNumber) -> Sign3:
    d = sub(x, y)
    return _sign(d._terms[0][1]) if d._terms else Sign3.ZERO


def classify(x: LCNumber) -> Classification:
    if not x._terms:
        return Classification("zero", "limited")
    q = x._terms[0][0]
    if q > 0:
        return Classification("infinitesimal", "limited")
    if q == 0:
        return Classification("appreciable", "limited")
    return Classification("infinite", "unlimited")


def st(x: LCNumber) -> Scalar:
    """Standard part: the real number infinitely close to a limited ``x``."""
    if x._terms and x._terms[0][0] < 0:
        raise UnlimitedError("standard part undefined for infinite elements")
    return x.coefficient(0)


def adequal(x: LCNumber, y: LCNumber) -> bool:
    """``x`` and ``y`` differ by an infinitesimal (or not at all)."""
    return sub(x, y).is_infinitesimal()


def truncate_tlh(x: LCNumber) -> LCNumber:
    """Keep only the terms of lowest order of smallness."""
    if not x._terms:
        return x
    return LCNumber._make(x._terms[:1], x._ctx, x._truncated)


@dataclass(frozen=True)
class DecompositionResult:
    order: Exponent
    lead: Scalar
    residue: LCNumber

    def recompose(self) -> LCNumber:
        ctx = self.residue.context
        return LCNumber.monomial(self.lead, self.order, ctx) * (self.residue + 1)


def decompose(q: LCNumber) -> DecompositionResult:
    """Split ``q`` as ``lead * eps**order * (1 + residue)`` with residue infinitesimal."""
    if not q._terms:
        raise DomainError("cannot decompose zero")
    order, lead = q._terms[0]
    residue = LCNumber._make(tuple((e - order, c / lead) for e, c in q._terms[1:]), q._ctx, q._truncated)
    return DecompositionResult(order, lead, residue)


def exceeds(a: LCNumber, b: LCNumber) -> Optional[int]:
    """Least positive integer ``n`` with ``n*a > b``, or None when no multiple of ``a`` gets there."""
    _check_same(a, b)
    if compare(a, LCNumber._make((), a._ctx, False)) is not Sign3.POSITIVE:
        raise DomainError("exceeds requires a > 0")
    if compare(a, b) is Sign3.POSITIVE:
        return 1
    # here 0 < a <= b, so a cannot dominate b
    if a.order > b.order:
        return None
    n0 = math.ceil(b.lead / a.lead)
    for n in range(max(1, n0 - 1), n0 + 3):
        if compare(a.scale(n), b) is Sign3.POSITIVE:
            while n > 1 and compare(a.scale(n - 1), b) is Sign3.POSITIVE:
                n -= 1
            return n
    raise ArithmeticError(f"no multiple found near {n0}; coefficients lost precision")


def archimedes_lemma_witness(a: LCNumber, b: LCNumber, c: LCNumber) -> Optional[int]:
    """Least ``n`` with ``n*(b - a) > c`` for ``a < b`` and ``c > 0``."""
    if not compare(a, b) is Sign3.NEGATIVE:
        raise DomainError("lemma requires a < b")
    if not c > 0:
        raise DomainError("lemma requires c > 0")
    return exceeds(sub(b, a), c)


def hankel_proportion(A: LCNumber, B: LCNumber, C: LCNumber, D: LCNumber) -> bool:
    """Decide ``A:B::C:D``: no rational ``m/n`` separates ``B/A`` from ``D/C``.

    ``nA > mB`` is ``B/A < n/m``, so the proportion holds iff ``B/A`` and
    ``D/C`` define the same cut on the rationals.  Both cuts are read off
    without dividing: the ratio is unlimited iff the numerator has the lower
    order, and ``sign(B/A - r) = sign(B - r*A)`` because ``A > 0``.
    """
    for name, m in (("A", A), ("B", B), ("C", C), ("D", D)):
        if not m > 0:
            raise DomainError(f"magnitude {name} must be positive")
    _check_same(A, C)
    x_inf = B.order < A.order
    y_inf = D.order < C.order
    if x_inf or y_inf:
        return x_inf and y_inf
    r = B.lead / A.lead if B.order == A.order else A.context.zero
    s = D.lead / C.lead if D.order == C.order else C.context.zero
    if r != s:
        return False
    return compare(B, A.scale(r)) == compare(D, C.scale(s))


def _format_scalar(c: Scalar) -> str:
    return repr(c) if isinstance(c, float) else str(c)


def format_monomial(e: Fraction) -> str:
    if e.denominator == 1:
        return "eps" if e == 1 else f"eps^{e.numerator}"
    return f"eps^({e.numerator}/{e.denominator})"


def format_lc(x: LCNumber) -> str:
    """Canonical rendering, ascending exponents, exact rationals as ``p/q``."""
    if not x._terms:
        return "0"
    parts = []
    for i, (e, c) in enumerate(x._terms):
        negative = c < 0
        mag = -c if negative else c
        if e == 0:
            body = _format_scalar(mag)
        elif mag == 1:
            body = format_monomial(e)
        else:
            body = f"{_format_scalar(mag)}*{format_monomial(e)}"
        if i == 0:
            parts.append("-" + body if negative else body)
        else:
            parts.append((" - " if negative else " + ") + body)
    return "".join(parts)


def eps(ctx: Optional[Context] = None) -> LCNumber:
    return LCNumber.eps(ctx)


def constant(value, ctx: Optional[Context] = None) -> LCNumber:
    return LCNumber.constant(value, ctx)
