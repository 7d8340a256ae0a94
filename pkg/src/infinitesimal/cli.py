"""Command-line front end.

Every library operation has one subcommand.  Results print as plain text or,
with ``--json``, as one JSON object per invocation (see ``schema.json``).
Exit status is 0 on success, 1 on a domain or parse error, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import dataclasses
import enum
import json
import math
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import cauchy, euler
from . import fermat_leibniz as fl
from .analytic import evaluate, parse_number
from .core import (
    Classification,
    Context,
    LCNumber,
    archimedes_lemma_witness,
    classify,
    compare,
    decompose,
    exceeds,
    hankel_proportion,
    st,
    truncate_tlh,
)
from .core import adequal as _adequal
from .errors import InfinitesimalError
from .expr import parse

FLOAT = Context(mode="float")


class _Run:
    """Per-invocation state: context, bindings, and whether anything got truncated."""

    def __init__(self, args):
        self.args = args
        self.ctx = Context(depth=args.depth, mode=args.mode, tol=args.tol)
        self.truncated = False
        self.exact = self.ctx.exact
        self.binding = {}
        for item in args.bind or []:
            name, sep, value = item.partition("=")
            if not sep or not name.strip():
                raise InfinitesimalError(f"bad binding {item!r}; expected var=value")
            self.binding[name.strip()] = parse_number(value, self.ctx)

    def lc(self, text: str) -> LCNumber:
        value = evaluate(parse(text, exact=self.ctx.exact), self.binding, self.ctx)
        self.truncated |= value.truncated
        return value

    def scalar(self, text: str, ctx: Optional[Context] = None):
        value = parse_number(text, ctx or self.ctx)
        if value.terms and (len(value.terms) > 1 or value.order != 0):
            raise InfinitesimalError(f"{text!r} is not a real number")
        return st(value)

    def real(self, text: str) -> float:
        self.exact = False
        return float(self.scalar(text, FLOAT))

    def expr(self, text: str):
        return parse(text, exact=self.ctx.exact)


def _plain(value):
    """Convert a result into JSON-ready data."""
    if isinstance(value, LCNumber):
        return str(value)
    if isinstance(value, Classification):
        return {"kind": value.kind, "bound": value.bound}
    if isinstance(value, enum.Enum):
        return str(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return value if math.isfinite(value) else repr(value)
    if dataclasses.is_dataclass(value):
        return {f.name: _plain(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


def _text(value, indent: str = "") -> str:
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.append(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_text(v)}")
        return "\n".join(lines)
    if isinstance(value, list):
        if not value:
            return "[]"
        lines = []
        for v in value:
            if isinstance(v, dict):
                block = _text(v, indent + "  ")
                lines.append(f"{indent}- " + block[len(indent) + 2:])
            else:
                lines.append(f"{indent}- {_text(v)}")
        return "\n".join(lines)
    if value is None:
        return "absent"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


# -- handlers: each returns (inputs, output) --------------------------------


def _cmd_st(r: _Run):
    return {"expr": r.args.expr}, st(r.lc(r.args.expr))


def _cmd_leading(r):
    return {"expr": r.args.expr}, truncate_tlh(r.lc(r.args.expr))


def _cmd_decompose(r):
    d = decompose(r.lc(r.args.expr))
    return {"expr": r.args.expr}, {"order": d.order, "lead": d.lead, "residue": d.residue}


def _cmd_classify(r):
    return {"expr": r.args.expr}, classify(r.lc(r.args.expr))


def _cmd_adequal(r):
    return {"x": r.args.x, "y": r.args.y}, _adequal(r.lc(r.args.x), r.lc(r.args.y))


def _cmd_compare(r):
    return {"x": r.args.x, "y": r.args.y}, compare(r.lc(r.args.x), r.lc(r.args.y))


def _cmd_exceeds(r):
    return {"a": r.args.a, "b": r.args.b}, exceeds(r.lc(r.args.a), r.lc(r.args.b))


def _cmd_lemma(r):
    a = r.args
    return {"a": a.a, "b": a.b, "c": a.c}, archimedes_lemma_witness(r.lc(a.a), r.lc(a.b), r.lc(a.c))


def _cmd_hankel(r):
    a = r.args
    out = hankel_proportion(r.lc(a.A), r.lc(a.B), r.lc(a.C), r.lc(a.D))
    return {"A": a.A, "B": a.B, "C": a.C, "D": a.D}, out


def _cmd_derive(r):
    at = r.scalar(r.args.at)
    return {"expr": r.args.expr, "at": at}, fl.adequality_derivative(r.expr(r.args.expr), at, r.ctx)


def _cmd_extremum(r):
    lo, hi = r.scalar(r.args.lo), r.scalar(r.args.hi)
    out = fl.adequality_extremum(r.expr(r.args.expr), lo, hi, r.ctx)
    return {"expr": r.args.expr, "lo": lo, "hi": hi}, out


def _cmd_tangent(r):
    at = r.scalar(r.args.at)
    slope, intercept = fl.tangent_line(r.expr(r.args.expr), at, r.ctx)
    return {"expr": r.args.expr, "at": at}, {"slope": slope, "intercept": intercept}


def _cmd_microcont(r):
    at = r.scalar(r.args.at)
    probes = [parse_number(p, r.ctx) for p in r.args.probe] if r.args.probe else None
    rep = fl.microcontinuous_at(r.expr(r.args.expr), at, probes, r.ctx)
    for p, _ in rep.probes:
        r.truncated |= p.truncated
    out = {
        "point": rep.point,
        "microcontinuous": rep.microcontinuous,
        "probes": [{"probe": p, "st_difference": s} for p, s in rep.probes],
        "diagnostics": rep.diagnostics,
    }
    return {"expr": r.args.expr, "at": at}, out


def _cmd_weierstrass(r):
    at, e = r.real(r.args.at), r.real(r.args.eps)
    grid = [r.real(t) for t in r.args.grid.split(",")]
    out = fl.weierstrass_probe(parse(r.args.expr, exact=False), at, e, grid, r.args.samples)
    return {"expr": r.args.expr, "at": at, "eps": e, "grid": grid, "samples": r.args.samples}, out


def _cmd_product_rule(r):
    at = r.scalar(r.args.at)
    rep = fl.product_rule_report(r.expr(r.args.u), r.expr(r.args.v), at, r.ctx)
    r.truncated |= rep.lhs_quotient.truncated or rep.residual.truncated
    return {"u": r.args.u, "v": r.args.v, "at": at}, rep


def _cmd_sine_product(r):
    x = r.real(r.args.x)
    return {"x": x, "k": r.args.k, "hyperbolic": r.args.hyperbolic}, euler.sine_product(x, r.args.k, r.args.hyperbolic)


def _cmd_sinh(r):
    x = r.real(r.args.x)
    value = euler.sinh_surrogate(x, r.args.j)
    return {"x": x, "j": r.args.j}, {"value": value, "reference": math.sinh(x), "abs_error": abs(value - math.sinh(x))}


def _cmd_exp(r):
    x = r.real(r.args.x)
    base = r.real(r.args.base) if r.args.base is not None else None
    value = euler.exp_surrogate(x, r.args.j, base)
    ref = math.exp(x) if base is None else base**x
    return {"x": x, "j": r.args.j, "base": base}, {"value": value, "reference": ref, "abs_error": abs(value - ref)}


def _cmd_factor_identity(r):
    a, b = r.real(r.args.a), r.real(r.args.b)
    return {"j": r.args.j, "a": a, "b": b}, euler.factor_identity_residual(r.args.j, a, b)


def _cmd_cos_bound(r):
    theta = r.real(r.args.theta)
    residual, bound = euler.cos_replacement_residual(theta)
    return {"theta": theta}, {"residual": residual, "bound": bound}


def _cmd_basel(r):
    r.exact = bool(r.args.exact)
    s, target, error = euler.basel_partial(r.args.n, exact=r.args.exact)
    return {"n": r.args.n}, {"sum": s, "target": target, "error": error}


def _cmd_equal(r):
    a, b = r.lc(r.args.a), r.lc(r.args.b)
    out = {"arithmetic": euler.arithmetic_equal(a, b), "geometric": euler.geometric_equal(a, b)}
    return {"a": r.args.a, "b": r.args.b}, out


def _cmd_cancel(r):
    ratio, standard = euler.cancellation_ratio(r.lc(r.args.num), r.lc(r.args.den))
    r.truncated |= ratio.truncated
    return {"num": r.args.num, "den": r.args.den}, {"ratio": ratio, "standard": standard}


def _cmd_delta(r):
    a, alpha, h, tol = r.real(r.args.at), r.real(r.args.alpha), r.real(r.args.halfwidth), r.real(r.args.quad_tol)
    res = cauchy.delta_integral(parse(r.args.expr, exact=False), a, alpha, h, tol)
    return {"expr": r.args.expr, "at": a, "alpha": alpha, "halfwidth": h, "tol": tol}, res


def _cmd_limit(r):
    return {"expr": r.args.expr}, cauchy.limit_via_st(r.expr(r.args.expr), r.ctx)


def _cmd_cauchy_decompose(r):
    c, alpha = cauchy.variable_decompose(r.lc(r.args.expr))
    return {"expr": r.args.expr}, {"c": c, "alpha_part": alpha}


def _depth(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid depth {text!r}") from None
    if value < 2:
        raise argparse.ArgumentTypeError("depth must be an integer >= 2")
    return value


def _tol(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tolerance {text!r}") from None
    if not value >= 0:
        raise argparse.ArgumentTypeError("tolerance must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--depth", type=_depth, default=argparse.SUPPRESS, help="exponent window width (default 8)")
    g.add_argument("--mode", choices=("exact", "float"), default=argparse.SUPPRESS, help="coefficient arithmetic")
    g.add_argument("--tol", type=_tol, default=argparse.SUPPRESS, help="float tolerance (default 1e-12)")
    g.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    g.add_argument("--bind", action="append", default=argparse.SUPPRESS, metavar="VAR=VALUE",
                   help="bind a variable to a number literal; repeatable")

    parser = argparse.ArgumentParser(prog="infinitesimal", description=__doc__.splitlines()[0])
    parser.add_argument("--depth", type=_depth, default=8)
    parser.add_argument("--mode", choices=("exact", "float"), default="exact")
    parser.add_argument("--tol", type=_tol, default=1e-12)
    parser.add_argument("--json", action="store_true", default=False)
    parser.add_argument("--bind", action="append", default=[], metavar="VAR=VALUE")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def cmd(container, name, handler, help, *args):
        p = container.add_parser(name, parents=[common], help=help)
        for a in args:
            p.add_argument(*a[0], **a[1])
        p.set_defaults(handler=handler, name=name)
        return p

    def pos(name, **kw):
        return ((name,), kw)

    def opt(name, **kw):
        return ((name,), dict(required=kw.pop("required", True), **kw))

    expr = pos("expr", help="expression in the mini-language")
    cmd(sub, "st", _cmd_st, "standard part", expr)
    cmd(sub, "leading", _cmd_leading, "keep the lowest-order terms", expr)
    cmd(sub, "decompose", _cmd_decompose, "split as lead*eps^order*(1+residue)", expr)
    cmd(sub, "classify", _cmd_classify, "zero/infinitesimal/appreciable/infinite", expr)
    cmd(sub, "adequal", _cmd_adequal, "infinitely close?", pos("x"), pos("y"))
    cmd(sub, "compare", _cmd_compare, "sign of x - y", pos("x"), pos("y"))

    arch = sub.add_parser("archimedean", help="Archimedean decision procedures").add_subparsers(
        dest="sub", metavar="SUB", required=True)
    cmd(arch, "exceeds", _cmd_exceeds, "least n with n*a > b", pos("a"), pos("b"))
    cmd(arch, "lemma", _cmd_lemma, "least n with n*(b-a) > c", pos("a"), pos("b"), pos("c"))

    cmd(sub, "hankel", _cmd_hankel, "decide A:B::C:D", pos("A"), pos("B"), pos("C"), pos("D"))
    cmd(sub, "derive", _cmd_derive, "adequality derivative", expr, opt("--at"))
    cmd(sub, "extremum", _cmd_extremum, "critical point by adequality", expr, opt("--lo"), opt("--hi"))
    cmd(sub, "tangent", _cmd_tangent, "tangent line", expr, opt("--at"))
    cmd(sub, "microcont", _cmd_microcont, "microcontinuity at a real point", expr, opt("--at"),
        opt("--probe", action="append", required=False, help="infinitesimal probe; repeatable"))
    cmd(sub, "weierstrass", _cmd_weierstrass, "sampled epsilon-delta probe", expr, opt("--at"), opt("--eps"),
        opt("--grid", help="comma-separated descending deltas"), opt("--samples", type=int, default=101, required=False))

    leib = sub.add_parser("leibniz", help="Leibniz procedures").add_subparsers(dest="sub", metavar="SUB", required=True)
    cmd(leib, "product-rule", _cmd_product_rule, "product rule report", pos("u"), pos("v"), opt("--at"))

    eul = sub.add_parser("euler", help="Euler procedures").add_subparsers(dest="sub", metavar="SUB", required=True)
    cmd(eul, "sine-product", _cmd_sine_product, "partial sine product", opt("--x"), opt("--k", type=int),
        opt("--hyperbolic", action="store_true", required=False))
    cmd(eul, "sinh", _cmd_sinh, "sinh through (1+x/j)^j", opt("--x"), opt("--j", type=int))
    cmd(eul, "exp", _cmd_exp, "exp through (1+x/j)^j", opt("--x"), opt("--j", type=int), opt("--base", required=False))
    cmd(eul, "factor-identity", _cmd_factor_identity, "a^j - b^j factorization residual", opt("--j", type=int),
        opt("--a"), opt("--b"))
    cmd(eul, "cos-bound", _cmd_cos_bound, "cosine replacement residual", opt("--theta"))
    cmd(eul, "basel", _cmd_basel, "partial sums of 1/n^2", opt("--n", type=int),
        opt("--exact", action="store_true", required=False, help="exact rational partial sum"))
    cmd(eul, "equal", _cmd_equal, "arithmetic and geometric equality", pos("a"), pos("b"))
    cmd(eul, "cancel", _cmd_cancel, "cancellation ratio", pos("num"), pos("den"))

    cau = sub.add_parser("cauchy", help="Cauchy procedures").add_subparsers(dest="sub", metavar="SUB", required=True)
    cmd(cau, "delta", _cmd_delta, "delta-kernel integral", expr, opt("--at"), opt("--alpha"), opt("--halfwidth"),
        opt("--quad-tol", default="1e-10", required=False, help="quadrature tolerance"))
    cmd(cau, "limit", _cmd_limit, "limit as st at n = 1/eps", expr)
    cmd(cau, "decompose", _cmd_cauchy_decompose, "q = c + alpha", expr)
    return parser


def _command_name(args) -> str:
    sub = getattr(args, "sub", None)
    return f"{args.command} {sub}" if sub else args.command


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        r = _Run(args)
        inputs, output = args.handler(r)
    except (InfinitesimalError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if isinstance(output, LCNumber):
        r.truncated |= output.truncated
    if args.json:
        doc = {
            "command": _command_name(args),
            "inputs": _plain(inputs),
            "output": _plain(output),
            "flags": {"exact": r.exact, "truncated": r.truncated},
        }
        print(json.dumps(doc, sort_keys=True, ensure_ascii=False), file=stdout)
    else:
        print(_text(_plain(output)), file=stdout)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
