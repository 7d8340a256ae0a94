import contextlib
import io
from fractions import Fraction

import pytest
from hypothesis import strategies as hs

from infinitesimal import Context, LCNumber, normalize

EXACT = Context(depth=8, mode="exact")
FLOAT = Context(depth=8, mode="float")


def rationals(bound=100, max_den=12):
    """Nonzero p/q with |p/q| <= bound."""
    return (
        hs.integers(1, max_den)
        .flatmap(lambda q: hs.tuples(hs.integers(-bound * q, bound * q).filter(bool), hs.just(q)))
        .map(lambda t: Fraction(*t))
    )


@hs.composite
def lc_numbers(draw, ctx=EXACT, lo=0, hi=6, den=2, max_terms=None, nonzero=False):
    """Random series with exponents in ``{lo, ..., hi}/den``."""
    grid = [Fraction(k, den) for k in range(lo, hi + 1)]
    size = max_terms or len(grid)
    exps = draw(hs.lists(hs.sampled_from(grid), min_size=1 if nonzero else 0, max_size=size, unique=True))
    coeffs = draw(hs.lists(rationals(), min_size=len(exps), max_size=len(exps)))
    return normalize(zip(exps, coeffs), ctx)


def agree_within_window(a: LCNumber, b: LCNumber) -> bool:
    """Exact equality, or equality below ``order + depth`` of the truncated side.

    That bound is the carried precision only when no cancellation happened
    after the truncation, which holds for the direct products this is used on.
    """
    if not (a.truncated or b.truncated):
        return a == b
    d = a - b
    if d.is_zero:
        return True
    depth = a.context.depth
    known = min(t.order + depth for t in (a, b) if not t.is_zero) if not (a.is_zero and b.is_zero) else 0
    return d.order >= known


def invoke(argv):
    """Run the CLI in-process; returns ``(exit_code, stdout, stderr)``."""
    from infinitesimal.cli import run

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


# -- acceptance reporting ---------------------------------------------------

_acceptance: dict = {}


def pytest_runtest_logreport(report):
    number = getattr(report, "acceptance_number", None)
    if number is None:
        return
    entry = _acceptance.setdefault(number, {"title": report.acceptance_title, "ok": True, "seconds": 0.0})
    if report.failed:
        entry["ok"] = False
    if report.when == "call":
        entry["seconds"] = report.duration


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        report = outcome.get_result()
        report.acceptance_number = marker.args[0]
        report.acceptance_title = marker.args[1]


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        entry = _acceptance[number]
        verdict = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {number:2d}: {entry['title']} ({entry['seconds']:.3f} s)")
