import json
import math
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from conftest import invoke

SCHEMA = json.loads(resources.files("infinitesimal").joinpath("schema.json").read_text())

# one invocation per subcommand
EVERY_COMMAND = [
    ["st", "2*x + eps", "--bind", "x=3"],
    ["leading", "eps + eps^2"],
    ["decompose", "3*eps^2 + 5*eps^3"],
    ["classify", "eps"],
    ["adequal", "3 + eps", "3"],
    ["compare", "1 + eps", "1"],
    ["archimedean", "exceeds", "2 + eps", "7"],
    ["archimedean", "lemma", "1", "1 + eps", "1"],
    ["hankel", "1", "2", "3", "6"],
    ["derive", "x^2", "--at", "5"],
    ["extremum", "x*(1 - x)", "--lo", "0", "--hi", "1"],
    ["tangent", "x^2", "--at", "1"],
    ["microcont", "1/x", "--at", "2", "--probe", "eps", "--probe=-eps^(1/2)"],
    ["weierstrass", "x^2", "--at", "0", "--eps", "0.01", "--grid", "0.1,0.01"],
    ["leibniz", "product-rule", "x", "x^2", "--at", "2"],
    ["euler", "sine-product", "--x", "1", "--k", "1000"],
    ["euler", "sinh", "--x", "1", "--j", "1000"],
    ["euler", "exp", "--x", "1", "--j", "1000", "--base", "2"],
    ["euler", "factor-identity", "--j", "5", "--a", "1.5", "--b", "-2"],
    ["euler", "cos-bound", "--theta", "0.1"],
    ["euler", "basel", "--n", "100"],
    ["euler", "equal", "eps", "2*eps"],
    ["euler", "cancel", "eps + eps^2", "eps"],
    ["cauchy", "delta", "cos(x)", "--at", "0", "--alpha", "1e-4", "--halfwidth", "0.1"],
    ["cauchy", "limit", "(2*n + 1)/(n + 3)"],
    ["cauchy", "decompose", "3 + eps - eps^2"],
]


@pytest.mark.parametrize("argv", EVERY_COMMAND, ids=lambda a: " ".join(a[:2]))
def test_json_output_validates_and_is_deterministic(argv):
    code, out, err = invoke(["--json", *argv])
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["command"] in (argv[0], f"{argv[0]} {argv[1]}")
    assert invoke(["--json", *argv]) == (code, out, err)
    assert out.count("\n") == 1


@pytest.mark.parametrize("argv", EVERY_COMMAND, ids=lambda a: " ".join(a[:2]))
def test_text_output(argv):
    code, out, err = invoke(argv)
    assert code == 0 and out.strip() and not err


def test_documented_examples():
    assert invoke(["st", "2*x + eps", "--bind", "x=3"]) == (0, "6\n", "")
    assert invoke(["derive", "x^2", "--at", "5"]) == (0, "10\n", "")
    code, out, _ = invoke(["--json", "euler", "basel", "--n", "1000000"])
    assert code == 0
    assert json.loads(out)["output"]["error"] == pytest.approx(1e-6, rel=1e-3)


def test_flags_reported():
    _, out, _ = invoke(["--json", "--depth", "3", "cauchy", "decompose", "1/(1 + eps)"])
    doc = json.loads(out)
    assert doc["flags"] == {"exact": True, "truncated": True}
    assert doc["output"] == {"c": "1", "alpha_part": "-eps + eps^2"}
    _, out, _ = invoke(["--json", "euler", "cos-bound", "--theta", "1"])
    assert json.loads(out)["flags"]["exact"] is False


def test_global_flags_after_command():
    assert invoke(["st", "x + eps", "--bind", "x=1/3", "--json"]) == invoke(["--json", "--bind", "x=1/3", "st", "x + eps"])


def test_leading_minus_needs_separator():
    # argparse reads "-eps" as an option unless "--" ends the options
    assert invoke(["compare", "--", "-eps", "0"]) == (0, "negative\n", "")


def test_float_mode():
    code, out, _ = invoke(["--mode", "float", "derive", "sin(x)", "--at", "1"])
    assert code == 0 and float(out) == math.cos(1.0)


@pytest.mark.parametrize("argv,message", [
    (["st", "eps^-1"], "standard part undefined for infinite elements"),
    (["st", "2 +"], "at column"),
    (["st", "x"], "unbound"),
    (["derive", "sqrt(x)", "--at", "0"], "not differentiable"),
    (["extremum", "x^2", "--lo", "1", "--hi", "2"], "no bracketed critical point"),
    (["cauchy", "limit", "sin(n)"], "limit not computable by this method"),
    (["cauchy", "limit", "n"], "sequence diverges to infinity"),
    (["euler", "equal", "0", "1"], "geometric comparison undefined at zero"),
    (["derive", "sin(x)", "--at", "1"], "float mode"),
    (["st", "1", "--bind", "x"], "bad binding"),
])
def test_domain_errors_exit_1(argv, message):
    code, out, err = invoke(argv)
    assert code == 1 and out == ""
    assert err.startswith("error: ") and message in err and err.count("\n") == 1


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["derive", "x^2"], ["--depth", "1", "st", "1"], ["--mode", "fuzzy", "st", "1"],
    ["euler", "basel", "--n", "ten"], ["archimedean"],
])
def test_usage_errors_exit_2(argv):
    code, out, err = invoke(argv)
    assert code == 2 and out == "" and "usage:" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "infinitesimal", "classify", "eps^-1 + 7"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "kind: infinite\nbound: unlimited\n"
