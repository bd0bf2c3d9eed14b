import io
import json
import re

import pytest

from halfwalk import cli
from halfwalk.closed_forms import orbit_sum
from halfwalk.exact_series import SeriesT
from halfwalk.serialize import dumps


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_count_json():
    code, out, _ = run("count", "--steps", "-1,1", "--len", "4", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["rows"][4] == [[0, "2"], [2, "3"], [4, "1"]]


def test_solve_orbit_sum_order_zero():
    code, out, _ = run("solve", "--method", "orbit-sum", "--order", "0", "--json")
    assert code == 0
    assert json.loads(out)["series"] == {"order": 0, "coeffs": [[[0, "1"]]]}


@pytest.mark.parametrize("method", cli.SOLVE_METHODS)
def test_solve_methods_agree_on_excursions(method):
    code, out, _ = run("solve", "--method", method, "--order", "12", "--json")
    assert code == 0
    coeffs = json.loads(out)["series"]["coeffs"]
    f0 = [dict(map(tuple, c)).get(0, "0") for c in coeffs]
    assert f0 == ["1", "0", "1", "0", "2", "0", "5", "0", "14", "0", "42", "0", "132"]


def test_asymp_catalan():
    code, out, _ = run("asymp", "--rec", "(4+2n),-4(1+2n)", "--depth", "4", "--json")
    assert code == 0
    (E,) = json.loads(out)["expansions"]
    assert E == {"phi": "4", "alpha": "-3/2", "c": ["-9/8", "145/128", "-1155/1024", "36939/32768"]}


def test_negative_leading_value_is_glued():
    code, out, _ = run("unroll", "--rec", "-1, 1", "--init", "-1/2", "--len", "3", "--json")
    assert code == 0
    assert json.loads(out)["values"] == ["-1/2", "-1/2", "-1/2", "-1/2"]


def test_estimate_command():
    code, out, _ = run("estimate", "--rec", "(4+2n),-4(1+2n)", "--init", "1", "--points", "1000,5000", "--json")
    assert code == 0
    assert json.loads(out)["estimate"].startswith("0.5641895")


@pytest.mark.parametrize(
    "argv",
    [
        ("count", "--len", "5"),
        ("solve", "--order", "6"),
        ("convergent", "--k", "2", "--order", "8"),
        ("identities", "--kind", "reflection", "--i", "2", "--n", "6"),
        ("identities", "--kind", "cycle", "--r", "2", "--s", "3", "--brute"),
        ("identities", "--kind", "lagrange", "--n", "10"),
        ("guess", "--verify", "12"),
        ("ode", "--first"),
        ("rec", "--even"),
        ("unroll", "--rec", "(4+n),0,-4(1+n)", "--init", "1,0", "--len", "12"),
        ("asymp", "--rec", "n+2,-(n+1)", "--depth", "3"),
    ],
)
def test_json_round_trip_and_pretty_agreement(argv):
    code, out, _ = run(*argv, "--json")
    assert code == 0
    assert dumps(json.loads(out)) + "\n" == out
    code, pretty, _ = run(*argv)
    assert code == 0
    numbers = set(re.findall(r'"(-?\d+(?:/\d+)?)"', out))
    for num in numbers:
        assert re.search(rf"(?<![\d/]){re.escape(num)}(?![\d/])", pretty), num


@pytest.mark.parametrize(
    "argv, code",
    [
        (("solve", "--method", "classical", "--steps", "-2,1"), 1),
        (("asymp", "--rec", "1,0,-2"), 1),
        (("identities", "--kind", "cycle", "--r", "2", "--s", "4"), 1),
        (("solve", "--order", "-1"), 2),
        (("solve", "--method", "nope"), 2),
        (("unroll", "--rec", "n+(", "--init", "1"), 2),
        (("unroll", "--rec", "n+1,-1", "--init", "1,2"), 2),
        (("frobnicate",), 2),
    ],
)
def test_exit_codes(argv, code):
    got, _, err = run(*argv)
    assert got == code
    assert err


def test_domain_error_names_exception():
    _, _, err = run("asymp", "--rec", "1,-2,1")
    assert "RepeatedRoot" in err


def test_usage_error_names_flag():
    _, _, err = run("unroll", "--rec", "n+1,-1", "--init", "1,2")
    assert "--init" in err


def test_order_environment_variable(monkeypatch):
    monkeypatch.setenv("HALFWALK_ORDER", "3")
    _, out, _ = run("solve", "--json")
    assert json.loads(out)["series"]["order"] == 3
    monkeypatch.setenv("HALFWALK_ORDER", "abc")
    assert run("solve")[0] == 2


def test_selfcheck_passes():
    code, out, _ = run("selfcheck")
    assert code == 0
    assert out.count("PASS") == len(cli.CHECKS) + 1


def test_selfcheck_empty_subset():
    code, out, _ = run("selfcheck", "--only", "", "--json")
    assert code == 0
    assert json.loads(out) == {"ok": True, "checks": []}


def test_selfcheck_catches_off_by_one_in_orbit_sum():
    def shifted(N):
        # one extra step: the series of walks one longer
        F = orbit_sum(N + 1)
        return SeriesT(F.coeffs[1:], N)

    report = cli.selfcheck(only=["five-way"], methods={"orbit-sum": shifted})
    assert not report.ok
    (res,) = report.results
    assert res.name == "five-way" and "orbit-sum" in res.detail


def test_selfcheck_unknown_check():
    assert run("selfcheck", "--only", "bogus")[0] == 2
