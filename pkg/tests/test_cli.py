import io
import json
import subprocess
import sys

import pytest

from boefluct import cli


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_cumulant_free():
    code, data = run_json("cumulant", "--jacobi", "free", "--poly", "x", "--order", "2", "--size", "10")
    assert code == 0
    assert data["schema"] == "boe-fluct/1"
    assert data["value_paths"] == "1/4" and data["value_traces"] == "1/4"


def test_cumulant_first_order():
    code, data = run_json("cumulant", "--jacobi", "hermite", "--poly", "x^2", "--order", "1", "--size", "6")
    assert code == 0 and data["value_traces"] == pytest.approx(6.0)


def test_cumulant_from_matrix_file(tmp_path):
    from boefluct import right_limits as rl

    path = tmp_path / "m.json"
    path.write_text(json.dumps(rl.hermite_jacobi(5).to_json((0, 20))))
    code, data = run_json("cumulant", "--matrix", str(path), "--poly", "x^3 - x", "--order", "4", "--size", "5")
    assert code == 0
    assert data["value_paths"] == pytest.approx(126.2208, rel=1e-12)


def test_mcl():
    code, data = run_json("mcl", "--n", "3", "--trials", "50", "--seed", "7")
    assert code == 0 and data["all_equal"]
    assert {"identity", "n", "input", "lhs", "rhs", "equal"} <= set(data["certificates"][0])


def test_identities_all():
    code, data = run_json("identities", "--n", "4", "--trials", "3", "--seed", "2")
    assert code == 0 and data["all_equal"]


def test_varpi_periodic():
    code, data = run_json("varpi", "--order", "4")
    assert code == 0 and data["value"] == "3/128"


def test_variance_and_symbol_parsing():
    code, data = run_json("variance", "--poly", "x", "--symbol", "{-1: 1, 0: 3, 1: 3, 2: 1}")
    assert code == 0 and data["fourier_value"] == 3 and data["devinatz_value"] is None


def test_right_limit_csv_default():
    code, text = run("right-limit", "--family", "hermite", "--N", "100,200,400")
    assert code == 0
    header = text.splitlines()[0].split(",")
    assert header[:3] == ["i", "j", "limit"] and header[-1] == "rate"


def test_right_limit_no_limit():
    code, text = run("right-limit", "--family", "alternating", "--N", "100,101,102", "--json")
    assert code == 0 and json.loads(text)["status"] == "no-limit"


def test_ginibre_subcommands():
    assert run_json("ginibre", "symbol", "--m", "2", "--theta", "1,1,1")[1]["symbol"] == {"-1": 1, "0": 3, "1": 3, "2": 1}
    assert run_json("ginibre", "variance", "--m", "2", "--theta", "1,1,1", "--poly", "x")[1]["variance"] == 3
    code, data = run_json("ginibre", "rates", "--m", "2")
    assert code == 0


def test_simulate_csv_rows():
    code, text = run("simulate", "--ensemble", "gue", "--n", "10", "--samples", "4", "--poly", "x", "--seed", "3",
                     "--csv")
    lines = text.splitlines()
    assert code == 0 and lines[0] == "sample_index,statistic_value" and len(lines) == 5


def test_simulate_function():
    code, data = run_json("simulate", "--ensemble", "gue", "--n", "10", "--samples", "20", "--function",
                          "abs(x)**3", "--seed", "1")
    assert code == 0 and data["summary"]["variance_bound"] is not None


def test_simulate_env_seed(monkeypatch):
    args = ("simulate", "--ensemble", "cue", "--n", "8", "--samples", "3", "--symbol", "{-1: 1, 1: 1}", "--csv")
    monkeypatch.setenv("BOEFLUCT_SEED", "5")
    a = run(*args)[1]
    explicit = run(*args, "--seed", "5")[1]
    monkeypatch.setenv("BOEFLUCT_SEED", "6")
    b = run(*args)[1]
    assert a == explicit and a != b


def test_byte_identical_output():
    args = ("simulate", "--ensemble", "ginibre", "--m", "2", "--n", "12", "--samples", "30", "--poly", "x",
            "--seed", "9")
    assert run(*args)[1] == run(*args)[1]


def test_szego_and_basis():
    code, data = run_json("szego")
    assert code == 0 and data["within_tol"]
    code, data = run_json("chebyshev-basis", "--n", "8")
    assert code == 0


def test_acceptance_single_check():
    code, data = run_json("acceptance", "--suite", "primary", "--only", "AC4")
    assert code == 0 and data["results"][0]["id"] == "AC4"


@pytest.mark.parametrize("argv", [
    ("cumulant", "--poly", "x^"),
    ("variance", "--symbol", "{1 1}"),
    ("nonsense",),
    ("cumulant", "--order", "two"),
    ("simulate", "--function", "__import__('os')"),
    ("acceptance", "--only", "AC99"),
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_tolerance_failure_exits_1():
    code, data = run_json("szego", "--N", "1,2", "--tol", "1e-30")
    assert code == 1 and not data["within_tol"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "boefluct", "varpi", "--symbol", "{-1: 1/2, 1: 1/2}"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == "1/4"
