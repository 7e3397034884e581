import json

from click.testing import CliRunner

from ffiwa.cli import main


def run(*args, input=None):
    return CliRunner().invoke(main, list(args), input=input, catch_exceptions=False)


def test_theorem_a_command():
    res = run("theorem-a", "--p", "2", "--ew", "1", "--nv", "1", "--lambda-v", "3")
    assert res.exit_code == 0
    body = json.loads(res.output)
    assert body["b_upper"] == 2 and body["b_lower"] == 1


def test_determinism_byte_identical():
    args = ("as-conductor", "--p", "2", "--q", "2", "--kappa", "1/t^3+1/t")
    assert run(*args).output == run(*args).output


def test_parse_error_exit_2():
    res = run("as-conductor", "--p", "2", "--q", "2", "--kappa", "t +")
    assert res.exit_code == 2


def test_domain_error_exit_1():
    res = run("theorem-a", "--p", "3", "--nv", "1", "--lambda-v", "3")
    assert res.exit_code == 2  # invalid datum is malformed input


def test_curve_file_roundtrip(tmp_path):
    curve = {
        "p": 2, "k": 1, "a1": "t", "a2": "0", "a3": "1", "a4": "0", "a6": "0",
        "minimal_attested": True,
    }
    path = tmp_path / "curve.json"
    path.write_text(json.dumps(curve))
    res = run("curve-info", str(path))
    assert res.exit_code == 0
    body = json.loads(res.output)
    assert body["supersingular"]["places"] == ["t"]
    res = run("lfunction", str(path), "--window", "8")
    assert json.loads(res.output)["coeffs"] == [1]
    res = run("mu", str(path), "--window", "8")
    assert json.loads(res.output)["mu"] == 0


def test_toml_curve_file(tmp_path):
    text = "\n".join(
        [
            'p = 2', 'k = 1', 'a1 = "t"', 'a2 = "0"', 'a3 = "1"', 'a4 = "0"',
            'a6 = "0"', 'minimal_attested = true',
        ]
    )
    path = tmp_path / "curve.toml"
    path.write_text(text)
    res = run("curve-info", str(path))
    assert res.exit_code == 0


def test_audit_command(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps({"p": 2, "mu_L": 0, "m_L": 0, "delta": [0, 0]}))
    res = run("audit", str(path))
    assert res.exit_code == 0
    assert json.loads(res.output)["mu_Lprime"] == 0


def test_verify_command():
    res = run("verify", "--suite", "asymp")
    assert res.exit_code == 0
    assert json.loads(res.output)["pass"] is True


def test_examples_command():
    res = run("examples", "--section", "5.3")
    assert res.exit_code == 0
    body = json.loads(res.output)
    assert body["pass"] is True


def test_output_file_and_pretty(tmp_path):
    out = tmp_path / "report.json"
    res = run("--pretty", "--output", str(out), "theorem-a", "--p", "2", "--nv", "1",
              "--lambda-v", "1")
    assert res.exit_code == 0
    data = json.loads(out.read_text())
    assert data["b_upper"] == 0
