"""Spec-file grammar, CLI golden behavior and exit codes."""

import json

import pytest

from wilc.cli import main
from wilc.errors import CoefficientOutOfRange, SpecSyntax, UndeclaredRing
from wilc.specfile import parse_spec

WORKED = """\
# the worked 2x2 matrix example
ring matrf r=2
n = 3
a1 = [[0, z], [1, 0]]
a2 = 0
a3 = 0
"""

NSZ = """\
ring quasimodular
n = 3
a1 = -(1/6)*E2
a2 = (1/72)*(E2^2 - E4) - (169/300)*E4
a3 = (1271/1080)*E6
"""


def test_parse_spec_worked_example():
    spec = parse_spec(WORKED)
    assert spec.kind == "matrf" and spec.r == 2 and spec.n == 3
    from wilc.invariants import miura_extract

    data = miura_extract(spec.operator())
    assert str(data[2]) == "[[-z, -1], [0, -z]]"


def test_parse_spec_round_trip():
    for text in (WORKED, NSZ, "ring ratfunc\nn = 2\na1 = (z^2 + 1)/(z - 2)\na2 = -1/2*z\n"):
        spec = parse_spec(text)
        rendered = spec.render()
        assert parse_spec(rendered).render() == rendered


def test_parse_spec_errors():
    with pytest.raises(CoefficientOutOfRange):
        parse_spec("ring ratfunc\nn = 0\n")
    with pytest.raises(CoefficientOutOfRange):
        parse_spec("ring ratfunc\nn = 2\na3 = z\n")
    with pytest.raises(UndeclaredRing):
        parse_spec("n = 2\na1 = z\n")
    with pytest.raises(UndeclaredRing):
        parse_spec("ring weyl\nn = 2\n")
    with pytest.raises(SpecSyntax):
        parse_spec("ring ratfunc\nn = 2\na1 = E4\n")
    with pytest.raises(SpecSyntax):
        parse_spec("ring ratfunc\nn = 2\na1 = z +* 2\n")
    with pytest.raises(SpecSyntax):
        parse_spec("ring quasimodular\nn = 1\na1 = 1/E4\n")
    with pytest.raises(SpecSyntax):
        parse_spec("ring matrf r=2\nn = 1\na1 = [[z, 0]]\n")


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_cli_invariants_worked_example(tmp_path, capsys):
    path = _write(tmp_path, "worked.spec", WORKED)
    code = main(["invariants", path, "--trace", "I2", "--trace", "I2*I2", "--det", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "I2 = [[-z, -1], [0, -z]]" in out
    assert "tr(I2) = -2*z" in out
    assert "tr(I2*I2) = 2*z^2" in out
    assert "det(I3) = -4*z^3 - 4" in out


def test_cli_invariants_json_exact_strings(tmp_path, capsys):
    path = _write(tmp_path, "nsz.spec", NSZ)
    code = main(["invariants", path, "--w", "3", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    assert doc["invariants"]["I2"] == "-133/225*E4"
    assert doc["w"]["W3"] == "598/675*E6"
    assert doc["status"] == "ok"

    def no_floats(x):
        if isinstance(x, dict):
            return all(no_floats(v) for v in x.values())
        if isinstance(x, list):
            return all(no_floats(v) for v in x)
        return not isinstance(x, float)

    assert no_floats(doc)
    assert "." not in out.replace("residuals", "").replace("status", "")


def test_cli_invariants_n1(tmp_path, capsys):
    path = _write(tmp_path, "n1.spec", "ring ratfunc\nn = 1\na1 = z\n")
    code = main(["invariants", path, "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["invariants"] == {} and doc["status"] == "ok"


def test_cli_reparam(tmp_path, capsys):
    path = _write(tmp_path, "d2.spec", "ring ratfunc\nn = 2\na1 = 0\na2 = 0\n")
    code = main(["reparam", path, "--lambda", "z^2", "--check-w", "2", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["invariants"]["I2^lambda"] == "-3/4/(z^2)"
    assert doc["residuals"]["W2-tensoriality"] == "0"
    code = main(["reparam", path, "--lambda", "(2*z+1)/(z+1)", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["schwarzian"]["S"] == "0"


def test_cli_reparam_constant_lambda_refused(tmp_path, capsys):
    path = _write(tmp_path, "d2.spec", "ring ratfunc\nn = 2\na1 = 0\na2 = 0\n")
    code = main(["reparam", path, "--lambda", "3"])
    assert code == 2


def test_cli_star(tmp_path, capsys):
    path = _write(tmp_path, "worked.spec", WORKED)
    code = main(["star", path, "--u", "[[z, 1], [0, z^2]]", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["residuals"]["I2-shift"] == "0"
    assert doc["residuals"]["I3-shift"] == "0"
    assert doc["coefficients"]["a1"] == "[[-z, z - 1], [1, -z^2]]"


def test_cli_modular(capsys):
    assert main(["modular", "mlde", "--k", "0", "--alpha", "1/144", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["invariants"]["I2"] == "0"
    assert main(["modular", "nsz", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["w"]["W3"] == "598/675*E6"
    assert doc["constant_q_coefficient"] == "17424/15625"
    assert main(["modular", "hm", "--m", "1", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["h_m"] == "-169/100*E4" and doc["depth0"] == "True"
    assert main(["modular", "hm", "--m", "2"]) == 3


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["verify", "bogus"]) == 1
    assert main(["invariants", str(tmp_path / "missing.spec")]) == 2
    bad = _write(tmp_path, "bad.spec", "ring ratfunc\nn = 0\n")
    assert main(["invariants", bad]) == 2
    sing = _write(tmp_path, "sing.spec", "ring matrf r=2\nn = 2\na1 = [[z, z], [z, z]]\na2 = 0\n")
    code = main(["star", sing, "--u", "[[0, 0], [0, 0]]"])
    assert code == 0  # star action needs no inversion
    capsys.readouterr()


def test_cli_verify_suite(capsys):
    assert main(["verify", "modular"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_cli_siegel_seeded_deterministic(capsys):
    assert main(["siegel", "chain", "--seed", "7", "--format", "json"]) == 0
    first = capsys.readouterr().out
    assert main(["siegel", "chain", "--seed", "7", "--format", "json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    assert all(v == "0" for v in doc["residuals"].values())
