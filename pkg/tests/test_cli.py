import io
import json
import math
import pathlib
import subprocess
import sys

import pytest

from conicquad.cli import round_json, run, run_report
from conicquad.engine import QuadratureIdentity

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_nodes_parabola_json():
    code, out, _ = call("nodes", "--conic", "parabola", "--a", "0.5", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["plane"] == "physical" and len(d["nodes"]) == 1
    (n,) = d["nodes"]
    assert n["order"] == 2
    assert n["coeffs"][0][0] == pytest.approx(0.6464466, abs=1e-7)
    assert n["coeffs"][1][0] == pytest.approx(1.2071068, abs=1e-7)
    assert n["z"][0] == pytest.approx(-1 - math.sqrt(2))


def test_nodes_json_is_deterministic_and_round_trips():
    argv = ("nodes", "--conic", "hyperbola", "--a", "1", "--b", "2", "--json")
    a, b = call(*argv)[1], call(*argv)[1]
    assert a == b
    ident = QuadratureIdentity.from_json(json.loads(a))
    assert len(ident.nodes) == 2


def test_nodes_variants():
    code, out, _ = call("nodes", "--conic", "hyperbola", "--a", "1", "--b", "1", "--plane", "parameter")
    assert code == 0 and "order=2" in out
    code, out, _ = call("nodes", "--conic", "hyperbola", "--a", "1", "--b", "1", "--eps", "0.1", "--json")
    assert code == 0 and json.loads(out)["measure"] == "euclidean_scaled"
    code, _, err = call("nodes", "--conic", "hyperbola", "--a", "1", "--b", "1", "--measure", "euclidean")
    assert code == 2 and "--eps" in err
    code, out, _ = call("nodes", "--conic", "ellipse", "--a", "2", "--b", "1", "--side", "exterior", "--json")
    assert code == 0 and len(json.loads(out)["nodes"]) == 2


def test_verify_ellipse():
    code, out, _ = call("verify", "--conic", "ellipse", "--a", "2", "--b", "1", "--tol", "1e-6")
    assert code == 0 and "FAIL" not in out
    code, out, _ = call("verify", "--conic", "parabola", "--a", "1", "--json")
    assert code == 0 and json.loads(out)["pass"] is True


def test_classify():
    code, out, _ = call("classify", "--k", "1", "--l", "0", "--j", "1", "--r", "0")
    assert code == 0 and out.strip() == "cancels_with_divisor_term(1)"
    code, out, _ = call("classify", "--k", "1", "--l", "0", "--j", "-1", "--r", "1", "--s", "1")
    assert out.strip() == "surviving_node"
    code, _, err = call("classify", "--k", "2", "--l", "0", "--j", "1", "--r", "0")
    assert code == 2 and "ell" in err


def test_curve():
    code, out, _ = call("curve", "--conic", "ellipse", "--a", "2", "--b", "1", "--invert", "antipodal", "--json")
    d = json.loads(out)
    assert code == 0 and d["genus"]["singular_count"] == 3 and d["genus"]["genus"] == 0
    code, out, _ = call("curve", "--conic", "parabola", "--a", "1", "--invert", "focus", "--json")
    assert json.loads(out)["genus"]["singular_count"] == 3
    code, _, _ = call("curve", "--conic", "ellipse", "--a", "2", "--b", "1", "--invert", "focus")
    assert code == 2
    code, out, _ = call("curve", "--conic", "hyperbola", "--a", "1", "--b", "1")
    assert code == 0 and "genus=0" in out


def test_catalog_commands():
    code, out, _ = call("catalog", "list")
    assert code == 0 and "loss_of_weight:1" in out.split()
    code, out, _ = call("catalog", "show", "hippopede:2,1")
    assert code == 0 and json.loads(out)["extras"]["planar_weight"] == 0.3125
    assert call("catalog", "show", "nope")[0] == 2
    assert call("catalog", "show")[0] == 2


def test_flag_errors():
    assert call()[0] == 2
    assert call("nodes")[0] == 2
    assert call("nodes", "--conic", "ellipse", "--a", "2")[0] == 2
    assert call("nodes", "--conic", "parabola", "--a", "1", "--b", "1")[0] == 2
    assert call("nodes", "--conic", "ellipse", "--a", "1", "--b", "1")[0] == 2
    assert call("nodes", "--conic", "ellipse", "--a", "1", "--b", "2")[0] == 2
    assert call("verify", "--conic", "ellipse", "--a", "2", "--b", "1", "--tol", "-1")[0] == 2
    assert call("nodes", "--conic", "torus", "--a", "1")[0] == 2
    code, _, err = call("nodes", "--conic", "hyperbola", "--a", "1", "--b", "1", "--eps", "0")
    assert code == 2 and err.startswith("conicquad: error")


def test_report_default_config_passes():
    code, out, _ = call("report")
    assert code == 0
    assert out.strip().endswith("entries pass")
    n = out.strip().splitlines()[-1].split()[0]
    assert n.split("/")[0] == n.split("/")[1]


def test_report_empty_and_wrong_weight(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("[]")
    code, out, _ = call("report", str(empty), "--json")
    assert code == 0 and json.loads(out) == {"pass": True, "rows": []}
    code, out, _ = call("report", str(FIXTURES / "wrong_weight.json"))
    assert code == 1
    flagged = [line for line in out.splitlines() if "FAIL" in line]
    assert len(flagged) == 1 and "<--" in flagged[0]


def test_report_malformed(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("report", str(bad))[0] == 2
    bad.write_text('{"conic": "ellipse"}')
    assert call("report", str(bad))[0] == 2
    bad.write_text('[{"conic": "ellipse", "params": {"a": 1}}]')
    assert call("report", str(bad))[0] == 2
    assert call("report", str(tmp_path / "missing.json"))[0] == 2


def test_run_report_api():
    ok, rows = run_report([{"name": "half", "conic": "power", "params": {"n": 1},
                            "family": [{"kind": "monomial", "r": 0}]}])
    assert ok and rows[0]["name"] == "half"


def test_plot(tmp_path):
    for extra in ([], ["--invert", "antipodal"]):
        out = tmp_path / "x.svg"
        code, _, _ = call("plot", "--conic", "hyperbola", "--a", "1", "--b", "0.5", "--out", str(out), *extra)
        assert code == 0 and out.read_text().startswith("<?xml")
    out = tmp_path / "c.svg"
    assert call("plot", "--conic", "parabola", "--a", "1", "--invert", "focus", "--out", str(out))[0] == 0
    assert 'fill="red"' in out.read_text()


def test_round_json():
    assert round_json({"x": [1 / 3, -0.0, 2]}) == {"x": [0.333333333333, 0.0, 2]}


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "conicquad.cli", "classify", "--k", "0", "--l", "0", "--j", "2",
                        "--r", "0"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "no_residue"
