import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import crandn
from finite_gabor import GroupSpec, Signal
from finite_gabor.cli import main
from finite_gabor.errors import SchemaError
from finite_gabor.formats import (
    lattice_from_json,
    lattice_to_json,
    matrix_to_json,
    parse_generators,
    parse_group,
    signal_from_json,
    signal_to_json,
)
from finite_gabor.group import separable_lattice
from finite_gabor.tfa import tf_shift_matrix


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "--group", "8", "--gens", "2,0;0,2")
    report = json.loads(out)
    assert code == 0
    assert report["lattice_size"] == 16 and report["adjoint_size"] == 4
    assert report["size_product_ok"] and not report["isotropic"] and report["adjoint_isotropic"]
    code, out, _ = run(capsys, "info", "--group", "8", "--gens", "")
    assert json.loads(out)["adjoint_size"] == 64


@pytest.mark.parametrize(
    "argv",
    [
        ["info", "--group", "0"],
        ["info", "--group", "x"],
        ["info", "--group", "8", "--gens", "1,2,3"],
        ["info", "--gens", "1,0"],
        ["verify", "--group", "8", "--tol", "-1"],
        ["nonsense"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_dual_identity_case(tmp_path, capsys):
    src = write(tmp_path / "d0.json", signal_to_json(Signal.delta(GroupSpec((8,)))))
    out = tmp_path / "dual.json"
    code, text, _ = run(capsys, "dual", "--window", src, "--gens", "1,0", "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text()) == json.loads(open(src).read())
    assert json.loads(text)["residual"] == 0.0


def test_dual_undersampled(tmp_path, capsys):
    src = write(tmp_path / "g.json", signal_to_json(Signal.random(GroupSpec((8,)), np.random.default_rng(0))))
    code, text, err = run(capsys, "dual", "--window", src, "--gens", "4,0;0,4")
    assert code == 1
    assert json.loads(text)["diagnostics"]["lower_bound"] == 0.0
    assert "not a frame" in err
    assert run(capsys, "tight", "--window", src, "--gens", "4,0;0,4")[0] == 1


def test_tight_roundtrip(tmp_path, capsys):
    src = write(tmp_path / "g.json", signal_to_json(Signal.random(GroupSpec((8,)), np.random.default_rng(1))))
    out = tmp_path / "t.json"
    assert run(capsys, "tight", "--window", src, "--gens", "2,0;0,2", "--out", str(out))[0] == 0
    code, text, _ = run(capsys, "bounds", "--window", str(out), "--gens", "2,0;0,2")
    d = json.loads(text)
    assert code == 0
    assert abs(d["lower_bound"] - 1) < 1e-10 and abs(d["upper_bound"] - 1) < 1e-10


def test_bounds_examples(tmp_path, capsys):
    G8, G4 = GroupSpec((8,)), GroupSpec((4,))
    unit = Signal.random(G8, np.random.default_rng(2), normalize=True)
    src = write(tmp_path / "u.json", signal_to_json(unit))
    d = json.loads(run(capsys, "bounds", "--window", src, "--gens", "1,0;0,1")[1])
    assert d["lower_bound"] == pytest.approx(8) and d["upper_bound"] == pytest.approx(8)
    a = write(tmp_path / "a.json", signal_to_json(Signal.delta(G4, 0)))
    b = write(tmp_path / "b.json", signal_to_json(Signal.delta(G4, 1)))
    d = json.loads(run(capsys, "bounds", "--window", a, "--window", b, "--gens", "1,0")[1])
    assert (d["lower_bound"], d["upper_bound"], d["windows"]) == (2.0, 2.0, 2)
    both = tmp_path / "both.json"
    both.write_text(json.dumps([signal_to_json(Signal.delta(G4, 0)), signal_to_json(Signal.delta(G4, 1))]))
    assert json.loads(run(capsys, "bounds", "--windows", str(both), "--gens", "1,0")[1])["upper_bound"] == 2.0
    z = write(tmp_path / "z.json", signal_to_json(Signal(G8, np.zeros(8))))
    code, text, _ = run(capsys, "bounds", "--window", z, "--gens", "1,0")
    d = json.loads(text)
    assert code == 0 and d["lower_bound"] == 0 and d["upper_bound"] == 0


def test_bounds_schema_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "bounds", "--window", str(bad))[0] == 2
    short = write(tmp_path / "s.json", {"group": [8], "re": [1, 0], "im": [0, 0]})
    assert run(capsys, "bounds", "--window", short)[0] == 2
    assert run(capsys, "bounds", "--window", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "bounds")[0] == 2
    g = write(tmp_path / "g.json", signal_to_json(Signal.delta(GroupSpec((8,)))))
    assert run(capsys, "bounds", "--window", g, "--group", "4")[0] == 2


def _csv_rows(text):
    rows = [line.split(",") for line in text.splitlines() if not line.startswith("#")]
    return rows[0], rows[1:]


def test_spreading(tmp_path, capsys):
    G = GroupSpec((4,))
    m = write(tmp_path / "i.json", matrix_to_json(np.eye(4), G))
    code, text, _ = run(capsys, "spreading", "--matrix", m)
    header, rows = _csv_rows(text)
    assert code == 0 and header == ["k_index", "r_index", "re", "im", "abs"]
    assert len(rows) == 16
    nonzero = [r for r in rows if abs(float(r[4])) > 1e-12]
    assert nonzero == [["0", "0", "1.0", "0.0", "1.0"]]
    q = G.point((1, 3))
    m = write(tmp_path / "q.json", matrix_to_json(tf_shift_matrix(q, G), G))
    _, rows = _csv_rows(run(capsys, "spreading", "--matrix", m)[1])
    nonzero = [i for i, r in enumerate(rows) if abs(float(r[4])) > 1e-12]
    assert nonzero == [G.point_index(q)]
    A = crandn(np.random.default_rng(3), 4, 4)
    m = write(tmp_path / "a.json", matrix_to_json(A, G))
    text = run(capsys, "spreading", "--matrix", m)[1]
    footer = text.strip().splitlines()[-1]
    assert footer.startswith("# sum_abs2=")
    fields = dict(kv.split("=") for kv in footer[2:].split(","))
    assert float(fields["sum_abs2"]) == pytest.approx(np.linalg.norm(A) ** 2 / 4)
    assert float(fields["expected"]) == pytest.approx(np.linalg.norm(A) ** 2 / 4)
    js = json.loads(run(capsys, "spreading", "--matrix", m, "--format", "json")[1])
    assert len(js["re"]) == 16


def test_spreading_shape_mismatch(tmp_path, capsys):
    m = write(tmp_path / "m.json", {"group": [3], "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]})
    assert run(capsys, "spreading", "--matrix", m)[0] == 2


def test_verify(capsys):
    code, text, _ = run(capsys, "verify", "--group", "8", "--seed", "0")
    assert code == 0
    assert "FAIL" not in text
    code2, text2, _ = run(capsys, "verify", "--group", "8", "--seed", "0")
    assert text == text2
    code, text, _ = run(capsys, "verify", "--group", "2,3", "--seed", "1", "--format", "json")
    report = json.loads(text)
    assert code == 0 and report["all_passed"]
    assert all(r["residual"] < 1e-10 for r in report["results"])


def test_verify_honest_failure(capsys, monkeypatch):
    monkeypatch.setenv("FINITE_GABOR_TOL", "1e-16")
    code, text, err = run(capsys, "verify", "--group", "4")
    assert code == 1
    assert "FAIL" in text and "identities above tolerance" in err
    monkeypatch.setenv("FINITE_GABOR_TOL", "abc")
    assert run(capsys, "verify", "--group", "4")[0] == 2


def test_json_roundtrip(rng):
    G = GroupSpec((2, 3))
    f = Signal.random(G, rng)
    assert signal_from_json(json.loads(json.dumps(signal_to_json(f)))).allclose(f, atol=0)
    lat = separable_lattice(GroupSpec((8,)), 2, 4)
    back = lattice_from_json(json.loads(json.dumps(lattice_to_json(lat))))
    assert back.same_elements(lat) and back.generators == lat.generators
    with pytest.raises(SchemaError):
        signal_from_json({"group": [2, 3], "re": [0] * 6})
    with pytest.raises(SchemaError):
        lattice_from_json({"group": [8], "generators": [[1, 2, 3]]})


def test_flag_grammar():
    G = GroupSpec((2, 3))
    assert parse_generators("1,2,0,1; 0,0,1,1", G) == [G.point([1, 2, 0, 1]), G.point([0, 0, 1, 1])]
    assert parse_generators("  ", G) == []
    assert parse_group("2, 3") == G
    with pytest.raises(SchemaError):
        parse_generators("1,a", GroupSpec((4,)))


def test_console_script_byte_identical():
    cmd = [sys.executable, "-m", "finite_gabor.cli", "verify", "--group", "8", "--seed", "0"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0
    assert a.stdout == b.stdout
