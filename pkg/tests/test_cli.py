import csv
import io
import json

import pytest

from arithlab_toolkit.cli import main, parse_args, torsion_structure
from arithlab_toolkit.modforms import forms


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_torsion_of_11a(capsys):
    code, out, _ = run(capsys, "ec", "torsion", "--curve", "11a")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["structure"] == "Z/5Z"
    assert all(entry["passed"] for entry in payload["ledger"])
    assert payload["meta"]["command"] == "ec torsion"


def test_torsion_from_coefficients(capsys):
    # y^2 = x^3 - x has full 2-torsion
    code, out, _ = run(capsys, "ec", "torsion", "--a4", "-1")
    assert code == 0
    assert json.loads(out)["result"]["structure"] == "Z/2Z x Z/2Z"


def test_structure_names():
    assert torsion_structure([]) == "0"
    assert torsion_structure([2, 8]) == "Z/2Z x Z/8Z"


def test_zuk_preset(capsys):
    code, out, _ = run(capsys, "groups", "zuk", "--preset", "z-pm12")
    assert code == 0
    assert json.loads(out)["result"]["lambda1"] == pytest.approx(0.5)


def test_bad_argument_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        parse_args(["groups", "zuk", "--preset", "octahedron"])
    assert exc.value.code == 2


def test_domain_error_exits_2(capsys):
    code, _, err = run(capsys, "groups", "diameter", "--p", "9")
    assert code == 2
    assert "arithlab: error" in err


def test_unknown_filter_exits_2(capsys):
    code, _, err = run(capsys, "reproduce", "--filter", "topology", "-s")
    assert code == 2


def test_missing_env_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "--env-file", str(tmp_path / "nope"), "modforms", "tau")
    assert code == 2
    assert "does not exist" in err


def test_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "modforms", "tau", "--max", "5", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "tau(n)"]
    assert rows[1:] == [["1", "1"], ["2", "-24"], ["3", "252"], ["4", "-1472"], ["5", "4830"]]


def test_output_file_and_determinism(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path, threads in zip(paths, ("1", "3")):
        assert main(["ec", "ap", "--curve", "11a", "--max", "40", "-j", threads,
                     "-o", str(path)]) == 0
    a, b = (json.loads(p.read_text(encoding="utf-8")) for p in paths)
    assert a["result"] == b["result"] and a["ledger"] == b["ledger"]
    ap = {row["p"]: row["a_p"] for row in a["result"]}
    assert ap[2] == -2 and ap[13] == 4


def test_seeded_sampling_is_reproducible(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "fourier", "ap3", "--group", "z101", "--density", "0.3",
                           "--seed", "7")
        assert code == 0
        payload = json.loads(out)
        outs.append((payload["result"], payload["ledger"]))
    assert outs[0] == outs[1]


def test_failed_invariant_exits_1(capsys, monkeypatch):
    original = forms.sigma_table

    def off_by_one(n_max, k):
        table = list(original(n_max, k))
        return [v + 1 if i and k == 3 else v for i, v in enumerate(table)]

    monkeypatch.setattr(forms, "sigma_table", off_by_one)
    code, out, err = run(capsys, "modforms", "sigma", "--n-max", "20")
    assert code == 1
    assert "sigma_7" in err
    ledger = json.loads(out)["ledger"]
    assert [e["passed"] for e in ledger] == [False, False]


def test_theta_e8_csv(capsys):
    code, out, _ = run(capsys, "modforms", "theta-e8", "--precision", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[1:] == [["0", "1"], ["1", "240"], ["2", "2160"], ["3", "6720"]]


def test_quat_classes_11(capsys):
    code, out, _ = run(capsys, "quat", "classes", "--disc", "11")
    assert code == 0
    payload = json.loads(out)
    assert all(entry["passed"] for entry in payload["ledger"])


def test_height_mahler_lehmer(capsys, fixtures):
    code, out, _ = run(capsys, "height", "mahler", "--poly", "1,1,0,-1,-1,-1,-1,-1,0,1,1")
    assert code == 0
    value = json.loads(out)["result"]["mahler"]["value"]
    assert float(value) == pytest.approx(float(fixtures["lehmer_mahler"]), abs=1e-12)
