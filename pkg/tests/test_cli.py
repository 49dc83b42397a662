import csv
import io
import json
from fractions import Fraction

import numpy as np
import pytest

from mdshash import bounds
from mdshash.cli import main
from mdshash.family import HashFamily
from mdshash.fileio import read_family, write_code, write_family
from mdshash.codes import parity_mds_with_allones


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


def test_bound_u_equal(capsys):
    d = run_json(capsys, "bound", "u", "--n", "9", "--m", "3", "--eps", "1/3")
    assert d["old_raw"] == d["new_raw"] == 3.0
    assert d["dominant"] == "equal"


def test_bound_du_new_dominates(capsys):
    d = run_json(capsys, "bound", "du", "--n", "2187", "--m", "3", "--eps", "3/4")
    assert d["new_N"] == 8 and d["dominant"] == "new"


def test_bound_su_below_floor(capsys):
    code, out, err = run(capsys, "bound", "su", "--n", "8", "--m", "2", "--eps", "1/4")
    assert code == 2 and out == ""
    assert "1/2" in err  # names the floor that was violated


def test_bound_text_output(capsys):
    code, out, _ = run(capsys, "bound", "u", "--n", "9", "--m", "3", "--eps", "1/3")
    assert code == 0
    assert "dominant   equal" in out and "old_raw    3" in out


def test_float_epsilon_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bound", "u", "--n", "9", "--m", "3", "--eps", "0.3x"])
    assert info.value.code == 2
    # decimal strings are read exactly, never as binary floats
    d = run_json(capsys, "bound", "u", "--n", "27", "--m", "3", "--eps", "0.4")
    assert d["eps"] == "2/5" and d["dominant"] == "equal"


def test_precondition_exit_codes(capsys):
    assert run(capsys, "bound", "u", "--n", "3", "--m", "3", "--eps", "1/2")[0] == 2
    assert run(capsys, "compare", "u", "--n", "9", "--m", "3", "--eps", "1/2")[0] == 2
    assert run(capsys, "construct", "rs", "--q", "6", "--k", "2", "--n", "5")[0] == 2
    assert run(capsys, "construct", "rs", "--q", "5", "--k", "2")[0] == 2
    assert run(capsys, "construct", "delta", "--q", "2", "--n", "3")[0] == 2


def test_thresholds_json(capsys):
    d = run_json(capsys, "thresholds", "--n", "8", "--m", "2")
    assert d["quad_coeffs"] == [14.0, 40.0, 18.0]
    assert d["eps4"]["applicable"] and d["eps4"]["value"] == pytest.approx(0.5596, abs=1e-4)
    assert d["eps1"]["applicable"]  # 8 > 2^2
    assert not run_json(capsys, "thresholds", "--n", "4", "--m", "2")["eps1"]["applicable"]
    d = run_json(capsys, "thresholds", "--n", "27", "--m", "3")
    assert d["eps1"]["value"] == pytest.approx(0.4) and d["eps2"]["value"] == pytest.approx(4 / 13)


def test_compare_subfamily_regime(capsys):
    d = run_json(capsys, "compare", "u", "--n", "6", "--m", "2", "--eps", "1/2")
    assert d["dominant"] == "new" and d["new_N"] == 4


def test_construct_rs_then_verify(capsys, tmp_path):
    fam_path = tmp_path / "rs.fam"
    d = run_json(capsys, "construct", "rs", "--q", "5", "--k", "2", "--n", "5", "--out", str(fam_path))
    assert (d["N"], d["n"], d["m"]) == (5, 25, 5)
    assert d["reports"][0]["epsilon"] == "1/5" and d["ok"]
    code, out, _ = run(capsys, "verify", "u", str(fam_path))
    assert code == 0 and "eps_U = 1/5" in out and "verify: pass" in out


def test_construct_subfamily(capsys, tmp_path):
    fam_path = tmp_path / "sub.fam"
    d = run_json(capsys, "construct", "subfamily", "--q", "2", "--i", "1", "--out", str(fam_path))
    assert (d["N"], d["n"], d["m"]) == (4, 6, 2)
    assert d["reports"][0]["epsilon"] == "1/2"
    assert run_json(capsys, "compare", "u", "--n", "6", "--m", "2", "--eps", "1/2")["new_N"] == d["N"]
    assert run(capsys, "verify", "u", str(fam_path))[0] == 0


def test_construct_delta(capsys, tmp_path):
    fam_path = tmp_path / "d.fam"
    d = run_json(capsys, "construct", "delta", "--q", "3", "--n", "4", "--out", str(fam_path))
    assert (d["N"], d["n"], d["m"], d["group"]) == (4, 9, 3, "gf")
    delta = next(r for r in d["reports"] if r["kind"] == "DeltaU")
    assert delta["epsilon"] == "1/2"
    code, out, _ = run(capsys, "verify", "du", str(fam_path))
    assert code == 0 and "eps_DeltaU = 1/2" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("rs", "--q", "3", "--k", "2", "--n", "3"),
        ("rs", "--q", "4", "--k", "3", "--n", "4"),
        ("parity", "--q", "5", "--n", "4"),
        ("subfamily", "--q", "3", "--i", "1"),
        ("delta", "--q", "4", "--n", "4"),
    ],
)
def test_construct_verify_always_passes(capsys, tmp_path, argv):
    fam_path = tmp_path / "x.fam"
    assert run(capsys, "construct", *argv, "--out", str(fam_path))[0] == 0
    assert run(capsys, "verify", "u", str(fam_path))[0] == 0
    assert run(capsys, "verify", "du", str(fam_path))[0] == 0


def test_verify_rs_k2_q3(capsys, tmp_path):
    # RS(3, 2, 3) as a (3; 9, 3) family: eps = 1/3, floor 1/4
    p = tmp_path / "rs.fam"
    run(capsys, "construct", "rs", "--q", "3", "--k", "2", "--n", "3", "--out", str(p))
    code, out, _ = run(capsys, "verify", "u", str(p))
    assert "eps_U = 1/3" in out and "pass U:floor 0.25" in out


def test_verify_injective_single_function(capsys, tmp_path):
    p = tmp_path / "one.fam"
    write_family(HashFamily(np.array([[0, 1, 2]]), 3), p)
    code, out, _ = run(capsys, "verify", "u", str(p))
    assert code == 0
    assert "eps_U = 0" in out and "n/a" in out and "vacuous" in out


def test_verify_su_unbalanced_is_reported(capsys, tmp_path):
    p = tmp_path / "u.fam"
    write_family(HashFamily(np.array([[0, 0, 1], [1, 0, 0]]), 2), p)
    d = run_json(capsys, "verify", "su", str(p))
    assert d["balanced"] is False


def test_verify_truncated_file(capsys, tmp_path):
    p = tmp_path / "bad.fam"
    p.write_text("3 4 2\n0 1 0 1\n1 1 0 0\n")
    code, out, err = run(capsys, "verify", "u", str(p))
    assert code == 4 and "line 3" in err and "truncated" in err


def test_verify_missing_file(capsys, tmp_path):
    assert run(capsys, "verify", "u", str(tmp_path / "nope.fam"))[0] == 4


def test_verify_budget_exceeded(capsys, tmp_path, monkeypatch):
    import mdshash.config as config
    import mdshash.family as family

    tight = config.Limits(event_budget=10)
    monkeypatch.setattr(family, "DEFAULT_LIMITS", tight)
    orig = family.measure_epsilon_su
    monkeypatch.setattr("mdshash.cli.measure_epsilon_su", lambda fam: orig(fam, tight))
    p = tmp_path / "f.fam"
    write_family(HashFamily(np.arange(40).reshape(2, 20) % 3, 3), p)
    code, _, err = run(capsys, "verify", "su", str(p))
    assert code == 3 and "budget" in err.lower()


def test_convert_round_trips(capsys, tmp_path):
    code_path, fam_path, back_path = tmp_path / "c.txt", tmp_path / "f.fam", tmp_path / "c2.txt"
    write_code(parity_mds_with_allones(3, 4), code_path)
    assert run(capsys, "convert", "code2family", str(code_path), str(fam_path))[0] == 0
    assert run(capsys, "convert", "family2code", str(fam_path), str(back_path))[0] == 0
    back = back_path.read_text().splitlines()
    assert back[0] == "3 27 4 generic"
    words = {tuple(map(int, line.split())) for line in back[1:]}
    assert words == {tuple(w) for w in parity_mds_with_allones(3, 4).codewords()}

    delta_path = tmp_path / "d.fam"
    assert run(capsys, "convert", "code2delta", str(code_path), str(delta_path))[0] == 0
    fam = read_family(delta_path)
    assert (fam.N, fam.n, fam.m, fam.group) == (4, 9, 3, "gf")


def test_convert_reports_duplicates(capsys, tmp_path):
    src, dst = tmp_path / "f.fam", tmp_path / "c.txt"
    write_family(HashFamily(np.array([[0, 1, 0], [1, 1, 1]]), 2), src)
    with pytest.warns(UserWarning):
        code, out, _ = run(capsys, "convert", "family2code", str(src), str(dst))
    assert code == 0 and "dropped" in out


def _sweep_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sweep_u_flip(capsys):
    code, out, _ = run(capsys, "sweep", "u", "--n", "10:100", "--m", "3", "--eps", "30/100:1:5/100")
    assert code == 0
    rows = _sweep_rows(out)
    assert out.splitlines()[0] == ",".join(bounds.SWEEP_COLUMNS)
    assert len(rows) == 91 * 15
    flips = 0
    for n in range(10, 101):
        seq = [r["dominant"] for r in rows if int(r["n"]) == n and r["dominant"] in ("old", "new")]
        t = bounds.thresholds(n, 3).eps1
        for r in rows:
            if int(r["n"]) == n and r["dominant"] in ("old", "new"):
                assert r["dominant"] == ("new" if Fraction(r["eps"]) > t else "old")
        flips += "old" in seq and "new" in seq
    assert flips > 0


def test_sweep_empty_grid_header_only(capsys):
    code, out, _ = run(capsys, "sweep", "u", "--n", "10:20", "--m", "3", "--eps", "")
    assert code == 0 and out == ",".join(bounds.SWEEP_COLUMNS) + "\n"


def test_sweep_su_m2(capsys, tmp_path):
    p = tmp_path / "s.csv"
    assert run(capsys, "sweep", "su", "--n", "9:64", "--m", "2", "--eps", "1", "--out", str(p))[0] == 0
    rows = _sweep_rows(p.read_text())
    assert [int(r["n"]) for r in rows] == list(range(9, 65))
    assert all(0.5 < float(r["threshold"]) < 1 for r in rows)


def test_sweep_too_large(capsys):
    assert run(capsys, "sweep", "u", "--n", "3:2000", "--m", "2:30", "--eps", "1/100:1:1/100")[0] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ("bound", "du", "--n", "2187", "--m", "3", "--eps", "3/4"),
        ("thresholds", "--n", "100", "--m", "3"),
        ("construct", "parity", "--q", "4", "--n", "5"),
        ("sweep", "du", "--n", "4:40:3", "--m", "2,3", "--eps", "1/2:1:1/8", "--workers", "3"),
    ],
)
def test_byte_identical_output(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0
