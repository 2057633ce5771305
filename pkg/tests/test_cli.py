import json
import shutil
import subprocess
import sys

import pytest

from rcfactorial.cli import main
from rcfactorial.fileio import parse_agm

from .golden import FIXTURES, G_S3_P3Q2


def write_agm(tmp_path, s, p, q, g, name="g.txt"):
    path = tmp_path / name
    lines = [f"{s} {p} {q} {len(g[0])}"] + [" ".join(map(str, r)) for r in g]
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_prints_matrix(capsys):
    code, out, _ = run(capsys, "construct", "-s", "3", "-p", "1", "-q", "2", "--full")
    assert code == 0
    assert out.splitlines()[0] == "3 1 2 3"
    assert parse_agm(out).g.tolist() == FIXTURES[("full-p1", 3, 1, 2, "full")]


def test_construct_refusal_exit_code(capsys):
    code, out, err = run(capsys, "construct", "-s", "2", "-p", "1", "-q", "2", "--frac1")
    assert code == 2
    assert out == ""
    assert "confounded main effect" in err


def test_construct_p_greater_than_q(capsys):
    code, _, err = run(capsys, "construct", "-s", "3", "-p", "3", "-q", "2", "--full")
    assert code == 2 and "transpose" in err
    code, out, _ = run(capsys, "construct", "-s", "3", "-p", "3", "-q", "2", "--full", "--transpose")
    assert code == 0
    agm = parse_agm(out)
    assert (agm.p, agm.q, agm.n) == (3, 2, 5)


def test_construct_to_files_and_expand(tmp_path, capsys):
    g = tmp_path / "g.txt"
    csv_path = tmp_path / "d.csv"
    json_path = tmp_path / "d.json"
    code, out, _ = run(
        capsys, "construct", "-s", "3", "-p", "1", "-q", "2", "--frac1", "-o", str(g), "--expand", str(csv_path)
    )
    assert code == 0 and out == ""
    assert parse_agm(g.read_text()).n == 4
    assert len(csv_path.read_text().splitlines()) == 3
    run(capsys, "construct", "-s", "3", "-p", "1", "-q", "2", "--frac1", "-o", str(g),
        "--expand", str(json_path), "--format", "json")
    assert json.loads(json_path.read_text())["k"] == 1


def test_construct_expand_cell_cap(tmp_path, capsys):
    code, _, err = run(capsys, "construct", "-s", "3", "-p", "2", "-q", "3", "--full",
                       "-o", str(tmp_path / "g"), "--expand", str(tmp_path / "d"), "--cell-cap", "100")
    assert code == 2 and "cap" in err


def test_analyze_text(tmp_path, capsys):
    path = write_agm(tmp_path, 3, 3, 2, G_S3_P3Q2)
    code, out, _ = run(capsys, "analyze", path)
    assert code == 0
    assert "resolution: IV" in out
    words = next(ln for ln in out.splitlines() if ln.startswith("defining words:"))
    assert set(words.split()[2:]) == {"BC2D2EG2", "BCDEF2", "BEFG", "CDFG2"}
    assert "row-confounded 2fi: AxE BxG DxF" in out
    assert "phi: 18" in out
    assert "efficiency: 1/2 = 0.5000" in out
    assert "t_D: 9" in out


def test_analyze_json(tmp_path, capsys):
    path = write_agm(tmp_path, 3, 3, 2, G_S3_P3Q2)
    code, out, _ = run(capsys, "analyze", path, "--json")
    assert code == 0
    d = json.loads(out)
    assert d["resolution"] == 4
    assert set(d["words"]) == {"BCDEF2", "BC2D2EG2", "BEFG", "CDFG2"}
    assert d["efficiency"]["decimal"] == "0.5000"
    assert len(d["unconfounded_2fi"]) == 9


def test_analyze_confounded_main_effects(tmp_path, capsys):
    path = write_agm(tmp_path, 2, 1, 1, [[1, 0], [0, 1]])
    code, out, _ = run(capsys, "analyze", path)
    assert code == 0
    assert "main effects unconfounded: no" in out
    assert "efficiency: undefined" in out
    code, out, _ = run(capsys, "analyze", path, "--json")
    assert json.loads(out)["efficiency"] is None


def test_analyze_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1 1 2\n1 0\n0 9\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "line 3, column 3" in err
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.txt"))
    assert code == 1


def test_verify_agrees(tmp_path, capsys):
    path = write_agm(tmp_path, 3, 3, 2, G_S3_P3Q2)
    code, out, _ = run(capsys, "verify", path, "--oracle")
    assert code == 0 and out.startswith("AGREE")
    code, _, err = run(capsys, "verify", path, "--cell-cap", "10")
    assert code == 2


def test_search(capsys):
    code, out, _ = run(capsys, "search", "-s", "2", "-p", "1", "-q", "1", "-n", "3")
    assert code == 0 and "Infeasible" in out
    # two-level, p = 1, q = 2 is infeasible as well
    code, out, _ = run(capsys, "search", "-s", "2", "-p", "1", "-q", "2", "-n", "4")
    assert code == 0 and "Infeasible" in out
    code, out, _ = run(capsys, "search", "-s", "2", "-p", "1", "-q", "3", "-n", "5")
    assert code == 0 and "max t_D: 0" in out and "witness:" in out
    code, _, err = run(capsys, "search", "-s", "3", "-p", "2", "-q", "2", "-n", "5", "--cap", "1000")
    assert code == 2 and "cap" in err


def test_round_trip_through_files(tmp_path, capsys):
    g = tmp_path / "g.txt"
    run(capsys, "construct", "-s", "5", "-p", "2", "-q", "2", "--frac1", "-o", str(g))
    first = g.read_text()
    code, out, _ = run(capsys, "analyze", str(g))
    assert code == 0 and "certificate: Prop2" in out
    code, out, _ = run(capsys, "verify", str(g))
    assert code == 0 and out.startswith("AGREE")
    assert g.read_text() == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rcfactorial", "construct", "-s", "3", "-p", "1", "-q", "2", "--full"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("3 1 2 3")


@pytest.mark.skipif(shutil.which("rcfactorial") is None, reason="console script not installed")
def test_console_script_version():
    proc = subprocess.run(["rcfactorial", "--version"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "rcfactorial" in proc.stdout
