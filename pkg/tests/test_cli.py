import subprocess
import sys


from spin_twist.cli import main
from spin_twist.io_format import parse_problem


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def exit_code(capsys, *argv):
    """Exit status whether ``main`` returns it or argparse raises it."""
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    return code


def test_catalog_table(capsys):
    code, out, _ = run(capsys, "catalog")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 15
    assert lines[1].split() == ["E12", "(2,3,7)", "12", "42", "2", "42", "-1"]
    assert all(line.split()[-1] == "-1" for line in lines[1:])
    assert all(line.split()[3] == line.split()[5] for line in lines[1:])


def test_catalog_tsv_and_entry(capsys):
    _, out, _ = run(capsys, "catalog", "--format", "tsv")
    assert all("  " not in line for line in out.splitlines())
    assert out.splitlines()[13].split("\t") == ["S12", "(3,4,5)", "12", "13", "2", "13", "-1"]
    _, out, _ = run(capsys, "catalog", "--entry", "E12")
    assert len(out.splitlines()) == 2


def test_spin_pqr(capsys, tmp_path):
    code, out, _ = run(capsys, "spin", "--pqr", "2,3,7")
    assert code == 0
    assert "winding = -1, Δ mod 2 = 1 (generator)" in out
    assert "spheres: 12 x 42 = 504" in out
    svg = tmp_path / "e12.svg"
    run(capsys, "spin", "--pqr", "2,3,7", "--svg", str(svg))
    first = svg.read_bytes()
    run(capsys, "spin", "--entry", "E12", "--svg", str(svg))
    assert svg.read_bytes().startswith(first[:200])
    run(capsys, "spin", "--pqr", "2,3,7", "--svg", str(svg))
    assert svg.read_bytes() == first


def test_spin_nontrivial_file(capsys, tmp_path):
    _, text, _ = run(capsys, "export", "--entry", "E12", "--repeat", "41")
    path = tmp_path / "nontrivial.prob"
    path.write_text(text)
    code, _, err = run(capsys, "spin", "--file", str(path))
    assert code == 1
    assert "sequence not homologically trivial" in err


def test_spin_bad_file_is_error(capsys, tmp_path):
    path = tmp_path / "bad.prob"
    path.write_text("format 1\nlattice 1\nrow 1 -2\nsphere 2\n")
    code, _, err = run(capsys, "spin", "--file", str(path))
    assert code == 1
    assert "line 4" in err


def test_usage_errors(capsys):
    assert exit_code(capsys, "nosuch") == 2
    assert exit_code(capsys, "spin", "--pqr", "2,3") == 2
    assert exit_code(capsys) == 2
    assert exit_code(capsys, "catalog", "--entry", "X1") == 2
    assert exit_code(capsys, "spin", "--entry", "E12", "--pqr", "2,3,7") == 2


def test_verify_default(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert out.splitlines()[-1] == "14/14 entries verified"
    assert "FAIL" not in out


def test_verify_deterministic(capsys, monkeypatch):
    args = ("verify", "--entry", "E12", "--entry", "U12", "--braid-fuzz", "25", "--seed", "7")
    first = run(capsys, *args)
    assert first[0] == 0
    assert first[1].splitlines()[-1] == "2/2 entries verified"
    assert run(capsys, *args) == first
    monkeypatch.setenv("SPIN_TWIST_SEED", "7")
    assert run(capsys, *args[:-2])[1] == first[1]
    monkeypatch.setenv("SPIN_TWIST_SEED", "seven")
    assert run(capsys, *args[:-2])[0] == 2


def test_verify_tampered_catalog(capsys, tmp_path):
    table = tmp_path / "tampered.tsv"
    table.write_text("E12 2 3 7 41\nU12 4 4 4 12\n")
    code, out, err = run(capsys, "verify", "--catalog", str(table), "--entries-only", "--braid-fuzz", "2")
    assert code == 3
    assert "E12 order mismatch" in err
    assert out.splitlines()[-1] == "1/2 entries verified"


def test_mutate(capsys, tmp_path):
    _, text, _ = run(capsys, "export", "--entry", "E12")
    src = tmp_path / "e12.prob"
    src.write_text(text)
    original = parse_problem(text)
    expanded = [c.vec for c in original.spheres.expanded().classes]
    for word in ("", "a1 b1", "b30 a30"):
        code, out, _ = run(capsys, "mutate", str(src), word)
        assert code == 0
        assert [c.vec for c in parse_problem(out).spheres.classes] == expanded
    code, out, err = run(capsys, "mutate", "--entry", "E12", "a3 b1 a2 a40 b500", "--check-delta")
    assert code == 0
    assert "Δ preserved: -1 → -1" in err
    assert parse_problem(out).spheres != original.spheres
    assert run(capsys, "mutate", str(src), "a504")[0] == 2
    assert run(capsys, "mutate", str(src), "q1")[0] == 2


def test_obstruct(capsys):
    base = ["obstruct", "--c1-div", "32", "--sigma", "-32", "--chi", "48", "--c1sq", "0", "--delta", "1"]
    code, out, _ = run(capsys, *base, "--sw", "odd")
    assert code == 0
    assert "d = 0" in out
    assert "OBSTRUCTED: not smoothly isotopic to identity" in out
    _, out, _ = run(capsys, *base, "--sw", "even")
    assert "hypotheses not met (SW parity)" in out
    _, out, _ = run(capsys, "obstruct", "--c1-div", "32", "--sigma", "-96", "--chi", "72", "--c1sq", "0",
                    "--sw", "odd", "--delta", "1")
    assert "d = 36" in out and "hypotheses not met" in out
    _, out, _ = run(capsys, "obstruct", "--ind", "1", "--w2", "0")
    assert "congruence VIOLATED" in out
    _, out, _ = run(capsys, "obstruct", "--p1c1", "48", "--c1cubed", "0", "--w2", "1")
    assert "Dirac index = 1" in out and "congruence holds" in out
    code, _, err = run(capsys, "obstruct", "--p1c1", "50", "--c1cubed", "0")
    assert code == 1
    assert "inconsistent 6-manifold characteristic numbers" in err
    assert run(capsys, "obstruct")[0] == 2


def test_console_entry_points():
    for cmd in (["spin-twist"], [sys.executable, "-m", "spin_twist"]):
        proc = subprocess.run(cmd + ["catalog", "--entry", "U12", "--format", "tsv"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[1].startswith("U12\t(4,4,4)\t12\t12")
