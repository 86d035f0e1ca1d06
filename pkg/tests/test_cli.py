import subprocess
import sys

import pytest

from nsystems.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name, args in {"R": ["R"], "S": ["S"], "Tmin": ["T-min"], "f": ["f", "--m", "3"], "Tnsa": ["T-nsa"]}.items():
        code, out, _ = run(capsys, "example", *args)
        assert code == 0
        p = tmp_path / f"{name}.json"
        p.write_text(out)
        paths[name] = str(p)
    return paths


def test_validate_pass_and_fail(capsys, files):
    code, out, _ = run(capsys, "validate", files["R"])
    assert code == 0 and "division\t5,6,8,10" in out and out.rstrip().endswith("0 violations")
    code, out, _ = run(capsys, "validate", files["R"], "--class", "exact")
    assert code == 1 and "violation\tS2" in out
    code, out, _ = run(capsys, "validate", files["f"], "--class", "rigid", "--mesh", "1")
    assert code == 0
    code, out, _ = run(capsys, "validate", files["f"], "--class", "rigid", "--mesh", "2")
    assert code == 1


def test_mu_exact_and_estimate(capsys, files):
    code, out, _ = run(capsys, "mu", files["R"], "--map", files["Tmin"])
    assert code == 0 and out == "exact\t-\t-\t0\t0\t0\t-1/4\t1/6\n"
    code, out, _ = run(capsys, "mu", files["R"], "--map", files["Tmin"], "--estimate", "--tail", "1/2")
    assert out == "estimate\t5\t10\t0\t0\t0\t-1/4\t1/6\n"


def test_hull_of_points(capsys, tmp_path):
    pts = tmp_path / "pts.txt"
    pts.write_text("1 1 1 2\n1 1 2 2\n1 1 2 4\n1 3 3 3\n1,3,9,9  # B2\n3 3 9 9\n0 0 1 1\n")
    code, out, _ = run(capsys, "hull", "--points", str(pts))
    lines = [l.split("\t") for l in out.splitlines()]
    assert code == 0 and len(lines) == 7
    assert [kind for kind, _ in lines].count("extreme") == 5
    assert ["interior", "1/22,3/22,9/22,9/22"] in lines


def test_verify_min_writes_figures(capsys, tmp_path):
    code, out, _ = run(capsys, "verify-min", "--alpha", "3/2", "--beta", "2", "--figure-dir", str(tmp_path / "figs"))
    assert code == 0
    assert "FAIL" not in out
    assert (tmp_path / "figs" / "R.svg").exists() and (tmp_path / "figs" / "S.svg").exists()


def test_verify_nsa_and_enumerate(capsys):
    code, out, _ = run(capsys, "verify-nsa", "--n", "5", "--alpha", "3/2", "--m-max", "3")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "enumerate-E", "--n", "4", "--alpha", "2", "--m-max", "3")
    assert out == "1\t1/15\n2\t1/29\n3\t1/57\nlimit\t0\n"


def test_sample_output_is_sorted_and_deterministic(capsys, files, tmp_path):
    argv = ["sample", "--map", files["Tmin"], "--n", "4", "--count", "6", "--seed", "3", "--steps", "40"]
    code, out1, _ = run(capsys, *argv, "--figure-dir", str(tmp_path))
    _, out2, _ = run(capsys, *argv)
    lines = [l for l in out1.splitlines() if l.startswith("estimate")]
    assert code == 0 and len(lines) == 6
    assert lines == [l for l in out2.splitlines() if l.startswith("estimate")]
    assert (tmp_path / "sample.svg").exists()


def test_render(capsys, files, tmp_path):
    out_svg = tmp_path / "f.svg"
    code, _, _ = run(capsys, "render", files["f"], "--out", str(out_svg), "--from", "8", "--to", "128", "--switch")
    assert code == 0 and out_svg.read_text().startswith("<?xml")
    code, _, err = run(capsys, "render", files["f"], "--out", str(out_svg), "--from", "8", "--to", "8")
    assert code == 2 and "empty range" in err


def test_usage_and_parse_errors_exit_2(capsys, files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "breakpoints": [{"q": "2", "value": ["0", "2"]}, {"q": "1", "value": ["0", "1"]}]}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "breakpoints[1].q" in err
    code, _, err = run(capsys, "verify-min", "--alpha", "3", "--beta", "2")
    assert code == 2
    code, _, err = run(capsys, "mu", files["R"], "--map", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err
    with pytest.raises(SystemExit) as info:
        main(["verify-min", "--alpha", "0.5", "--beta", "2"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nsystems", "enumerate-E", "--n", "4", "--alpha", "2", "--m-max", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("1\t1/15")
