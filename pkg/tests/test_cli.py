"""CLI contract: byte-stable outputs against committed golden files, exit codes."""

import json
import sys
from pathlib import Path

import numpy as np
import pytest

from octowdol.cli import EXIT_CHECK, EXIT_GRID, EXIT_OK, EXIT_SINGULAR, EXIT_USAGE, main, parse_lambda
from octowdol.errors import SingularParameterError
from octowdol.signal import read_signal

GOLDEN = Path(__file__).parent / "golden"

# name -> argv (inputs refer to other golden names via {name})
CASES = {
    "gen_gaussian_1d.csv": ["gen", "--n", "17", "--step", "0.05", "--width", "0.1"],
    "gen_chirp_3d.csv": [
        "gen", "--dim", "3", "--n", "5", "--step", "0.1", "--width", "0.05",
        "--family", "lfm-chirp", "--alpha", "2", "--beta", "1", "--amplitude", "1,0,0.5,0,0,0.25",
    ],
    "gen_random_1d.csv": ["gen", "--family", "random-smooth", "--n", "17", "--step", "0.05", "--width", "0.1", "--seed", "42"],
    "wd1d_magnitude.csv": ["wd1d", "{gen_gaussian_1d.csv}", "{gen_random_1d.csv}", "--magnitude-only"],
    "wd1d_full.csv": ["wd1d", "{gen_random_1d.csv}", "{gen_random_1d.csv}", "--lambda1", "0.7,1.3,0.4", "--wn", "5", "--wstep", "2.0"],
    "wd3d_magnitude.csv": ["wd3d", "{gen_chirp_3d.csv}", "{gen_chirp_3d.csv}", "--lambda2", "0.5,1.2,1.1", "--wn", "3", "--wstep", "4.0", "--magnitude-only"],
    "verify_algebra.json": ["verify", "algebra"],
}


def _argv(name, directory):
    return [str(directory / a[1:-1]) if a.startswith("{") else a for a in CASES[name]]


def _run(argv, out):
    return main(argv + ["--out", str(out)])


@pytest.mark.parametrize("name", list(CASES))
def test_golden(name, tmp_path):
    out = tmp_path / name
    assert _run(_argv(name, GOLDEN), out) == EXIT_OK
    assert out.read_bytes() == (GOLDEN / name).read_bytes()


def test_rerun_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert _run(_argv("wd1d_full.csv", GOLDEN), out) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_gen_gaussian_peak_at_center(tmp_path):
    out = tmp_path / "g.csv"
    assert main(["gen", "--n", "257", "--width", "1", "--out", str(out)]) == EXIT_OK
    sig = read_signal(out)
    assert sig.values.shape == (257, 8)
    assert int(np.argmax(sig.values[:, 0])) == 128


def test_wd1d_gaussian_peak_and_zero_input(tmp_path):
    g = tmp_path / "g.csv"
    main(["gen", "--n", "33", "--step", "0.05", "--width", "0.2", "--out", str(g)])
    out = tmp_path / "w.csv"
    assert main(["wd1d", str(g), str(g), "--magnitude-only", "--out", str(out)]) == EXIT_OK
    rows = [r.split(",") for r in out.read_text().splitlines()[1:]]
    best = max(rows, key=lambda r: float(r[2]))
    assert (best[0], best[1]) == ("16", "16")

    z = tmp_path / "z.csv"
    main(["gen", "--n", "33", "--step", "0.05", "--width", "0.2", "--amplitude", "0", "--out", str(z)])
    assert main(["wd1d", str(z), str(g), "--out", str(out)]) == EXIT_OK
    assert all(float(v) == 0.0 for line in out.read_text().splitlines()[1:] for v in line.split(",")[2:])


def test_exit_codes(tmp_path, capsys):
    g17 = str(GOLDEN / "gen_gaussian_1d.csv")
    g9 = str(tmp_path / "g9.csv")
    main(["gen", "--n", "9", "--step", "0.05", "--width", "0.05", "--out", g9])
    out = str(tmp_path / "x")
    assert main(["wd1d", g17, g17, "--lambda1", "1,0,1", "--out", out]) == EXIT_SINGULAR
    assert main(["wd1d", g17, g9, "--out", out]) == EXIT_GRID
    bad = tmp_path / "bad.csv"
    bad.write_text("not a signal\n")
    assert main(["wd1d", str(bad), g17, "--out", out]) == EXIT_USAGE
    assert main(["wd1d", g17, g17, "--lambda1", "1,2,3,4", "--out", out]) == EXIT_USAGE
    assert main(["wd1d", g17, g17, "--wn", "5", "--out", out]) == EXIT_USAGE
    assert main(["wd3d", g17, g17, "--out", out]) == EXIT_USAGE
    assert main(["gen", "--width", "9", "--out", out]) == EXIT_USAGE
    assert main(["verify", "uncertainty"]) == EXIT_USAGE
    assert main(["verify", "nonsense"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE
    capsys.readouterr()


def test_verify_failure_exit_lists_failures(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "wigner-identities", "--n3", "3", "--out", str(out)]) == EXIT_CHECK
    reports = json.loads(out.read_text())
    failed = sorted(r["name"] for r in reports if not r["pass"])
    err = capsys.readouterr().err
    assert "failed:" in err
    for name in failed:
        assert name in err
    assert all({"name", "lhs", "rhs", "ratio", "pass", "meta", "tol"} <= set(r) for r in reports)


def test_parse_lambda():
    p = parse_lambda("0.5,2,0.3")
    assert p.c == pytest.approx((0.5 * 0.3 - 1) / 2)
    assert parse_lambda("0,1,-1,0").c == -1.0
    with pytest.raises(SingularParameterError):
        parse_lambda("0,0,-1,0")


def regenerate():
    GOLDEN.mkdir(exist_ok=True)
    for name in CASES:
        code = _run(_argv(name, GOLDEN), GOLDEN / name)
        print(name, code)


if __name__ == "__main__" and "--regen" in sys.argv:
    regenerate()
