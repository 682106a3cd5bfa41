import numpy as np
import pytest

from clifwave.algebra import Multivector
from clifwave.cli import load_config, main, parse_multivector, resolve
from clifwave.field import GridSpec, random_bandlimited_field
from clifwave.io import read_field, read_volume, write_field


def test_parse_multivector():
    m = parse_multivector("1 + 0.5*e1 - e12", 2)
    assert m.isclose(Multivector(2, [1.0, 0.5, 0.0, -1.0]))
    assert parse_multivector("-2*e123", 3)[7] == -2.0
    with pytest.raises(ValueError):
        parse_multivector("1 + e4", 3)


def test_config_and_flag_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# demo\nn = 3\ngrid = 16\nn_scales = 4\nsigma = 1, 2, 1\n")
    assert load_config(cfg)["scales"] == 4
    monkeypatch.setenv("CLIFWAVE_THREADS", "3")
    rc = resolve(["admissibility", "--config", str(cfg), "--grid", "8"])
    assert (rc.n, rc.grid, rc.scales, rc.sigma, rc.threads) == (3, 8, 4, (1.0, 2.0, 1.0), 3)
    assert resolve(["admissibility", "--threads", "2"]).threads == 2
    cfg.write_text("colour = blue\n")
    with pytest.raises(ValueError):
        load_config(cfg)


def test_analyze_synthesize_roundtrip(tmp_path, capsys):
    g = GridSpec(2, 16, 4.0)
    f = random_bandlimited_field(g, np.random.default_rng(0), center=1.5, bandwidth=0.5)
    src, vol, back = tmp_path / "f.cwf", tmp_path / "w.cwc", tmp_path / "b.cwf"
    write_field(src, f)
    assert main(["analyze", str(src), "--scales", "3", "--angles", "4", "--out", str(vol)]) == 0
    w = read_volume(vol)
    assert w.data.shape == (3, 4, 16, 16, 4)
    assert main(["synthesize", str(vol), "--reference", str(src), "--out", str(back)]) == 0
    assert "relative L2 reconstruction error" in capsys.readouterr().out
    assert read_field(back).grid == g


def test_export_csv(tmp_path):
    vol, csv = tmp_path / "w.cwc", tmp_path / "s.csv"
    assert main(["analyze", "--demo", "--grid", "8", "--half-width", "2", "--scales", "2",
                 "--angles", "2", "--out", str(vol)]) == 0
    assert main(["export-csv", str(vol), "--slice", "1,1", "--out", str(csv)]) == 0
    assert csv.read_text().startswith("b_1,b_2,modulus\n")
    assert main(["export-csv", str(vol), "--slice", "5,0"]) == 2


def test_admissibility_output(capsys):
    assert main(["admissibility", "--n", "3"]) == 0
    out = capsys.readouterr().out
    assert "C_psi" in out and "parity even" in out


def test_bad_input_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.cwf"
    bad.write_bytes(b"nope")
    assert main(["analyze", str(bad)]) == 2
    assert "bad magic" in capsys.readouterr().err


@pytest.mark.parametrize("suite,extra", [
    ("plancherel", ["--n", "3", "--grid", "8"]),
    ("covariance", ["--grid", "16", "--half-width", "4"]),
    ("kernel", []),
])
def test_verify_suites_pass(suite, extra, capsys):
    assert main(["verify", suite, "--trials", "1"] + extra) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_outputs_are_reproducible(tmp_path):
    args = ["analyze", "--demo", "--grid", "8", "--half-width", "2", "--scales", "2",
            "--angles", "4", "--seed", "7", "--out"]
    assert main(args + [str(tmp_path / "a.cwc")]) == 0
    assert main(args + [str(tmp_path / "b.cwc")]) == 0
    assert (tmp_path / "a.cwc").read_bytes() == (tmp_path / "b.cwc").read_bytes()
