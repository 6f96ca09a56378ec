import json
import math

import numpy as np
import pytest

from selberg.cli import run
from selberg.geometry import LengthSpectrum
from selberg.lie import EllipticAngles, WeightVector
from selberg.orbital import orbital_polynomial


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


GROUP_JSON = {
    "model": "H3-complex-2x2",
    "generators": [
        [
            [[math.e, 0.0], [0.0, 0.0]],
            [[0.0, 0.0], [1.0 / math.e, 0.0]],
        ]
    ],
    "name": "cyclic-length-2",
}


@pytest.fixture
def group_file(tmp_path):
    path = tmp_path / "group.json"
    path.write_text(json.dumps(GROUP_JSON))
    return str(path)


def test_delta_m_output(capsys):
    code, out, _ = invoke(capsys, "lie", "delta-m", "--n", "3")
    assert code == 0
    assert out == "2,1,0\n"


def test_pfrac_output(capsys):
    code, out, _ = invoke(capsys, "zeta", "pfrac", "--s", "1,2")
    assert code == 0
    assert out == "1/3,-1/3\n"


def test_pfrac_rejects_equal_squares(capsys):
    code, _, err = invoke(capsys, "zeta", "pfrac", "--s", "2,-2")
    assert code == 2
    assert "equal squares" in err


def test_weyl_count_output(capsys):
    code, out, _ = invoke(capsys, "lie", "weyl", "--n", "3", "--count")
    assert code == 0
    assert out.strip() == "24"


def test_character_output(capsys):
    code, out, _ = invoke(
        capsys, "lie", "character", "--weight", "1,0", "--angles", "pi/3,pi/5"
    )
    assert code == 0
    re, im = (float(x) for x in out.strip().split(","))
    expected = 2 * math.cos(math.pi / 3) + 2 * math.cos(math.pi / 5)
    assert re == pytest.approx(expected, abs=1e-12)
    assert im == pytest.approx(0.0, abs=1e-12)


def test_orbital_poly_output(capsys):
    code, out, _ = invoke(
        capsys, "orbital", "poly", "--n", "2", "--sigma", "1,1",
        "--angles", "0,pi/2",
    )
    assert code == 0
    values = [complex(x.strip("()")) for x in out.strip().split(",")]
    poly = orbital_polynomial(
        WeightVector.from_coords([1, 1]),
        EllipticAngles((0.0, math.pi / 2)),
        2,
    )
    assert len(values) == len(poly.coeffs)
    for got, want in zip(values, poly.coeffs):
        assert got == pytest.approx(want, abs=1e-14)


def test_orbital_poly_rejects_bad_weight(capsys):
    code, _, err = invoke(
        capsys, "orbital", "poly", "--n", "2", "--sigma", "0,1", "--angles", "0,1"
    )
    assert code == 2
    assert "dominant" in err


def test_validate_dry_run(capsys, group_file):
    code, out, _ = invoke(
        capsys, "spectrum", "enumerate", "--group", group_file,
        "--max-word-len", "4", "--cutoff", "9", "--validate",
    )
    assert code == 0
    assert out == "ok\n"


def test_spectrum_enumerate_and_classify(capsys, group_file, tmp_path):
    out_path = tmp_path / "spec.csv"
    code, _, _ = invoke(
        capsys, "spectrum", "enumerate", "--group", group_file,
        "--max-word-len", "4", "--cutoff", "9", "--out", str(out_path),
    )
    assert code == 0
    spectrum = LengthSpectrum.read_csv(out_path)
    lengths = sorted({round(r.length, 9) for r in spectrum.hyperbolic()})
    assert lengths == pytest.approx([2.0, 4.0, 6.0, 8.0])

    code, out, _ = invoke(
        capsys, "spectrum", "classify", "--group", group_file, "--word", "1,1"
    )
    assert code == 0
    assert out.splitlines()[0] == "kind,l,theta"
    kind, l, theta = out.splitlines()[1].split(",")
    assert kind == "hyperbolic"
    assert float(l) == pytest.approx(4.0, abs=1e-12)
    assert float(theta) == 0.0


def test_zeta_eval_roundtrip_bitwise(capsys, group_file, tmp_path):
    spec_path = tmp_path / "spec.csv"
    invoke(
        capsys, "spectrum", "enumerate", "--group", group_file,
        "--max-word-len", "4", "--cutoff", "9", "--out", str(spec_path),
    )
    args = (
        "zeta", "eval", "--spectrum", str(spec_path), "--sigma", "0",
        "--s-grid", "2:4:0.5", "--allow-ambiguous",
    )
    out1 = tmp_path / "eval1.csv"
    out2 = tmp_path / "eval2.csv"
    code1, _, _ = invoke(capsys, *args, "--out", str(out1))
    code2, _, _ = invoke(capsys, *args, "--out", str(out2), "--threads", "3")
    assert code1 == code2 == 0
    assert out1.read_bytes() == out2.read_bytes()
    header, *rows = out1.read_text().splitlines()
    assert header == "re_s,im_s,re_logZ,im_logZ,abs_Z"
    assert len(rows) == 5

    # spectrum written then re-read gives bitwise-identical zeta values
    spectrum = LengthSpectrum.read_csv(spec_path)
    rewritten = tmp_path / "spec2.csv"
    spectrum.write_csv(rewritten)
    out3 = tmp_path / "eval3.csv"
    code3, _, _ = invoke(
        capsys, "zeta", "eval", "--spectrum", str(rewritten), "--sigma", "0",
        "--s-grid", "2:4:0.5", "--allow-ambiguous", "--out", str(out3),
    )
    assert code3 == 0
    assert out1.read_bytes() == out3.read_bytes()


def test_zeta_eval_refuses_ambiguous_without_flag(capsys, group_file, tmp_path):
    spec_path = tmp_path / "spec.csv"
    invoke(
        capsys, "spectrum", "enumerate", "--group", group_file,
        "--max-word-len", "4", "--cutoff", "9", "--out", str(spec_path),
    )
    code, _, err = invoke(
        capsys, "zeta", "eval", "--spectrum", str(spec_path), "--sigma", "0",
        "--s-grid", "2:3:1",
    )
    assert code == 3
    assert "ambig" in err.lower()


def test_zeta_heat_terms_output(capsys, group_file, tmp_path):
    spec_path = tmp_path / "spec.csv"
    invoke(
        capsys, "spectrum", "enumerate", "--group", group_file,
        "--max-word-len", "3", "--cutoff", "7", "--out", str(spec_path),
    )
    code, out, _ = invoke(
        capsys, "zeta", "heat-terms", "--spectrum", str(spec_path), "--sigma", "0",
        "--t", "0.5,1.0", "--vol", "2.0", "--allow-ambiguous",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "t,re_I,im_I,re_E,im_E,re_H,im_H"
    first = [float(x) for x in lines[1].split(",")]
    assert first[0] == 0.5
    assert first[1] == pytest.approx(2.0 * (4 * math.pi * 0.5) ** -1.5, rel=1e-12)


def test_heat_trace_output(capsys):
    code, out, _ = invoke(
        capsys, "heat", "trace", "--model", "circle-reflection", "--t", "1.0"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "t,trace"
    t, trace = (float(x) for x in lines[1].split(","))
    assert trace == pytest.approx(1.3863186024133263, rel=1e-13)


def test_heat_fit_output(capsys):
    code, out, _ = invoke(capsys, "heat", "fit", "--model", "circle-reflection")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# expected_leading=")
    assert lines[1] == "exponent,coefficient"
    rows = {float(l.split(",")[0]): float(l.split(",")[1]) for l in lines[2:]}
    assert rows[-0.5] == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-3)
    assert rows[0.0] == pytest.approx(0.5, abs=1e-5)


def test_heat_weyl_output(capsys):
    code, out, _ = invoke(
        capsys, "heat", "weyl", "--model", "circle-reflection", "--rmax", "40000"
    )
    assert code == 0
    row = out.splitlines()[1].split(",")
    assert float(row[0]) == pytest.approx(1.0, rel=0.02)
    assert float(row[1]) == 1.0


def test_heat_rejects_nonpositive_time(capsys):
    code, _, err = invoke(capsys, "heat", "trace", "--model", "circle", "--t", "-1")
    assert code == 2


def test_config_file_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 3}))
    code, out, _ = invoke(
        capsys, "lie", "delta-m", "--n", "2", "--config", str(cfg)
    )
    # explicit flag wins
    assert code == 0 and out == "1,0\n"
    cfg2 = tmp_path / "cfg2.json"
    cfg2.write_text(json.dumps({"count": True}))
    code, out, _ = invoke(
        capsys, "lie", "weyl", "--n", "2", "--config", str(cfg2)
    )
    assert code == 0 and out.strip() == "4"


def test_config_rejects_unknown_keys(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"wibble": 1}))
    code, _, err = invoke(capsys, "lie", "delta-m", "--n", "2", "--config", str(cfg))
    assert code == 2
    assert "unknown config key" in err


def test_selftest_runs_clean(capsys):
    code, out, _ = invoke(capsys, "selftest", "--seed", "7")
    assert code == 0
    assert all(line.startswith("ok ") for line in out.splitlines())


def test_exit_code_validation_error(capsys):
    code, _, err = invoke(capsys, "lie", "delta-m", "--n", "0")
    assert code == 2
    assert "error:" in err
