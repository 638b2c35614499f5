"""CSV contracts, figure presets, CLI exit codes."""

import math

import pytest

from resonance_lab import (
    FORMAT_STAMP,
    ConfigError,
    CsvDocument,
    DomainError,
    MissingInput,
    bessel_j,
    bessel_zero,
    delta_resonance,
    emit_plot_script,
    lambert_w,
    run_figure,
)
from resonance_lab.cli import main, parse_eps_grid
from resonance_lab.runs import DEEPENING_EPS, QUAD_EPS

J11 = bessel_zero(1, 1)


def read_doc(path):
    return CsvDocument.parse_text(path.read_text(encoding="ascii"))


# ------------------------------------------------------------ CSV document


def test_csv_round_trip_precision():
    doc = CsvDocument(
        ("a", "b", "c"),
        (
            (math.pi, 0.1287651, -2.5e-7),
            (1e-300, -0.0, 367.3721339),
            (1.0 / 3.0, 5.841379586, -0.34784182),
        ),
    )
    back = CsvDocument.parse_text(doc.to_text())
    assert back.header == doc.header
    for row, orig in zip(back.rows, doc.rows):
        for got, want in zip(row, orig):
            assert got == pytest.approx(want, rel=5e-9, abs=1e-305)


def test_csv_folds_negative_zero():
    text = CsvDocument(("x",), ((-0.0,),)).to_text()
    assert "-0" not in text


def test_csv_stamp_and_line_endings(tmp_path):
    doc = CsvDocument(("x", "y"), ((1.5, 2.5),))
    path = doc.write(tmp_path / "t.csv")
    raw = path.read_bytes()
    assert raw.startswith(b"# resonance-lab v1\n")
    assert b"\r" not in raw
    assert raw.endswith(b"\n")
    assert FORMAT_STAMP == "# resonance-lab v1"


def test_csv_rejects_ragged_rows():
    with pytest.raises(DomainError):
        CsvDocument(("a", "b"), ((1.0,),))


def test_csv_integers_stay_integers():
    text = CsvDocument(("k", "v"), ((3, 1.25),)).to_text()
    assert text.splitlines()[2] == "3,1.25"


# ------------------------------------------------------------- eps parsing


def test_parse_eps_grid_forms():
    assert parse_eps_grid("quad:15:0.0036") == QUAD_EPS
    assert len(QUAD_EPS) == 30
    assert parse_eps_grid("neg:2:25:0.1") == DEEPENING_EPS
    assert parse_eps_grid("0.04,0.09") == (0.04, 0.09)
    with pytest.raises(ConfigError):
        parse_eps_grid("1,abc")
    with pytest.raises(ConfigError):
        parse_eps_grid("quad:fifteen:0.0036")


# --------------------------------------------------------------- figures


def test_figure1_left_reproduces_node(tmp_path):
    rc = main(["--figure", "1", "--panel", "left", "--output", str(tmp_path)])
    assert rc == 0
    doc = read_doc(tmp_path / "figure1_left.csv")
    assert doc.header == (
        "epsilon",
        "re_guess",
        "im_guess",
        "re_exact",
        "im_exact",
        "residual",
        "class",
    )
    row = next(r for r in doc.rows if r[0] == pytest.approx(0.09, rel=1e-12))
    assert row[3] == pytest.approx(0.1119944, abs=1e-5)
    assert row[4] == pytest.approx(-0.0344571, abs=1e-5)
    assert row[6] == "resonance"


def test_figure2_deepening_grid(tmp_path):
    result = run_figure(2, output_dir=tmp_path)
    assert result.exit_code == 0
    doc = read_doc(tmp_path / "figure2.csv")
    assert len(doc.rows) == 24
    eps = [r[0] for r in doc.rows]
    assert eps[0] == pytest.approx(-0.2)
    assert eps[-1] == pytest.approx(-2.5)
    # every deepened point is an eigenvalue on the imaginary axis
    assert all(r[6] == "eigenvalue" for r in doc.rows)
    assert all(abs(r[3]) <= 1e-9 for r in doc.rows)


def test_figure_runs_are_deterministic(tmp_path, monkeypatch):
    monkeypatch.setenv("RESONANCE_LAB_THREADS", "1")
    first = run_figure(1, panel="middle", output_dir=tmp_path / "one")
    monkeypatch.setenv("RESONANCE_LAB_THREADS", "5")
    second = run_figure(1, panel="middle", output_dir=tmp_path / "two")
    for p1, p2 in zip(first.paths, second.paths):
        assert p1.name == p2.name
        assert p1.read_bytes() == p2.read_bytes()


def test_unknown_figure_and_panel(tmp_path):
    assert main(["--figure", "9", "--output", str(tmp_path)]) == 1
    assert main(["--figure", "3", "--panel", "top", "--output", str(tmp_path)]) == 1
    assert main(["--figure", "2", "--panel", "left", "--output", str(tmp_path)]) == 1


# -------------------------------------------------------------- plot files


def test_plot_script_references_figure1_csvs(tmp_path):
    result = run_figure(1, output_dir=tmp_path)
    script = next(p for p in result.paths if p.suffix == ".gp")
    text = script.read_text()
    for panel in ("left", "middle", "right"):
        assert f"figure1_{panel}.csv" in text


def test_plot_script_figure6_overlays(tmp_path):
    result = run_figure(6, output_dir=tmp_path)
    script = next(p for p in result.paths if p.suffix == ".gp")
    text = script.read_text()
    for col in ("res", "above", "below"):
        assert col in text
    assert "0.0017315" in text and "0.0344571" in text  # dashed overlays
    assert "dash" in text


def test_plot_script_missing_input(tmp_path):
    with pytest.raises(MissingInput):
        emit_plot_script([tmp_path / "absent.csv"], 1, tmp_path / "out.gp")


# ----------------------------------------------------------- subcommands


def test_track_exit_two_when_guess_leaves_basin(tmp_path):
    rc = main(
        [
            "track",
            "--l",
            "3",
            "--a0sq-from-zero",
            "2",
            "--eps-grid",
            "20",
            "--output",
            str(tmp_path),
        ]
    )
    assert rc == 2
    doc = read_doc(tmp_path / "track.csv")
    assert doc.rows[0][6] == "not-found"


def test_track_rejects_zero_eps(tmp_path, capsys):
    rc = main(
        [
            "track",
            "--l",
            "2",
            "--a0sq-from-zero",
            "1",
            "--eps-grid=-0.1,0,0.1",
            "--output",
            str(tmp_path),
        ]
    )
    assert rc == 1
    err = capsys.readouterr().err
    assert "0" in err and "eps" in err


def test_phase_per_mode_columns(tmp_path):
    rc = main(
        [
            "phase",
            "--a0sq-from-zero",
            "1",
            "--eps",
            "0.09",
            "--lambda-max",
            "0.3",
            "--steps",
            "4",
            "--per-mode",
            "--output",
            str(tmp_path),
        ]
    )
    assert rc == 0
    doc = read_doc(tmp_path / "phase.csv")
    assert doc.header[:4] == ("lambda", "res", "above", "below")
    assert "res_l0" in doc.header and "res_l1" in doc.header
    assert len(doc.rows) == 4
    lams = [r[0] for r in doc.rows]
    assert lams == sorted(lams) and lams[-1] == pytest.approx(0.3)


def test_classify_rows(tmp_path):
    rc = main(
        ["classify", "--a", f"{J11:.12f}", "--lmax", "4", "--output", str(tmp_path)]
    )
    assert rc == 0
    doc = read_doc(tmp_path / "classify.csv")
    assert doc.header == ("mode", "kind")
    kinds = {int(r[0]): r[1] for r in doc.rows}
    assert kinds[0] == "s-resonance"
    assert kinds[2] == "zero-eigenvalue"
    assert kinds[1] == "none" and kinds[3] == "none"


def test_delta1d_outputs(tmp_path):
    rc = main(
        [
            "delta1d",
            "--a",
            "10",
            "--k-max",
            "3",
            "--lambda-max",
            "4.0",
            "--steps",
            "8",
            "--output",
            str(tmp_path),
        ]
    )
    assert rc == 0
    res_doc = read_doc(tmp_path / "delta1d_resonances.csv")
    assert res_doc.header == ("k", "re", "im")
    by_k = {int(r[0]): complex(r[1], r[2]) for r in res_doc.rows}
    assert sorted(by_k) == [1, 2, 3]
    assert by_k[1] == pytest.approx(delta_resonance(10.0, 1), rel=5e-9)
    phase_doc = read_doc(tmp_path / "delta1d_phase.csv")
    assert phase_doc.header == ("lambda", "sigma_prime", "bw_approx")
    assert len(phase_doc.rows) == 8
    # bw column includes the mirrored partners
    lam = phase_doc.rows[0][0]
    poles = [delta_resonance(10.0, k) for k in (1, 2, 3)]
    poles += [-p.conjugate() for p in poles]
    want = -1.0 / math.pi + sum(
        (-p.imag) / (math.pi * abs(lam - p) ** 2) for p in poles
    )
    assert phase_doc.rows[0][2] == pytest.approx(want, rel=5e-9)


def test_bessel_eval_row(tmp_path):
    rc = main(
        ["bessel-eval", "j", "2", "1.118033989", "0.463647609", "--output", str(tmp_path)]
    )
    assert rc == 0
    doc = read_doc(tmp_path / "bessel_eval.csv")
    row = doc.rows[0]
    cv = bessel_j(2, complex(1.0, 0.5))
    assert row[4] == pytest.approx(cv.value.real, rel=1e-8)
    assert row[5] == pytest.approx(cv.value.imag, rel=1e-8)


def test_lambert_eval_row(tmp_path):
    rc = main(
        ["lambert-eval", "--output", str(tmp_path), "--", "-1", "-0.1", "0"]
    )
    assert rc == 0
    doc = read_doc(tmp_path / "lambert_eval.csv")
    row = doc.rows[0]
    w = lambert_w(-1, -0.1)
    assert row[3] == pytest.approx(w.real, rel=5e-9)
    assert row[5] <= 1e-12


def test_output_name_override(tmp_path):
    rc = main(
        [
            "track",
            "--l",
            "2",
            "--a0sq-from-zero",
            "1",
            "--eps-grid",
            "0.09",
            "--output",
            str(tmp_path),
            "--name",
            "custom",
        ]
    )
    assert rc == 0
    assert (tmp_path / "custom.csv").exists()


def test_malformed_flags_exit_one():
    with pytest.raises(SystemExit) as exc:
        main(["track", "--l", "two"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1


def test_figure_and_subcommand_conflict(tmp_path):
    rc = main(
        [
            "--figure",
            "2",
            "track",
            "--l",
            "2",
            "--a0sq-from-zero",
            "1",
            "--eps-grid",
            "0.09",
            "--output",
            str(tmp_path),
        ]
    )
    assert rc == 1
