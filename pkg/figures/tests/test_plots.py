"""Rendering: every figure kind produces an image; log kinds refuse bad data."""

import csv

import pytest

from figscripts.cli import main
from figscripts.plots import PlotError, render


def test_energy_convergence_single_and_two_panel(sweep_csv, tmp_path):
    out = tmp_path / "fig" / "convergence.png"
    render("energy-convergence", [sweep_csv], out)
    assert out.exists() and out.stat().st_size > 0
    out2 = tmp_path / "convergence2.png"
    render("energy-convergence", [sweep_csv, sweep_csv], out2)
    assert out2.exists()


def test_energy_convergence_rejects_nonpositive_errors(tmp_path):
    path = tmp_path / "energy_sweep.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["scheme", "sigma", "dt", "energy_error"])
        w.writerow(["relaxation", 2, 0.01, 0.0])
    with pytest.raises(PlotError, match="positive"):
        render("energy-convergence", [path], tmp_path / "x.png")


def test_energy_timeseries(diagnostics_csv, tmp_path):
    out = tmp_path / "series.png"
    render("energy-timeseries", [diagnostics_csv], out)
    assert out.exists()


def test_energy_timeseries_rejects_negative_errors(diagnostics_csv, tmp_path):
    text = diagnostics_csv.read_text().replace("5e-14", "-1e-14")
    bad = tmp_path / "bad_diag.csv"
    bad.write_text(text)
    with pytest.raises(PlotError, match="positive"):
        render("energy-timeseries", [bad], tmp_path / "x.png")


def test_field_1d(snapshot_1d, tmp_path):
    out = tmp_path / "field.png"
    render("field-1d", [snapshot_1d], out)
    assert out.exists()


def test_field_1d_rejects_2d_input(snapshot_2d, tmp_path):
    with pytest.raises(PlotError, match="1D"):
        render("field-1d", [snapshot_2d], tmp_path / "x.png")


def test_spacetime_1d(snapshot_series_1d, tmp_path):
    out = tmp_path / "spacetime.png"
    render("spacetime-1d", snapshot_series_1d, out)
    assert out.exists()
    with pytest.raises(PlotError, match="two"):
        render("spacetime-1d", snapshot_series_1d[:1], tmp_path / "y.png")


def test_heatmap_2d(snapshot_2d, tmp_path):
    out = tmp_path / "heat.png"
    render("heatmap-2d", [snapshot_2d], out)
    assert out.exists()


def test_frame_grid(snapshot_2d, tmp_path):
    # reuse the same frame twice; ordering by time is still exercised
    out = tmp_path / "grid.png"
    render("frame-grid", [snapshot_2d, snapshot_2d], out)
    assert out.exists()


def test_render_rejects_unknown_kind(snapshot_1d, tmp_path):
    with pytest.raises(PlotError, match="unknown"):
        render("pie-chart", [snapshot_1d], tmp_path / "x.png")


def test_rendering_is_deterministic(sweep_csv, tmp_path):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    render("energy-convergence", [sweep_csv], a)
    render("energy-convergence", [sweep_csv], b)
    assert a.read_bytes() == b.read_bytes()


# ------------------------------------------------------------------ CLI


def test_cli_happy_path(snapshot_2d, tmp_path, capsys):
    out = tmp_path / "cli.png"
    assert main(["heatmap-2d", str(snapshot_2d), "-o", str(out)]) == 0
    assert out.exists()
    assert "wrote" in capsys.readouterr().out


def test_cli_missing_input_exits_nonzero(tmp_path, capsys):
    code = main(["heatmap-2d", str(tmp_path / "missing"), "-o", str(tmp_path / "x.png")])
    assert code == 2
    assert "error:" in capsys.readouterr().err
