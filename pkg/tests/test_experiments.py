import json
import math
import os

import numpy as np
import pytest

import adiasearch as a
from adiasearch.errors import InvalidArgumentError
from adiasearch.experiments import (
    FigureTable,
    SweepConfig,
    figure1_data,
    figure2_data,
    figure3_data,
    run_sweep,
    scaling_report,
    write_figures,
)


def strip_timestamp(text):
    header, rest = text.split("\n", 1)
    md = json.loads(header[2:])
    md.pop("timestamp")
    return md, rest


def test_figure_table_roundtrip(tmp_path):
    t = FigureTable("demo", ["a", "b"], [[1.0, 2.0], [3.0, None]], {"k": 1})
    path = tmp_path / "demo.csv"
    t.write(str(path))
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# {")
    assert lines[1] == "a,b"
    assert lines[2] == "1,2"
    assert lines[3] == "3,"  # None renders as an empty field
    with pytest.raises(InvalidArgumentError):
        FigureTable("demo", ["a"], [[1.0, 2.0]])


def test_figure1_shape_and_values():
    t = figure1_data(6)
    assert t.columns == ["s", "E0", "E1"]
    assert len(t.rows) == 512
    s = np.array([r[0] for r in t.rows])
    E0 = np.array([r[1] for r in t.rows])
    E1 = np.array([r[2] for r in t.rows])
    gap = E1 - E0
    assert (gap > 0).all()
    assert gap.min() == pytest.approx(0.625, abs=1e-5)  # grid, not exactly s=0.5
    assert abs(s[np.argmin(gap)] - 0.5) < 2e-3
    assert E0[0] == pytest.approx(0.0, abs=1e-15) and E1[0] == pytest.approx(1.0, abs=1e-15)


def test_figure2_driven_column_ends_early():
    t = figure2_data(6, epsilon=1.0, n_grid=128)
    T_driven = t.metadata["T_driven"]
    T_rc = t.metadata["T_rc"]
    assert T_rc / T_driven > 4
    for row in t.rows:
        tt, s_d, s_rc = row
        if tt > T_driven:
            assert s_d is None
        else:
            assert 0.0 <= s_d <= 1.0
        assert 0.0 <= s_rc <= 1.0
    # the driven curve reaches s = 1 exactly at its own total runtime
    exact = [r for r in t.rows if r[0] == T_driven]
    assert exact and exact[0][1] == pytest.approx(1.0, abs=1e-9)


def test_figure3_runtime_flat_vs_sqrt():
    t = figure3_data(n_range=range(2, 21, 2))
    N = np.array([r[0] for r in t.rows])
    Td = np.array([r[1] for r in t.rows])
    Trc = np.array([r[2] for r in t.rows])
    sq = np.array([r[3] for r in t.rows])
    assert np.allclose(sq, np.sqrt(N))
    # driven runtime saturates; undriven runtime grows like sqrt(N)
    assert abs(Td[-1] - Td[-3]) < 0.05
    assert Trc[-1] / Trc[-3] == pytest.approx(4.0, rel=0.05)  # N grows 16x
    assert Td[-1] == pytest.approx(1 + math.pi / 2, abs=0.01)


def test_sweep_records_and_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    cfg = SweepConfig(n_values=[4, 6], profiles=["none", "quadratic"],
                      output_path=str(out), fmt="csv")
    records = run_sweep(cfg)
    assert len(records) == 4
    kinds = [r.profile_kind for r in records]
    assert kinds == sorted(kinds)
    lines = out.read_text().splitlines()
    assert lines[1] == "N,epsilon,profile,T,g_min,method,error"
    assert len(lines) == 6


def test_sweep_json_and_error_capture(tmp_path):
    out = tmp_path / "sweep.json"
    cfg = SweepConfig(n_values=[6, 99], output_path=str(out), fmt="json")
    records = run_sweep(cfg)
    errs = [r for r in records if isinstance(r, dict)]
    assert len(errs) == 1 and errs[0]["n"] == 99
    assert "InvalidArgumentError" in errs[0]["error"]
    payload = json.loads(out.read_text())
    assert len(payload["records"]) == 2
    assert any("error" in r for r in payload["records"])


def test_sweep_config_validation():
    with pytest.raises(InvalidArgumentError):
        SweepConfig(n_values=[])
    with pytest.raises(InvalidArgumentError):
        SweepConfig(n_values=[4], fmt="xml")


def test_sweep_thread_cap(monkeypatch):
    monkeypatch.setenv("ADIA_THREADS", "1")
    records = run_sweep(SweepConfig(n_values=[4, 5, 6]))
    assert [r.N for r in records] == [16, 32, 64]


def test_scaling_report_exponents():
    records = run_sweep(SweepConfig(n_values=list(range(10, 25, 2)),
                                    profiles=["none", "quadratic"]))
    fits = scaling_report(records, min_N=1024)
    assert fits["none"].exponent == pytest.approx(0.5, abs=0.02)
    assert abs(fits["quadratic"].exponent) < 0.01
    assert fits["quadratic"].vs_derived_constant == pytest.approx(0.0, abs=0.01)
    assert abs(fits["quadratic"].vs_literature_constant) > 0.7


def test_scaling_report_needs_enough_points():
    records = run_sweep(SweepConfig(n_values=[6, 8, 10]))
    with pytest.raises(InvalidArgumentError):
        scaling_report(records, min_N=0)


def test_write_figures_names_and_determinism(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    paths = write_figures(str(d1), n=4, stream=open(os.devnull, "w"))
    assert [os.path.basename(p) for p in paths] == ["fig1_N16.csv", "fig2_N16.csv", "fig3.csv"]
    write_figures(str(d2), n=4, stream=open(os.devnull, "w"))
    for name in ("fig1_N16.csv", "fig2_N16.csv", "fig3.csv"):
        md1, body1 = strip_timestamp((d1 / name).read_text())
        md2, body2 = strip_timestamp((d2 / name).read_text())
        assert md1 == md2
        assert body1 == body2  # byte-identical modulo the timestamp
