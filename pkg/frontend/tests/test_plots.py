"""Plot tool: schema handling, rendering, determinism."""

import pathlib

import pytest

from ofdmplot.cli import main
from ofdmplot.plots import PlotSpec, _interp_crossing, render
from ofdmplot.reader import SchemaError, read_rows

BER_HEADER = "format,n,m,components,snr_db,bits,errors,ber,rate_bps_hz,papr_p999_db,seed,censored"


def ber_csv(tmp_path, name="ber.csv", rows=()):
    path = tmp_path / name
    path.write_text("\n".join([BER_HEADER, *rows]) + "\n")
    return path


SAMPLE_ROWS = [
    "see,64,16,2,18,1000000,3360,3.36e-3,1.5,13.3,9,0",
    "see,64,16,2,20,1000000,268,2.68e-4,1.5,13.3,9,0",
    "see,64,16,2,21,4000000,208,5.2e-5,1.5,13.3,9,0",
    "see,64,16,2,22,1000000,36,3.6e-5,1.5,13.3,9,1",
    "aco,64,64,1,22,1000000,472,4.72e-4,1.5,14.7,9,0",
    "aco,64,64,1,24,1000000,21,2.1e-5,1.5,14.7,9,0",
]


def test_ber_plot_renders_groups_and_censored_markers(tmp_path):
    path = ber_csv(tmp_path, rows=SAMPLE_ROWS)
    out = tmp_path / "fig.png"
    summary = render(PlotSpec(inputs=[path], kind="ber", out=str(out)))
    assert out.exists() and out.stat().st_size > 0
    assert summary["series"] == 2
    assert summary["points"] == 6


def test_empty_but_valid_csv_renders_empty_axes(tmp_path, capsys):
    path = ber_csv(tmp_path, rows=())
    out = tmp_path / "empty.png"
    code = main(["--kind", "ber", "--in", str(path), "--out", str(out)])
    assert code == 0
    assert out.exists() and out.stat().st_size > 0
    assert "0 series" in capsys.readouterr().out


def test_schema_mismatch_exits_2_with_column_diagnostic(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("format,snr\nsee,10\n")
    out = tmp_path / "x.png"
    code = main(["--kind", "ber", "--in", str(bad), "--out", str(out)])
    assert code == 2
    err = capsys.readouterr().err
    assert "missing column" in err and "ber" in err
    assert not out.exists()


def test_missing_input_file_exits_2(tmp_path, capsys):
    code = main(["--kind", "ber", "--in", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o.png")])
    assert code == 2


def test_rendering_is_deterministic(tmp_path):
    path = ber_csv(tmp_path, rows=SAMPLE_ROWS)
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    render(PlotSpec(inputs=[path], kind="ber", out=str(a)))
    render(PlotSpec(inputs=[path], kind="ber", out=str(b)))
    assert a.read_bytes() == b.read_bytes()


def test_crossing_interpolation_matches_log_linear_rule():
    rows = [
        {"snr_db": 10.0, "ber": 1e-3, "censored": False},
        {"snr_db": 12.0, "ber": 1e-5, "censored": False},
    ]
    assert _interp_crossing(rows, 1e-4) == pytest.approx(11.0)
    rows[1]["censored"] = True
    assert _interp_crossing(rows, 1e-4) is None


def test_snr_vs_rate_plot(tmp_path):
    path = ber_csv(tmp_path, rows=SAMPLE_ROWS)
    out = tmp_path / "rate.png"
    summary = render(PlotSpec(inputs=[path], kind="snr_vs_rate", out=str(out)))
    assert out.exists()
    assert summary["series"] == 2
    assert summary["points"] == 2  # both series bracket 1e-4


def test_papr_plot(tmp_path):
    path = tmp_path / "papr.csv"
    rows = ["format,n,m,components,frames,papr_db,exceed_prob,seed"]
    for fmt, offset in (("see", 0.0), ("aco", 1.2)):
        for i in range(20):
            t = 8 + 0.3 * i
            rows.append(f"{fmt},64,16,2,30000,{t + offset},{10 ** (-0.15 * i):.4g},7")
    path.write_text("\n".join(rows) + "\n")
    out = tmp_path / "papr.png"
    summary = render(PlotSpec(inputs=[path], kind="papr", out=str(out)))
    assert out.exists()
    assert summary["series"] == 2


def test_multiple_inputs_concatenate(tmp_path):
    p1 = ber_csv(tmp_path, "a.csv", SAMPLE_ROWS[:3])
    p2 = ber_csv(tmp_path, "b.csv", SAMPLE_ROWS[3:])
    out = tmp_path / "multi.png"
    summary = render(PlotSpec(inputs=[p1, p2], kind="ber", out=str(out)))
    assert summary["series"] == 2


def test_reader_types_and_tolerated_extras(tmp_path):
    path = ber_csv(tmp_path, rows=SAMPLE_ROWS[:1])
    rows = read_rows([path], ("format", "ber"))
    assert rows[0]["ber"] == pytest.approx(3.36e-3)
    assert rows[0]["censored"] is False
    with pytest.raises(SchemaError, match="missing column"):
        read_rows([path], ("format", "mystery"))


ACCEPTANCE = pathlib.Path(__file__).resolve().parents[2] / "results"


@pytest.mark.skipif(not ACCEPTANCE.exists(), reason="primary acceptance CSVs absent")
def test_renders_acceptance_figures(tmp_path):
    jobs = [
        ("fig6_allocations.csv", "ber"),
        ("fig7_receivers.csv", "ber"),
        ("fig12_formats.csv", "snr_vs_rate"),
        ("fig13_papr.csv", "papr"),
    ]
    for name, kind in jobs:
        src = ACCEPTANCE / name
        if not src.exists():
            pytest.skip(f"{name} not generated yet")
        out = tmp_path / (name.replace(".csv", ".png"))
        code = main(["--kind", kind, "--in", str(src), "--out", str(out)])
        assert code == 0
        assert out.exists() and out.stat().st_size > 0
