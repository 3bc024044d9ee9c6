import io
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from torospec import (
    C0,
    FitTable,
    ModeId,
    ParseError,
    Torus,
    TorusPerturbative,
    build_spectrum,
    flow_sweep,
    mode_chart,
    torus_F,
)
from torospec.calibration import MeasuredSpectrum
from torospec.io import (
    COLUMNS,
    chart_rows,
    flow_rows,
    format_float,
    parse_frequency,
    parse_grid,
    parse_length,
    read_fit_table,
    read_materials,
    read_measured,
    read_table,
    render_table,
    resolve_material,
    spectrum_rows,
    write_fit_table,
    write_measured,
)

TM010 = ModeId.tm(0, 1, 0)
TE_P110 = ModeId.te(1, 1, 0, +1)


@pytest.mark.parametrize("text, value", [
    ("10mm", 0.01), ("2.5 cm", 0.025), ("0.3", 0.3), ("7um", 7e-6), ("1e-3m", 1e-3),
])
def test_parse_length(text, value):
    assert parse_length(text) == pytest.approx(value, rel=1e-15)


@pytest.mark.parametrize("text, value", [
    ("14GHz", 14e9), ("100 MHz", 1e8), ("5e9", 5e9), ("3khz", 3e3),
])
def test_parse_frequency(text, value):
    assert parse_frequency(text) == pytest.approx(value, rel=1e-15)


@pytest.mark.parametrize("text", ["", "mm", "10 furlongs", "1..2", "ten"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_length(text)


def test_grids():
    grid = parse_grid("0.01:0.999:0.001")
    assert grid[0] == 0.01 and grid[-1] == 0.999 and len(grid) == 990
    assert list(parse_grid("7mm:9mm:0.5mm", parse_length)) == [0.007, 0.0075, 0.008, 0.0085, 0.009]
    assert list(parse_grid("0.27,0.56,0.77")) == [0.27, 0.56, 0.77]
    for bad in ("1:0:0.1", "0:1:0", "0.5,0.2", "a:b:c", "", "1:2"):
        with pytest.raises(ParseError):
            parse_grid(bad)


@given(st.floats(-1e300, 1e300, allow_nan=False))
def test_format_float_round_trip(x):
    text = format_float(x)
    assert "E" not in text
    assert float(text) == pytest.approx(x, rel=1e-8, abs=0)


def test_spectrum_table_revalidates():
    torus = Torus(0.010, 0.020)
    spectrum = build_spectrum(torus, TorusPerturbative(), 14e9)
    text = render_table(spectrum_rows(spectrum))
    assert text.splitlines()[0] == ",".join(COLUMNS)
    rows = read_table(text)
    assert len(rows) == len(spectrum)
    for row in rows:
        mode = ModeId(row["family"], int(row["parity"]), int(row["k"]), int(row["n"]), int(row["m"]))
        eps = float(row["eps"])
        assert float(row["r_m"]) / float(row["R_m"]) == pytest.approx(eps, rel=1e-8)
        F = torus_F(mode, eps)
        assert float(row["F"]) == pytest.approx(F, rel=1e-8)
        assert float(row["f_hz"]) == pytest.approx(F * C0 / (2 * float(row["r_m"])), rel=1e-8)
        assert row["extrapolated"] == "false"
        assert row["multiplicity"] == ("2" if mode.m else "1")


def test_render_is_deterministic_and_json_versioned():
    chart = mode_chart([0.007, 0.009], parse_grid("7mm:12mm:0.5mm", parse_length))
    rows = chart_rows(chart)
    assert render_table(rows) == render_table(chart_rows(mode_chart(
        [0.007, 0.009], parse_grid("7mm:12mm:0.5mm", parse_length))))
    document = json.loads(render_table(rows, "json", {"kind": "chart"}))
    assert document["schema"] == 1
    assert document["columns"] == list(COLUMNS)
    assert len(document["rows"]) == len(rows)
    with pytest.raises(ParseError):
        render_table(rows, "xml")


def test_flow_rows_have_blank_geometry():
    rows = flow_rows(flow_sweep([TM010], [0.5], TorusPerturbative()), "torus")
    assert rows[0]["r_m"] == "" and rows[0]["f_hz"] == ""
    assert rows[0]["F"] == "0.777789797"
    assert rows[0]["parity"] == "0"


def test_polynomial_fit_table_round_trip():
    table = FitTable("polynomial", {TE_P110: (0.586067, -0.001, 0.0002), TM010: (0.765, 0.076, 0.0)})
    buffer = io.StringIO()
    write_fit_table(table, buffer)
    assert buffer.getvalue().splitlines()[0] == "family,parity,k,n,m,c0,c2,c4"
    again = read_fit_table(io.StringIO(buffer.getvalue()))
    assert again.mode == "polynomial"
    assert again.rows == table.rows


def test_sampled_fit_table_round_trip():
    eps = (0.1, 0.4, 0.7, 0.95)
    table = FitTable("sampled", {TM010: (eps, tuple(torus_F(TM010, e) for e in eps))})
    buffer = io.StringIO()
    write_fit_table(table, buffer)
    again = read_fit_table(io.StringIO(buffer.getvalue()))
    assert again.evaluate(TM010, 0.4)[0] == pytest.approx(torus_F(TM010, 0.4), rel=1e-9)


def test_fit_table_rejects_bad_header():
    with pytest.raises(ParseError):
        read_fit_table(io.StringIO("a,b,c\n1,2,3\n"))
    with pytest.raises(ParseError):
        read_fit_table(io.StringIO("family,parity,k,n,m,c0,c2,c4\nTE,+1,1,1,0,x,0,0\n"))


def test_measured_round_trip():
    measured = MeasuredSpectrum.from_pairs([(TE_P110, 8.662e9), (None, 8.884e9), (TM010, 11.637e9)])
    buffer = io.StringIO()
    write_measured(measured, buffer)
    text = buffer.getvalue()
    assert text.splitlines()[0] == "family,parity,k,n,m,f_hz"
    assert text.splitlines()[2] == ",0,,,,8.884e+09"
    again = read_measured(io.StringIO(text))
    assert again.lines == measured.lines


def test_measured_rejects():
    with pytest.raises(ParseError):
        read_measured(io.StringIO("f_hz\n1e9\n"))
    with pytest.raises(ParseError):
        read_measured(io.StringIO("family,parity,k,n,m,f_hz\n,0,,,,abc\n"))
    with pytest.raises(ParseError):
        read_measured(io.StringIO("family,parity,k,n,m,f_hz\n,0,,,,2e9\n,0,,,,1e9\n"))


def test_materials_file(tmp_path):
    path = tmp_path / "materials.csv"
    path.write_text("# name, sigma, mu, eps_r\nniobium, 6.6e6, 1.25663706e-6, 1\n\nsilver, 6.3e7, 1.25663706e-6, 1 # room T\n")
    materials = read_materials(path)
    assert set(materials) == {"niobium", "silver"}
    assert resolve_material(str(path)).name == "niobium"
    assert resolve_material(f"{path}:silver").sigma == 6.3e7
    assert resolve_material("Copper").sigma == 5.8e7
    with pytest.raises(ParseError):
        resolve_material("unobtainium")
    with pytest.raises(ParseError):
        resolve_material(f"{path}:gold")
    path.write_text("broken line\n")
    with pytest.raises(ParseError):
        read_materials(path)


def test_nodal_rows_write_clamped_eps():
    with pytest.warns(UserWarning):
        spectrum = build_spectrum(Torus(0.01, 0.01), TorusPerturbative(), 12e9)
    rows = spectrum_rows(spectrum)
    assert {row["eps"] for row in rows} == {"0.999"}
    assert {row["extrapolated"] for row in rows} == {"true"}
    assert all(math.isfinite(float(row["f_hz"])) for row in rows)
    assert np.all(np.diff([float(r["f_hz"]) for r in rows]) >= 0)
