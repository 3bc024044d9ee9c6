"""File formats, unit parsing and deterministic table output."""
from __future__ import annotations

import csv
import io
import json
import math
import re
from collections import defaultdict
from pathlib import Path
from typing import Iterable, Optional, TextIO

import numpy as np

from .calibration import MeasuredLine, MeasuredSpectrum
from .errors import ParseError
from .modes import NODAL_EPSILON, FitTable, ModeId, multiplicity
from .quality import MATERIALS, Material
from .spectrum import FlowPoint, ModeChart, Spectrum

SCHEMA_VERSION = 1

COLUMNS = ("r_m", "R_m", "eps", "family", "parity", "k", "n", "m", "F", "f_hz",
           "multiplicity", "extrapolated")
POLYNOMIAL_HEADER = ("family", "parity", "k", "n", "m", "c0", "c2", "c4")
SAMPLED_HEADER = ("family", "parity", "k", "n", "m", "eps", "F")
MEASURED_HEADER = ("family", "parity", "k", "n", "m", "f_hz")

_LENGTH_UNITS = {"": 1.0, "m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6}
_FREQUENCY_UNITS = {"": 1.0, "hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}
_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([a-zA-Z]*)\s*$")


def format_float(value: float) -> str:
    """Nine significant digits, lowercase exponent."""
    return f"{value:.9g}"


def _quantity(text: str, units: dict, what: str) -> float:
    match = _QUANTITY.match(text)
    if not match or match.group(2).lower() not in units:
        raise ParseError(f"cannot parse {what} {text!r}")
    return float(match.group(1)) * units[match.group(2).lower()]


def parse_length(text: str) -> float:
    """``'10mm'`` -> 0.01; bare numbers are metres."""
    return _quantity(text, _LENGTH_UNITS, "length")


def parse_frequency(text: str) -> float:
    """``'14GHz'`` -> 1.4e10; bare numbers are Hz."""
    return _quantity(text, _FREQUENCY_UNITS, "frequency")


def parse_grid(text: str, parse=float) -> np.ndarray:
    """Inclusive ``start:stop:step`` grid, or a comma separated list."""
    try:
        if ":" in text:
            start, stop, step = (parse(part) for part in text.split(":"))
            if not step > 0 or stop < start:
                raise ParseError(f"grid {text!r} needs step > 0 and stop >= start")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            values = start + step * np.arange(count)
            values = np.round(values, 12)
        else:
            values = np.array([parse(part) for part in text.split(",") if part.strip()])
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(f"cannot parse grid {text!r}") from exc
    if values.size == 0 or np.any(np.diff(values) <= 0):
        raise ParseError(f"grid {text!r} must be non-empty and strictly increasing")
    return values


def _parity_text(parity: int) -> str:
    return {1: "+1", -1: "-1", 0: "0"}[parity]


def _mode_fields(mode: ModeId) -> dict:
    return {"family": mode.family, "parity": _parity_text(mode.parity),
            "k": str(mode.k), "n": str(mode.n), "m": str(mode.m)}


def _row(mode, F, eps=None, r=None, R=None, f=None, multiplicity=None, extrapolated=False) -> dict:
    row = dict.fromkeys(COLUMNS, "")
    row.update(_mode_fields(mode))
    row["F"] = format_float(F)
    row["extrapolated"] = "true" if extrapolated else "false"
    for key, value in (("r_m", r), ("R_m", R), ("eps", eps), ("f_hz", f)):
        if value is not None:
            row[key] = format_float(value)
    if multiplicity is not None:
        row["multiplicity"] = str(multiplicity)
    return row


def spectrum_rows(spectrum: Spectrum) -> list[dict]:
    g = spectrum.geometry
    r, R = (g.r, g.R) if g.kind == "torus" else (g.d / 2, None)
    eps = NODAL_EPSILON if getattr(g, "nodal", False) else g.aspect_ratio
    return [_row(e.mode, e.F, eps, r, R, e.f, e.multiplicity, e.extrapolated)
            for e in spectrum.entries]


def flow_rows(points: Iterable[FlowPoint], kind: str) -> list[dict]:
    return [_row(p.mode, p.F, p.eps, multiplicity=multiplicity(p.mode, kind),
                 extrapolated=p.extrapolated) for p in points]


def chart_rows(chart: ModeChart) -> list[dict]:
    rows = []
    for row in chart.rows:
        e = row.entry
        rows.append(_row(e.mode, e.F, row.eps, row.r, row.R, e.f, e.multiplicity,
                         e.extrapolated))
    return rows


def render_table(rows: list[dict], fmt: str = "csv", meta: Optional[dict] = None) -> str:
    """Serialise rows with the fixed column order; byte-identical for equal input."""
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue()
    if fmt == "json":
        document = {"schema": SCHEMA_VERSION, **(meta or {}), "columns": list(COLUMNS),
                    "rows": [[row[c] for c in COLUMNS] for row in rows]}
        return json.dumps(document, indent=1) + "\n"
    raise ParseError(f"unknown output format {fmt!r}")


def read_table(text: str) -> list[dict]:
    """Inverse of the CSV branch of :func:`render_table`."""
    return list(csv.DictReader(io.StringIO(text)))


def _open_csv(source) -> tuple[list[str], list[dict]]:
    text = Path(source).read_text(encoding="utf-8") if not hasattr(source, "read") else source.read()
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise ParseError("empty CSV file")
    header = [name.strip() for name in reader.fieldnames]
    reader.fieldnames = header
    return header, list(reader)


def _mode_from(row: dict) -> ModeId:
    try:
        parity = int(row["parity"].strip() or 0)
        return ModeId(row["family"].strip().upper(), parity,
                      int(row["k"]), int(row["n"]), int(row["m"]))
    except (TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"bad mode fields in row {row}") from exc


def read_fit_table(source) -> FitTable:
    """Load a polynomial (``c0,c2,c4``) or sampled (``eps,F``) fit table."""
    header, rows = _open_csv(source)
    try:
        if tuple(header) == POLYNOMIAL_HEADER:
            table = {_mode_from(row): (float(row["c0"]), float(row["c2"]), float(row["c4"]))
                     for row in rows}
            return FitTable("polynomial", table)
        if tuple(header) == SAMPLED_HEADER:
            samples = defaultdict(list)
            for row in rows:
                samples[_mode_from(row)].append((float(row["eps"]), float(row["F"])))
            return FitTable("sampled", {mode: tuple(zip(*points)) for mode, points in samples.items()})
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unrecognised fit table header {header}")


def write_fit_table(table: FitTable, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    if table.mode == "polynomial":
        writer.writerow(POLYNOMIAL_HEADER)
        for mode in table.modes:
            f = _mode_fields(mode)
            writer.writerow([*f.values(), *(format_float(c) for c in table.rows[mode])])
    else:
        writer.writerow(SAMPLED_HEADER)
        for mode in table.modes:
            f = _mode_fields(mode)
            for eps, value in zip(*table.rows[mode]):
                writer.writerow([*f.values(), format_float(eps), format_float(value)])


def read_measured(source, **metadata) -> MeasuredSpectrum:
    """Measured lines from ``family,parity,k,n,m,f_hz``; empty mode fields mean unlabelled."""
    header, rows = _open_csv(source)
    if tuple(header) != MEASURED_HEADER:
        raise ParseError(f"measured spectrum header must be {','.join(MEASURED_HEADER)}")
    lines = []
    for row in rows:
        try:
            f = float(row["f_hz"])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad frequency in row {row}") from exc
        label = _mode_from(row) if (row["family"] or "").strip() else None
        lines.append(MeasuredLine(label, f))
    try:
        return MeasuredSpectrum(tuple(lines), metadata)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def write_measured(spectrum: MeasuredSpectrum, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(MEASURED_HEADER)
    for line in spectrum.lines:
        fields = list(_mode_fields(line.label).values()) if line.label else ["", "0", "", "", ""]
        writer.writerow([*fields, format_float(line.f)])


def read_materials(source) -> dict[str, Material]:
    """``name, sigma_s_per_m, mu_h_per_m, eps_r`` per line; ``#`` starts a comment."""
    text = Path(source).read_text(encoding="utf-8") if not hasattr(source, "read") else source.read()
    materials = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        try:
            name, sigma, mu, eps_r = parts
            materials[name] = Material(name, float(sigma), float(mu), float(eps_r))
        except ValueError as exc:
            raise ParseError(f"material file line {number}: {raw!r}") from exc
    return materials


def resolve_material(text: str) -> Material:
    """Preset name, or ``path`` / ``path:name`` of a material file."""
    if text.lower() in MATERIALS:
        return MATERIALS[text.lower()]
    path, _, name = text.partition(":") if not Path(text).exists() else (text, "", "")
    if not Path(path).exists():
        raise ParseError(f"unknown material {text!r}")
    materials = read_materials(path)
    if not materials:
        raise ParseError(f"no materials in {path}")
    if name:
        if name not in materials:
            raise ParseError(f"material {name!r} not in {path}")
        return materials[name]
    return next(iter(materials.values()))
