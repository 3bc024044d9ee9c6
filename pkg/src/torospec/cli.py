"""``torospec`` command line front end.

Exit codes: 0 success, 2 usage or domain error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io as tio
from .calibration import calibrate_minor_radius
from .errors import DomainError, NumericalError, ParseError
from .modes import (
    C0,
    Cuboid,
    Cylinder,
    CylinderExact,
    ModeId,
    Spheroid,
    Torus,
    TorusFitted,
    TorusPerturbative,
    asymptote,
)
from .quality import (
    FAMILY_NORMALISATION,
    characteristic_radius,
    family_comparison,
    quality_report,
)
from .special_functions import bessel_prime_zero, bessel_zero
from .spectrum import (
    build_spectrum,
    dark_modes,
    flow_modes,
    flow_sweep,
    gaps,
    lowest_levels,
    mode_chart,
    mode_rank,
)


def _ghz(f):
    return f"{f / 1e9:.4f} GHz"


def _mhz(f):
    return "n/a" if f is None else f"{f / 1e6:+.1f} MHz"


def _model(text: str | None, kind: str):
    if text is None:
        return TorusPerturbative() if kind == "torus" else CylinderExact()
    if text == "perturbative":
        model = TorusPerturbative()
    elif text == "exact":
        model = CylinderExact()
    elif text.startswith("fitted:"):
        model = TorusFitted(tio.read_fit_table(text.split(":", 1)[1]))
    else:
        raise ParseError(f"unknown model {text!r}")
    if model.kind != kind:
        raise ParseError(f"model {text!r} does not apply to a {kind}")
    return model


def _geometry(args, required=("torus", "cylinder", "cuboid", "spheroid")):
    given = {
        "torus": (args.torus_r, args.torus_R),
        "cylinder": (args.cylinder_d, args.cylinder_h),
        "cuboid": (getattr(args, "cuboid", None),),
        "spheroid": (getattr(args, "spheroid", None),),
    }
    chosen = [kind for kind, values in given.items() if any(v is not None for v in values)]
    if len(chosen) != 1:
        raise ParseError("specify exactly one geometry")
    kind = chosen[0]
    values = given[kind]
    if kind not in required:
        raise ParseError(f"{kind} geometry is not supported here")
    if any(v is None for v in values):
        raise ParseError(f"incomplete {kind} geometry")
    if kind == "torus":
        return Torus(*values)
    if kind == "cylinder":
        return Cylinder(*values)
    parts = [tio.parse_length(p) for p in values[0].split(",")]
    if kind == "cuboid" and len(parts) == 3:
        return Cuboid(*parts)
    if kind == "spheroid" and len(parts) == 2:
        return Spheroid(*parts)
    raise ParseError(f"bad {kind} dimensions {values[0]!r}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _meta(args, **extra):
    return {"command": args.command, **extra}


def cmd_flow(args) -> int:
    eps = tio.parse_grid(args.eps)
    model = _model(args.model, args.kind)
    if args.modes:
        modes = [ModeId.parse(text) for chunk in args.modes for text in chunk.split(",")]
    elif isinstance(model, TorusFitted):
        modes = model.table.modes
    else:
        modes = flow_modes(args.kind, args.fmax_F, eps)
    points = flow_sweep(modes, eps, model)
    rows = tio.flow_rows(points, args.kind)
    _emit(tio.render_table(rows, args.format, _meta(args, kind=args.kind, model=model.name)), args.out)
    sidecar = args.sidecar or (str(Path(args.out).with_suffix(".asymptotes.json")) if args.out else None)
    if sidecar:
        document = {
            "schema": tio.SCHEMA_VERSION,
            "kind": args.kind,
            "asymptotes": [
                {"mode": m.label, "family": m.family, "parity": m.parity, "k": m.k, "n": m.n,
                 "m": m.m, "symbol": "z'" if m.family == "TE" else "z", "value": asymptote(m)}
                for m in modes
            ],
        }
        Path(sidecar).write_text(json.dumps(document, indent=1) + "\n", encoding="utf-8")
    return 0


def spectrum_summary(spectrum) -> str:
    g = spectrum.geometry
    lines = []
    if g.kind == "torus":
        lines.append(f"geometry: torus r = {g.r * 1e3:g} mm, R = {g.R * 1e3:g} mm, eps = {g.aspect_ratio:.6g}"
                     + (" (nodal, evaluated at eps = 0.999)" if g.nodal else ""))
    else:
        lines.append(f"geometry: cylinder d = {g.d * 1e3:g} mm, h = {g.h * 1e3:g} mm, eps = {g.aspect_ratio:.6g}")
    lines.append(f"model: {spectrum.model.name}")
    lines.append(f"levels: {len(spectrum)}")
    if not spectrum.entries:
        lines.append("ground state: none below the cutoff")
        return "\n".join(lines) + "\n"
    ground = spectrum.entries[0]
    lines.append(f"ground state: {ground.mode} at {_ghz(ground.f)}")
    if g.kind == "torus":
        dark = dark_modes(spectrum)
        if not dark:
            lines.append("dark modes: none below the cutoff")
        for entry in dark:
            gap = gaps(spectrum, entry.mode)
            text = (f"DM {entry.mode} at {_ghz(entry.f)}, rank {mode_rank(spectrum, entry.mode)}, "
                    f"gap- {_mhz(gap.delta_minus)}, gap+ {_mhz(gap.delta_plus)}")
            if gap.named_plus is not None:
                text += f", F(+112)-F(010) {_mhz(gap.named_plus)}, F(-112)-F(010) {_mhz(gap.named_minus)}"
            if gap.extrapolated:
                text += " [extrapolated]"
            lines.append(text)
    flagged = sum(e.extrapolated for e in spectrum.entries)
    lines.append(f"extrapolated entries: {flagged}" + (
        " (perturbative model beyond its validity range)" if flagged else ""))
    return "\n".join(lines) + "\n"


def cmd_spectrum(args) -> int:
    geometry = _geometry(args, required=("torus", "cylinder"))
    model = _model(args.model, geometry.kind)
    if args.fmax is None:
        spectrum = lowest_levels(geometry, model, args.count, args.c_medium)
    else:
        spectrum = build_spectrum(geometry, model, args.fmax, args.c_medium)
    rows = tio.spectrum_rows(spectrum)
    _emit(tio.render_table(rows, args.format, _meta(args, model=model.name)), args.out)
    summary = spectrum_summary(spectrum)
    (sys.stdout if args.out else sys.stderr).write(summary)
    return 0


def cmd_chart(args) -> int:
    r_values = tio.parse_grid(args.r, tio.parse_length)
    R_values = tio.parse_grid(args.R, tio.parse_length)
    model = _model(args.model, "torus")
    chart = mode_chart(r_values, R_values, model, args.fmax, args.count, args.c_medium)
    meta = _meta(args, model=model.name, count=args.count, rejected=chart.rejected)
    _emit(tio.render_table(tio.chart_rows(chart), args.format, meta), args.out)
    return 0


def cmd_calibrate(args) -> int:
    nominal = _geometry(args, required=("torus",))
    model = _model(args.model, "torus")
    measured = tio.read_measured(args.measured)
    result = calibrate_minor_radius(measured, nominal, model, fit_major=args.fit_major,
                                    window=args.window, c_medium=args.c_medium)
    print(f"delta_r = {result.delta_r * 1e6:+.3f} um")
    if args.fit_major:
        print(f"delta_R = {result.delta_R * 1e6:+.3f} um")
    print(f"mean shift = {result.mean_shift / 1e6:+.3f} MHz")
    for mode, measured_f, residual in zip(result.modes, result.measured, result.residuals):
        print(f"  {mode.label:10s} {measured_f / 1e9:10.6f} GHz  residual {residual / 1e6:+8.3f} MHz")
    document = {
        "schema": tio.SCHEMA_VERSION,
        "nominal": {"r_m": nominal.r, "R_m": nominal.R},
        "delta_r_m": result.delta_r,
        "delta_R_m": result.delta_R,
        "mean_shift_hz": result.mean_shift,
        "lines": [
            {"mode": m.label, "f_measured_hz": f, "f_model_hz": fm, "residual_hz": res}
            for m, f, fm, res in zip(result.modes, result.measured, result.fitted, result.residuals)
        ],
    }
    out = args.out or str(Path(args.measured).with_suffix(".calibration.json"))
    Path(out).write_text(json.dumps(document, indent=1) + "\n", encoding="utf-8")
    return 0


def cmd_quality(args) -> int:
    geometry = _geometry(args)
    material = tio.resolve_material(args.material)
    report = quality_report(geometry, args.frequency, material)
    comparison = family_comparison(characteristic_radius(geometry), report.skin_depth)
    fmt = tio.format_float
    if args.format == "json":
        document = {
            "schema": tio.SCHEMA_VERSION,
            "geometry": {"kind": geometry.kind, "volume_m3": geometry.volume, "area_m2": geometry.area},
            "frequency_hz": report.frequency,
            "material": {"name": material.name, "sigma_s_per_m": material.sigma,
                         "mu_h_per_m": material.mu, "eps_r": material.eps_r},
            "skin_depth_m": report.skin_depth,
            "surface_resistance_ohm": report.surface_resistance,
            "q_ratio": report.q_ratio,
            "lifetimes": [{"Q": Q, "tau_s": tau} for Q, tau in report.lifetimes],
            "family_comparison": {"normalisation": FAMILY_NORMALISATION, "q_ratio": comparison},
        }
        text = json.dumps(document, indent=1) + "\n"
    else:
        lines = ["section,key,value",
                 f"report,geometry,{geometry.kind}",
                 f"report,frequency_hz,{fmt(report.frequency)}",
                 f"report,material,{material.name}",
                 f"report,skin_depth_m,{fmt(report.skin_depth)}",
                 f"report,surface_resistance_ohm,{fmt(report.surface_resistance)}",
                 f"report,q_ratio,{fmt(report.q_ratio)}"]
        lines += [f"lifetime,{fmt(Q)},{fmt(tau)}" for Q, tau in report.lifetimes]
        lines.append(f'comparison,normalisation,"{FAMILY_NORMALISATION}"')
        lines += [f"comparison,{name},{fmt(value)}" for name, value in comparison.items()]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def cmd_bessel(args) -> int:
    value = bessel_prime_zero(args.k, args.n) if args.prime else bessel_zero(args.k, args.n)
    print(f"{value:.12g}")
    return 0


def _frequency(text):
    try:
        return tio.parse_frequency(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _length(text):
    try:
        return tio.parse_length(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--model", help="perturbative | exact | fitted:PATH")
    common.add_argument("--material", default="aluminium", help="preset name or material file")
    common.add_argument("--c-medium", type=float, default=C0, help="speed of light in the filling, m/s")

    geometry = argparse.ArgumentParser(add_help=False)
    geometry.add_argument("--torus-r", type=_length)
    geometry.add_argument("--torus-R", type=_length)
    geometry.add_argument("--cylinder-d", type=_length)
    geometry.add_argument("--cylinder-h", type=_length)

    parser = argparse.ArgumentParser(prog="torospec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("flow", parents=[common], help="universal spectral flow table")
    p.add_argument("--kind", choices=("cylinder", "torus"), required=True)
    p.add_argument("--eps", required=True, help="aspect-ratio grid start:stop:step or list")
    p.add_argument("--fmax-F", type=float, default=1.3, help="dimensionless mode cutoff")
    p.add_argument("--modes", action="append", help="FAMILY[+|-]:k:n:m, comma separated")
    p.add_argument("--sidecar", help="asymptote JSON path (default: next to --out)")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("spectrum", parents=[common, geometry], help="sorted spectrum of one cavity")
    p.add_argument("--fmax", type=_frequency, help="frequency cutoff (default: --count lowest levels)")
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("chart", parents=[common], help="mode chart over (r, R)")
    p.add_argument("--r", required=True, help="minor radii, list or grid with units")
    p.add_argument("--R", required=True, help="major radius grid start:stop:step with units")
    p.add_argument("--count", type=int, default=7)
    p.add_argument("--fmax", type=_frequency)
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("calibrate", parents=[common, geometry], help="fit the minor-radius error")
    p.add_argument("measured", help="CSV family,parity,k,n,m,f_hz")
    p.add_argument("--fit-major", action="store_true", help="also fit a major-radius offset")
    p.add_argument("--window", type=_frequency, default=100e6)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("quality", parents=[common, geometry], help="skin depth and V/(delta A)")
    p.add_argument("--cuboid", help="a,b,c with units")
    p.add_argument("--spheroid", help="a,c with units")
    p.add_argument("--frequency", type=_frequency, required=True)
    p.set_defaults(func=cmd_quality)

    p = sub.add_parser("bessel", help="n-th zero of J_k, or of J_k' with --prime")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--prime", action="store_true")
    p.set_defaults(func=cmd_bessel)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"torospec: error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"torospec: numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"torospec: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
