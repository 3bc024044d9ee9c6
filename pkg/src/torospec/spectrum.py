"""Concrete spectra and the analyses built on them."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError, ForbiddenRegionError, ModeNotFoundError
from .modes import (
    C0,
    Geometry,
    NODAL_EPSILON,
    ModeId,
    NodalLimitWarning,
    SpectralModel,
    Torus,
    TorusFitted,
    TorusPerturbative,
    enumerate_modes,
    evaluate_F,
    multiplicity,
    physical_frequency,
)
from .special_functions import zero_over_pi

DARK_MODE = ModeId.tm(0, 1, 0)


@dataclass(frozen=True)
class SpectrumEntry:
    mode: ModeId
    F: float
    f: float
    multiplicity: int
    extrapolated: bool

    def sort_key(self):
        return (self.f, self.mode.sort_key())


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Resonances of one geometry under one model, ascending in frequency.

    Each ``|m|`` (torus) level is listed once; its degeneracy lives in
    ``multiplicity``.
    """

    geometry: Geometry
    model: SpectralModel
    entries: tuple[SpectrumEntry, ...]
    c_medium: float = C0

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    @property
    def kind(self) -> str:
        return self.geometry.kind

    @property
    def modes(self) -> list[ModeId]:
        return [e.mode for e in self.entries]

    @property
    def extrapolated(self) -> bool:
        return any(e.extrapolated for e in self.entries)

    def index(self, mode: ModeId) -> int:
        for i, entry in enumerate(self.entries):
            if entry.mode == mode:
                return i
        raise ModeNotFoundError(f"{mode} is not in the spectrum")

    def entry(self, mode: ModeId) -> SpectrumEntry:
        return self.entries[self.index(mode)]


def _check_model(geometry: Geometry, model: SpectralModel) -> None:
    if geometry.kind not in ("torus", "cylinder"):
        raise DomainError(f"no spectral model for {geometry.kind} cavities")
    if model.kind != geometry.kind:
        raise DomainError(f"{model.name} model does not apply to a {geometry.kind}")


def _candidates(geometry: Geometry, model: SpectralModel, F_max: float) -> list[ModeId]:
    if isinstance(model, TorusFitted):
        return model.table.modes
    return enumerate_modes(geometry.kind, F_max, geometry.aspect_ratio)


def build_spectrum(geometry: Geometry, model: SpectralModel, f_max: float,
                   c_medium: float = C0) -> Spectrum:
    """Complete spectrum of ``geometry`` up to and including ``f_max`` (Hz)."""
    if not f_max > 0:
        raise DomainError(f"f_max must be positive, got {f_max!r}")
    _check_model(geometry, model)
    F_max = f_max * geometry.diameter / c_medium
    eps = geometry.aspect_ratio
    entries = []
    nodal = getattr(geometry, "nodal", False)
    if nodal:
        warnings.warn("nodal torus evaluated at eps = 0.999", NodalLimitWarning, stacklevel=2)
    with warnings.catch_warnings():
        if nodal:
            warnings.simplefilter("ignore", NodalLimitWarning)
        for mode in _candidates(geometry, model, F_max):
            value = evaluate_F(mode, eps, model)
            if value.F > F_max:
                continue
            entries.append(SpectrumEntry(
                mode, value.F, physical_frequency(value.F, geometry, c_medium),
                multiplicity(mode, geometry.kind), value.extrapolated,
            ))
    entries.sort(key=SpectrumEntry.sort_key)
    return Spectrum(geometry, model, tuple(entries), c_medium)


def lowest_levels(geometry: Geometry, model: SpectralModel, count: int,
                  c_medium: float = C0) -> Spectrum:
    """Spectrum truncated to its ``count`` lowest entries."""
    if count < 1:
        raise DomainError("count must be at least 1")
    _check_model(geometry, model)
    F_max = 1.0
    while True:
        spectrum = build_spectrum(geometry, model, F_max * c_medium / geometry.diameter, c_medium)
        exhausted = isinstance(model, TorusFitted) and len(spectrum) == len(model.table.rows)
        if len(spectrum) >= count or exhausted:
            return Spectrum(geometry, model, spectrum.entries[:count], c_medium)
        F_max *= 1.5


def ground_state(geometry: Geometry, model: SpectralModel) -> ModeId:
    return lowest_levels(geometry, model, 1)[0].mode


def cylinder_crossover() -> float:
    """Cylinder aspect ratio where TE_111 and TM_010 are degenerate.

    Below it TE_111 is the ground state, above it TM_010.
    """
    z01 = zero_over_pi(0, 1)
    zp11 = zero_over_pi(1, 1, prime=True)
    return 2.0 * math.sqrt(z01 * z01 - zp11 * zp11)


def is_dark(mode: ModeId) -> bool:
    """TM_{k10}: the electric field never reaches the wall of a torus."""
    return mode.family == "TM" and mode.n == 1 and mode.m == 0


def dark_modes(spectrum: Spectrum) -> list[SpectrumEntry]:
    if spectrum.kind != "torus":
        raise DomainError("dark modes are defined for toroidal spectra only")
    return [e for e in spectrum.entries if is_dark(e.mode)]


def mode_rank(spectrum: Spectrum, mode: ModeId) -> int:
    """1-based position of ``mode`` in the sorted spectrum."""
    return spectrum.index(mode) + 1


@dataclass(frozen=True)
class Gaps:
    """Signed distances (Hz) from a mode to its spectral neighbours.

    ``delta_minus`` is ``f_below - f`` (``None`` for the ground state) and
    ``delta_plus`` is ``f_above - f`` (``None`` for the top entry).  For TM_010
    in a torus ``named_plus``/``named_minus`` give ``f(TE^+-_112) - f(TM_010)``.
    """

    mode: ModeId
    delta_minus: Optional[float]
    delta_plus: Optional[float]
    below: Optional[ModeId]
    above: Optional[ModeId]
    named_plus: Optional[float] = None
    named_minus: Optional[float] = None
    extrapolated: bool = False


def gaps(spectrum: Spectrum, mode: ModeId) -> Gaps:
    i = spectrum.index(mode)
    entries = spectrum.entries
    here = entries[i]
    below = entries[i - 1] if i > 0 else None
    above = entries[i + 1] if i + 1 < len(entries) else None
    named_plus = named_minus = None
    extrapolated = here.extrapolated
    if spectrum.kind == "torus" and mode == DARK_MODE:
        geometry, model = spectrum.geometry, spectrum.model
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NodalLimitWarning)
            values = {
                p: evaluate_F(ModeId.te(1, 1, 2, p), geometry.aspect_ratio, model) for p in (1, -1)
            }
        scale = spectrum.c_medium / geometry.diameter
        named_plus = (values[1].F - here.F) * scale
        named_minus = (values[-1].F - here.F) * scale
        extrapolated = extrapolated or values[1].extrapolated or values[-1].extrapolated
    return Gaps(
        mode,
        None if below is None else below.f - here.f,
        None if above is None else above.f - here.f,
        None if below is None else below.mode,
        None if above is None else above.mode,
        named_plus,
        named_minus,
        extrapolated,
    )


@dataclass(frozen=True)
class FlowPoint:
    mode: ModeId
    eps: float
    F: float
    extrapolated: bool


def flow_modes(kind: str, F_max: float, eps_grid: Sequence[float]) -> list[ModeId]:
    """Modes whose curve dips to ``F_max`` or below anywhere on ``eps_grid``.

    Every exact or perturbative curve is monotone in eps, so checking the two
    grid ends suffices.
    """
    eps = np.asarray(eps_grid, dtype=float)
    modes = set(enumerate_modes(kind, F_max, float(eps.min())))
    modes.update(enumerate_modes(kind, F_max, float(eps.max())))
    return sorted(modes, key=ModeId.sort_key)


def flow_sweep(modes: Iterable[ModeId], eps_grid: Sequence[float],
               model: SpectralModel) -> list[FlowPoint]:
    """Table of ``(mode, eps, F)`` in mode-major, eps-minor order."""
    grid = [float(e) for e in eps_grid]
    points = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NodalLimitWarning)
        for mode in modes:
            for eps in grid:
                value = evaluate_F(mode, eps, model)
                points.append(FlowPoint(mode, eps, value.F, value.extrapolated))
    return points


@dataclass(frozen=True)
class ChartRow:
    r: float
    R: float
    eps: float
    rank: int
    entry: SpectrumEntry
    nodal: bool


@dataclass(frozen=True)
class ModeChart:
    rows: tuple[ChartRow, ...]
    rejected: int


def mode_chart(r_values: Sequence[float], R_values: Sequence[float],
               model: SpectralModel = TorusPerturbative(), f_max: Optional[float] = None,
               count: int = 7, c_medium: float = C0) -> ModeChart:
    """Lowest ``count`` frequencies on an ``(r, R)`` grid.

    Grid points with ``R < r`` lie in the forbidden region and are dropped
    (counted in ``rejected``); a nodal row ``R = r`` is always included.  When
    ``f_max`` is given, entries above it are omitted as well.
    """
    if model.kind != "torus":
        raise DomainError("mode charts need a toroidal model")
    allowed = {float(r): [float(R) for R in R_values if R >= r] for r in r_values}
    rejected = len(r_values) * len(R_values) - sum(len(v) for v in allowed.values())
    if not any(allowed.values()):
        raise ForbiddenRegionError("every requested (r, R) pair lies in the forbidden region r > R")
    rows = []
    for r, valid in allowed.items():
        grid = sorted(set(valid) | {r})
        for R in grid:
            torus = Torus(r, R)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NodalLimitWarning)
                spectrum = lowest_levels(torus, model, count, c_medium)
            for rank, entry in enumerate(spectrum.entries, start=1):
                if f_max is not None and entry.f > f_max:
                    break
                eps = NODAL_EPSILON if torus.nodal else torus.aspect_ratio
                rows.append(ChartRow(r, R, eps, rank, entry, torus.nodal))
    return ModeChart(tuple(rows), rejected)
