"""Machining-error calibration of toroidal cavities against measured lines."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np
from scipy.optimize import brentq, least_squares

from .errors import CalibrationError, DomainError, InsufficientDataError
from .modes import (
    C0,
    ModeId,
    NodalLimitWarning,
    SpectralModel,
    Torus,
    TorusPerturbative,
    check_mode,
    dF_deps,
    evaluate_F,
)
from .spectrum import build_spectrum

MATCH_WINDOW = 100e6
SEARCH_BOUND = 0.5e-3
MIN_LINES = 3


@dataclass(frozen=True)
class MeasuredLine:
    label: Optional[ModeId]
    f: float


@dataclass(frozen=True)
class MeasuredSpectrum:
    """Measured resonances, optionally labelled, plus free-text source metadata."""

    lines: tuple[MeasuredLine, ...]
    source: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        lines = tuple(self.lines)
        object.__setattr__(self, "lines", lines)
        for line in lines:
            if not (math.isfinite(line.f) and line.f > 0):
                raise DomainError(f"measured frequency must be positive, got {line.f!r}")
        unlabeled = [line.f for line in lines if line.label is None]
        if any(b <= a for a, b in zip(unlabeled, unlabeled[1:])):
            raise DomainError("unlabeled measured frequencies must be strictly increasing")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[Optional[ModeId], float]], **source) -> "MeasuredSpectrum":
        return cls(tuple(MeasuredLine(label, float(f)) for label, f in pairs), source)

    def __len__(self):
        return len(self.lines)


def torus_frequency(mode: ModeId, r: float, R: float, model: SpectralModel = TorusPerturbative(),
                    c_medium: float = C0) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NodalLimitWarning)
        return evaluate_F(mode, r / R, model).F * c_medium / (2.0 * r)


def _frequency_gradient(mode, r, R, model, c_medium):
    """(df/dr, df/dR) of ``f = F(r/R) c / 2r``."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NodalLimitWarning)
        eps = r / R
        F = evaluate_F(mode, eps, model).F
        slope = dF_deps(mode, eps, model)
    scale = c_medium / (2.0 * r)
    return scale * (slope / R - F / r), -scale * slope * r / R**2


def mean_frequency_shift(nominal: Torus, delta_r: float, f_max: float,
                         model: SpectralModel = TorusPerturbative(), c_medium: float = C0) -> float:
    """Average change in Hz of all modes below ``f_max`` when ``r`` grows by ``delta_r``."""
    spectrum = build_spectrum(nominal, model, f_max, c_medium)
    if not spectrum.entries:
        raise DomainError("no modes below f_max")
    shifted = [torus_frequency(e.mode, nominal.r + delta_r, nominal.R, model, c_medium) - e.f
               for e in spectrum.entries]
    return float(np.mean(shifted))


def match_lines(measured: MeasuredSpectrum, nominal: Torus,
                model: SpectralModel = TorusPerturbative(), window: float = MATCH_WINDOW,
                c_medium: float = C0) -> list[tuple[ModeId, float]]:
    """Pair measured lines with model modes.

    Labelled lines keep their label.  Unlabelled lines are assigned greedily,
    closest pair first, to unused model lines within ``window`` Hz of the
    nominal geometry's spectrum; lines with no partner are dropped.
    """
    pairs = []
    used = set()
    for line in measured.lines:
        if line.label is not None:
            check_mode(line.label, "torus")
            pairs.append((line.label, line.f))
            used.add(line.label)
    free = [line.f for line in measured.lines if line.label is None]
    if free:
        spectrum = build_spectrum(nominal, model, max(free) + window, c_medium)
        candidates = sorted(
            (abs(e.f - f), i, e.mode)
            for i, f in enumerate(free)
            for e in spectrum.entries
            if abs(e.f - f) <= window and e.mode not in used
        )
        taken = set()
        for _, i, mode in candidates:
            if i in taken or mode in used:
                continue
            taken.add(i)
            used.add(mode)
            pairs.append((mode, free[i]))
    return pairs


@dataclass(frozen=True)
class CalibrationResult:
    nominal: Torus
    delta_r: float
    delta_R: float
    modes: tuple[ModeId, ...]
    measured: tuple[float, ...]
    fitted: tuple[float, ...]
    mean_shift: float

    @property
    def residuals(self) -> tuple[float, ...]:
        """Model at the calibrated geometry minus measurement, Hz."""
        return tuple(f - m for f, m in zip(self.fitted, self.measured))

    @property
    def geometry(self) -> Torus:
        return Torus(self.nominal.r + self.delta_r, self.nominal.R + self.delta_R)


def calibrate_minor_radius(measured: MeasuredSpectrum, nominal: Torus,
                           model: SpectralModel = TorusPerturbative(), *,
                           fit_major: bool = False, window: float = MATCH_WINDOW,
                           bound: float = SEARCH_BOUND, c_medium: float = C0) -> CalibrationResult:
    """Least-squares minor-radius offset explaining a measured spectrum.

    Minimises ``sum (f_model(r + dr) - f_measured)^2`` over ``|dr| <= bound``
    by solving the normal equation with a bracketing root finder.  With
    ``fit_major`` the major radius gets its own offset as well.

    Raises
    ------
    InsufficientDataError
        Fewer than three lines could be matched to model modes.
    CalibrationError
        The objective has no stationary minimum inside the search window.
    """
    if not isinstance(nominal, Torus):
        raise DomainError("calibration needs a toroidal nominal geometry")
    pairs = match_lines(measured, nominal, model, window, c_medium)
    if len(pairs) < MIN_LINES:
        raise InsufficientDataError(
            f"need at least {MIN_LINES} usable measured lines, got {len(pairs)}"
        )
    modes = tuple(mode for mode, _ in pairs)
    targets = np.array([f for _, f in pairs])
    r0, R0 = nominal.r, nominal.R

    def model_freqs(r, R):
        return np.array([torus_frequency(mode, r, R, model, c_medium) for mode in modes])

    if fit_major:
        def residual(x):
            return model_freqs(r0 + x[0], R0 + x[1]) - targets

        def jacobian(x):
            return np.array([_frequency_gradient(mode, r0 + x[0], R0 + x[1], model, c_medium)
                             for mode in modes])

        lo, hi = max(-bound, -0.5 * r0), bound
        fit = least_squares(residual, np.zeros(2), jac=jacobian,
                            bounds=([lo, -bound], [hi, bound]), x_scale=bound,
                            xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if not fit.success or (r0 + fit.x[0]) > (R0 + fit.x[1]):
            raise CalibrationError(f"two-parameter fit failed: {fit.message}")
        delta_r, delta_R = (float(v) for v in fit.x)
    else:
        def normal_equation(dr):
            r = r0 + dr
            grads = np.array([_frequency_gradient(mode, r, R0, model, c_medium)[0] for mode in modes])
            return float(np.dot(model_freqs(r, R0) - targets, grads))

        lo, hi = max(-bound, -0.5 * r0), min(bound, R0 - r0)
        g_lo, g_hi = normal_equation(lo), normal_equation(hi)
        if not (g_lo < 0 < g_hi):
            if g_lo == 0 or g_hi == 0:
                delta_r = lo if g_lo == 0 else hi
            else:
                raise CalibrationError(
                    f"no least-squares minimum for the minor-radius offset within "
                    f"[{lo * 1e3:g}, {hi * 1e3:g}] mm"
                )
        else:
            delta_r = brentq(normal_equation, lo, hi, xtol=1e-15, rtol=1e-14, maxiter=200)
        delta_R = 0.0

    fitted = model_freqs(r0 + delta_r, R0 + delta_R)
    mean_shift = float(np.mean(fitted - model_freqs(r0, R0)))
    return CalibrationResult(nominal, float(delta_r), delta_R, modes, tuple(targets.tolist()),
                             tuple(fitted.tolist()), mean_shift)
