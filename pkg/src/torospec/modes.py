"""Mode labels, cavity geometries and universal mode functions.

A universal mode function ``F(eps) = f * d / c`` depends only on the cavity
shape.  Cylinders have the closed form

    F^2 = z^2 + m^2 (eps/2)^2,          eps = d/h

with ``z`` a zero of ``J_k`` (TM) or ``J_k'`` (TE) divided by pi.  Tori use the
second-order expansion

    F^2 = z^2 + alpha (eps/pi)^2,       eps = r/R

with ``alpha = m^2 - P/4`` for TE modes of parity ``P`` and ``alpha = m^2 + 3/4``
for TM modes, or a user supplied fit table.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Literal, Mapping, NamedTuple, Union

import numpy as np
from scipy.constants import c as C0
from scipy.interpolate import PchipInterpolator

from .errors import ClassificationError, DomainError, ForbiddenRegionError, MissingModeError
from .special_functions import zero_over_pi

__all__ = [
    "C0", "ModeId", "Cuboid", "Cylinder", "Spheroid", "Torus", "Geometry",
    "CylinderExact", "TorusPerturbative", "TorusFitted", "SpectralModel", "FitTable",
    "NodalLimitWarning", "NODAL_EPSILON", "PERTURBATIVE_VALIDITY",
    "cylinder_F", "torus_F", "evaluate_F", "dF_deps", "alpha", "asymptote",
    "physical_frequency", "enumerate_modes", "multiplicity", "check_mode",
]

NODAL_EPSILON = 0.999
PERTURBATIVE_VALIDITY = 0.6

_PARITY_ORDER = {1: 0, -1: 1, 0: 2}


class NodalLimitWarning(UserWarning):
    """An exactly nodal torus (r = R) was evaluated slightly inside the limit."""


@dataclass(frozen=True)
class ModeId:
    """Resonance label ``family^parity_{k n m}``.

    ``parity`` is ``+1``/``-1`` for toroidal TE modes and ``0`` otherwise.
    ``k`` is the poloidal (torus) or azimuthal (cylinder) index, ``n`` the
    radial index and ``m`` the toroidal (torus) or axial (cylinder) index.
    """

    family: Literal["TE", "TM"]
    parity: int
    k: int
    n: int
    m: int

    def __post_init__(self):
        if self.family not in ("TE", "TM"):
            raise ClassificationError(f"family must be TE or TM, got {self.family!r}")
        if self.parity not in (-1, 0, 1):
            raise ClassificationError(f"parity must be +1, -1 or 0, got {self.parity!r}")
        for name, low in (("k", 0), ("n", 1), ("m", 0)):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < low:
                raise ClassificationError(f"{name} must be an integer >= {low}, got {value!r}")
            object.__setattr__(self, name, int(value))

    @classmethod
    def te(cls, k: int, n: int, m: int, parity: int = 0) -> "ModeId":
        return cls("TE", parity, k, n, m)

    @classmethod
    def tm(cls, k: int, n: int, m: int) -> "ModeId":
        return cls("TM", 0, k, n, m)

    @classmethod
    def parse(cls, text: str) -> "ModeId":
        """Parse ``FAMILY[+|-]:k:n:m``, e.g. ``TE+:1:1:0`` or ``TM:0:1:0``."""
        try:
            head, k, n, m = text.strip().split(":")
            family, sign = head[:2].upper(), head[2:]
            parity = {"": 0, "+": 1, "-": -1, "+1": 1, "-1": -1}[sign]
            return cls(family, parity, int(k), int(n), int(m))
        except (ValueError, KeyError) as exc:
            raise ClassificationError(f"cannot parse mode label {text!r}") from exc

    @property
    def sign(self) -> str:
        return {1: "+", -1: "-", 0: ""}[self.parity]

    @property
    def label(self) -> str:
        if max(self.k, self.n, self.m) < 10:
            return f"{self.family}{self.sign}{self.k}{self.n}{self.m}"
        return f"{self.family}{self.sign}_{self.k},{self.n},{self.m}"

    def sort_key(self) -> tuple:
        return (self.family, _PARITY_ORDER[self.parity], self.k, self.n, self.m)

    def __str__(self):
        return self.label


def _positive(**lengths):
    for name, value in lengths.items():
        if not (isinstance(value, (int, float, np.floating)) and math.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be a positive finite length, got {value!r}")


@dataclass(frozen=True)
class Cuboid:
    a: float
    b: float
    c: float
    kind = "cuboid"

    def __post_init__(self):
        _positive(a=self.a, b=self.b, c=self.c)

    @property
    def aspect_ratio(self) -> float:
        return self.c / self.a

    @property
    def volume(self) -> float:
        return self.a * self.b * self.c

    @property
    def area(self) -> float:
        return 2.0 * (self.a * self.b + self.b * self.c + self.c * self.a)


@dataclass(frozen=True)
class Cylinder:
    """Closed circular cylinder of diameter ``d`` and height ``h``."""

    d: float
    h: float
    kind = "cylinder"

    def __post_init__(self):
        _positive(d=self.d, h=self.h)

    @property
    def aspect_ratio(self) -> float:
        return self.d / self.h

    @property
    def diameter(self) -> float:
        return self.d

    @property
    def volume(self) -> float:
        return math.pi * self.d**2 * self.h / 4.0

    @property
    def area(self) -> float:
        return math.pi * self.d**2 / 2.0 + math.pi * self.d * self.h


@dataclass(frozen=True)
class Spheroid:
    """Spheroid with equatorial radius ``a`` and polar radius ``c``."""

    a: float
    c: float
    kind = "spheroid"
    _THOMSEN_P = 1.6075

    def __post_init__(self):
        _positive(a=self.a, c=self.c)

    @property
    def aspect_ratio(self) -> float:
        return self.c / self.a

    @property
    def volume(self) -> float:
        return 4.0 * math.pi * self.a**2 * self.c / 3.0

    @property
    def area(self) -> float:
        # Knud Thomsen's approximation, relative error below 1.1 %
        p = self._THOMSEN_P
        ap, cp = self.a**p, self.c**p
        return 4.0 * math.pi * ((ap * ap + 2.0 * ap * cp) / 3.0) ** (1.0 / p)


@dataclass(frozen=True)
class Torus:
    """Ring torus with minor radius ``r`` and major radius ``R`` (``r <= R``)."""

    r: float
    R: float
    kind = "torus"

    def __post_init__(self):
        _positive(r=self.r, R=self.R)
        if self.r > self.R:
            raise ForbiddenRegionError(
                f"forbidden region: minor radius r = {self.r:g} m exceeds major radius R = {self.R:g} m"
            )

    @property
    def aspect_ratio(self) -> float:
        return self.r / self.R

    @property
    def nodal(self) -> bool:
        return self.r == self.R

    @property
    def diameter(self) -> float:
        return 2.0 * self.r

    @property
    def volume(self) -> float:
        return 2.0 * math.pi**2 * self.r**2 * self.R

    @property
    def area(self) -> float:
        return 4.0 * math.pi**2 * self.r * self.R


Geometry = Union[Cuboid, Cylinder, Spheroid, Torus]


@dataclass(frozen=True, eq=False)
class FitTable:
    """Fitted toroidal mode functions.

    ``polynomial`` rows hold ``(c0, c2, c4)`` with ``F^2 = c0 + c2 eps^2 + c4 eps^4``;
    ``sampled`` rows hold strictly increasing ``eps`` and positive ``F`` arrays,
    interpolated with a monotone piecewise cubic.
    """

    mode: Literal["polynomial", "sampled"]
    rows: Mapping[ModeId, tuple]
    _interpolants: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.mode not in ("polynomial", "sampled"):
            raise DomainError(f"unknown fit table mode {self.mode!r}")
        rows = {}
        for mode_id, row in self.rows.items():
            check_mode(mode_id, "torus")
            if self.mode == "polynomial":
                c0, c2, c4 = (float(v) for v in row)
                if not c0 > 0:
                    raise DomainError(f"{mode_id}: c0 must be positive")
                rows[mode_id] = (c0, c2, c4)
            else:
                eps, values = (np.asarray(v, dtype=float) for v in row)
                if eps.ndim != 1 or eps.shape != values.shape or eps.size < 2:
                    raise DomainError(f"{mode_id}: need at least two (eps, F) samples")
                if np.any(np.diff(eps) <= 0):
                    raise DomainError(f"{mode_id}: eps samples must be strictly increasing")
                if np.any(values <= 0):
                    raise DomainError(f"{mode_id}: F samples must be positive")
                rows[mode_id] = (eps, values)
                self._interpolants[mode_id] = PchipInterpolator(eps, values, extrapolate=True)
        object.__setattr__(self, "rows", MappingProxyType(rows))

    @property
    def modes(self) -> list[ModeId]:
        return sorted(self.rows, key=ModeId.sort_key)

    def _row(self, mode_id):
        try:
            return self.rows[mode_id]
        except KeyError:
            raise MissingModeError(f"fit table has no row for {mode_id}") from None

    def evaluate(self, mode_id: ModeId, eps: float) -> tuple[float, bool]:
        row = self._row(mode_id)
        if self.mode == "polynomial":
            c0, c2, c4 = row
            e2 = eps * eps
            return math.sqrt(c0 + c2 * e2 + c4 * e2 * e2), False
        grid = row[0]
        return float(self._interpolants[mode_id](eps)), not grid[0] <= eps <= grid[-1]

    def derivative(self, mode_id: ModeId, eps: float) -> float:
        row = self._row(mode_id)
        if self.mode == "polynomial":
            c0, c2, c4 = row
            value, _ = self.evaluate(mode_id, eps)
            return (c2 * eps + 2.0 * c4 * eps**3) / value
        return float(self._interpolants[mode_id].derivative()(eps))


@dataclass(frozen=True)
class CylinderExact:
    kind = "cylinder"
    name = "exact"


@dataclass(frozen=True)
class TorusPerturbative:
    kind = "torus"
    name = "perturbative"


@dataclass(frozen=True, eq=False)
class TorusFitted:
    table: FitTable
    kind = "torus"
    name = "fitted"


SpectralModel = Union[CylinderExact, TorusPerturbative, TorusFitted]


class Evaluation(NamedTuple):
    F: float
    extrapolated: bool


def check_mode(mode: ModeId, kind: str) -> None:
    """Raise :class:`ClassificationError` unless ``mode`` is legal in a ``kind`` cavity."""
    if kind == "torus":
        if mode.family == "TE":
            if mode.k < 1:
                raise ClassificationError(f"toroidal TE modes need k >= 1, got {mode}")
            if mode.parity == 0:
                raise ClassificationError(f"toroidal TE modes carry parity +1 or -1, got {mode}")
        elif mode.parity != 0:
            raise ClassificationError(f"TM modes are not parity eigenmodes, got {mode}")
    elif kind == "cylinder":
        if mode.parity != 0:
            raise ClassificationError(f"cylindrical modes carry no parity, got {mode}")
        if mode.family == "TE" and (mode.k < 1 or mode.m < 1):
            raise ClassificationError(f"cylindrical TE modes need k >= 1 and m >= 1, got {mode}")
    else:
        raise DomainError(f"no mode spectrum for cavity kind {kind!r}")


def asymptote(mode: ModeId) -> float:
    """``eps -> 0`` limit of ``F``: ``z'_{kn}`` for TE, ``z_{kn}`` for TM."""
    return zero_over_pi(mode.k, mode.n, prime=mode.family == "TE")


def alpha(mode: ModeId) -> float:
    """Second-order toroidal coefficient of ``(eps/pi)^2``."""
    if mode.family == "TE":
        return mode.m**2 - mode.parity / 4.0
    return mode.m**2 + 0.75


def multiplicity(mode: ModeId, kind: str) -> int:
    """Degeneracy of a listed level: ``+-m`` for tori, ``+-k`` (cos/sin) for cylinders."""
    index = mode.m if kind == "torus" else mode.k
    return 2 if index >= 1 else 1


def _torus_epsilon(epsilon: float) -> float:
    if not 0.0 < epsilon <= 1.0 + 1e-12:
        if epsilon > 1.0:
            raise ForbiddenRegionError(f"forbidden region: torus aspect ratio {epsilon:g} > 1")
        raise DomainError(f"torus aspect ratio must be positive, got {epsilon!r}")
    if epsilon > 1.0 - 1e-12:
        warnings.warn(
            f"nodal torus evaluated at eps = {NODAL_EPSILON}", NodalLimitWarning, stacklevel=3
        )
        return NODAL_EPSILON
    return epsilon


def cylinder_F(mode: ModeId, epsilon: float) -> float:
    """Exact cylindrical mode function at ``eps = d/h``."""
    check_mode(mode, "cylinder")
    if not epsilon > 0:
        raise DomainError(f"cylinder aspect ratio must be positive, got {epsilon!r}")
    z = asymptote(mode)
    return math.sqrt(z * z + (mode.m * epsilon / 2.0) ** 2)


def _perturbative(mode: ModeId, epsilon: float) -> float:
    z = asymptote(mode)
    return math.sqrt(z * z + alpha(mode) * (epsilon / math.pi) ** 2)


def evaluate_F(mode: ModeId, epsilon: float, model: SpectralModel) -> Evaluation:
    """Mode function value plus a flag for evaluations outside the model's trusted range."""
    if isinstance(model, CylinderExact):
        return Evaluation(cylinder_F(mode, epsilon), False)
    check_mode(mode, "torus")
    eps = _torus_epsilon(epsilon)
    if isinstance(model, TorusPerturbative):
        return Evaluation(_perturbative(mode, eps), eps > PERTURBATIVE_VALIDITY)
    if isinstance(model, TorusFitted):
        return Evaluation(*model.table.evaluate(mode, eps))
    raise DomainError(f"unknown spectral model {model!r}")


def torus_F(mode: ModeId, epsilon: float, model: SpectralModel = TorusPerturbative()) -> float:
    """Toroidal mode function at ``eps = r/R``; ``eps = 1`` is evaluated at 0.999."""
    if isinstance(model, CylinderExact):
        raise DomainError("torus_F needs a toroidal spectral model")
    return evaluate_F(mode, epsilon, model).F


def dF_deps(mode: ModeId, epsilon: float, model: SpectralModel) -> float:
    """Derivative of the mode function with respect to the aspect ratio."""
    if isinstance(model, CylinderExact):
        return mode.m**2 * epsilon / 4.0 / cylinder_F(mode, epsilon)
    check_mode(mode, "torus")
    eps = _torus_epsilon(epsilon)
    if isinstance(model, TorusFitted):
        return model.table.derivative(mode, eps)
    return alpha(mode) * eps / math.pi**2 / _perturbative(mode, eps)


def physical_frequency(F: float, geometry: Geometry, c_medium: float = C0) -> float:
    """Frequency in Hz, ``f = F c / d`` with ``d`` the (minor) diameter."""
    try:
        d = geometry.diameter
    except AttributeError:
        raise DomainError(f"{geometry.kind} geometry has no mode-function scale") from None
    return F * c_medium / d


def enumerate_modes(kind: Literal["cylinder", "torus"], F_max: float, epsilon: float) -> list[ModeId]:
    """Every legal mode with ``F <= F_max`` at ``epsilon`` (exact or perturbative law).

    Complete because ``F^2 >= z^2 - (eps/pi)^2 / 4`` bounds the Bessel zeros,
    which increase in both ``k`` and ``n``, and ``F`` increases with ``m``.
    """
    if not F_max > 0:
        raise DomainError(f"F_max must be positive, got {F_max!r}")
    if kind == "cylinder":
        model: SpectralModel = CylinderExact()
        z_bound = F_max
        parities = {"TE": (0,), "TM": (0,)}
        m_start = {"TE": 1, "TM": 0}
    elif kind == "torus":
        model = TorusPerturbative()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NodalLimitWarning)
            eps = _torus_epsilon(epsilon)
        z_bound = math.sqrt(F_max**2 + 0.25 * (eps / math.pi) ** 2)
        parities = {"TE": (1, -1), "TM": (0,)}
        m_start = {"TE": 0, "TM": 0}
    else:
        raise DomainError(f"no mode spectrum for cavity kind {kind!r}")

    found = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NodalLimitWarning)
        for family in ("TE", "TM"):
            prime = family == "TE"
            k = 1 if prime else 0
            while zero_over_pi(k, 1, prime) <= z_bound:
                n = 1
                while zero_over_pi(k, n, prime) <= z_bound:
                    for parity in parities[family]:
                        m = m_start[family]
                        while True:
                            mode = ModeId(family, parity, k, n, m)
                            if evaluate_F(mode, epsilon, model).F > F_max:
                                break
                            found.append(mode)
                            m += 1
                    n += 1
                k += 1
    return sorted(found, key=ModeId.sort_key)
