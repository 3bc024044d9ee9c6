"""Conductor losses and the geometric quality proxy ``V / (delta A)``."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.constants import c as C0
from scipy.constants import epsilon_0, mu_0

from .errors import DomainError
from .modes import Cuboid, Cylinder, Geometry, Spheroid, Torus

#: Intrinsic impedance of vacuum, sqrt(mu_0 / epsilon_0) ~ 376.73 Ohm.
ETA_0 = math.sqrt(mu_0 / epsilon_0)

LIFETIME_Q_VALUES = (1e6, 1e9, 1e11)


@dataclass(frozen=True)
class Material:
    name: str
    sigma: float
    mu: float = mu_0
    eps_r: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0 and self.mu > 0):
            raise DomainError(f"{self.name}: conductivity and permeability must be positive")
        if not self.eps_r >= 1:
            raise DomainError(f"{self.name}: relative permittivity must be >= 1")


# room-temperature handbook conductivities; the cavity filling is vacuum
MATERIALS = {
    "aluminium": Material("aluminium", 3.77e7),
    "copper": Material("copper", 5.8e7),
}
MATERIALS["aluminum"] = MATERIALS["aluminium"]


def _check_frequency(f):
    if not f > 0:
        raise DomainError(f"frequency must be positive, got {f!r}")


def skin_depth(f: float, material: Material) -> float:
    """``delta = sqrt(2 / (omega mu sigma))`` in metres."""
    _check_frequency(f)
    return math.sqrt(2.0 / (2.0 * math.pi * f * material.mu * material.sigma))


def surface_resistance(f: float, material: Material) -> float:
    """Real part of the surface impedance, ``sqrt(omega mu / 2 sigma) = 1/(sigma delta)``."""
    _check_frequency(f)
    return math.sqrt(2.0 * math.pi * f * material.mu / (2.0 * material.sigma))


def q_ratio_for_depth(geometry: Geometry, delta: float) -> float:
    """``V / (delta A)`` for a given penetration length ``delta``.

    Any length may be supplied, e.g. a London penetration depth.
    """
    if not delta > 0:
        raise DomainError("penetration depth must be positive")
    return geometry.volume / (delta * geometry.area)


def q_ratio(geometry: Geometry, f: float, material: Material) -> float:
    """Rough quality estimate: cavity volume over skin volume."""
    return q_ratio_for_depth(geometry, skin_depth(f, material))


def photon_lifetime(Q: float, f: float) -> float:
    """``tau = Q / (2 pi f)`` in seconds."""
    if not (Q > 0 and f > 0):
        raise DomainError("Q and f must be positive")
    return Q / (2.0 * math.pi * f)


def ring_mode_frequency(n: int, R: float, eps_r: float = 1.0, c0: float = C0) -> float:
    """``f_n = c0 n / (2 pi eps_r R)`` of the n-th ring mode of radius ``R``."""
    if n < 1:
        raise DomainError("ring mode index must be >= 1")
    if not (R > 0 and eps_r >= 1):
        raise DomainError("need R > 0 and eps_r >= 1")
    return c0 * n / (2.0 * math.pi * eps_r * R)


@dataclass(frozen=True)
class QualityReport:
    geometry: Geometry
    frequency: float
    material: Material
    skin_depth: float
    surface_resistance: float
    q_ratio: float
    lifetimes: tuple[tuple[float, float], ...] = field(default=())


def quality_report(geometry: Geometry, f: float, material: Material,
                   q_values=LIFETIME_Q_VALUES) -> QualityReport:
    delta = skin_depth(f, material)
    return QualityReport(
        geometry, f, material, delta, surface_resistance(f, material),
        q_ratio_for_depth(geometry, delta),
        tuple((float(Q), photon_lifetime(Q, f)) for Q in q_values),
    )


FAMILY_NORMALISATION = (
    "families compared at equal characteristic radius r and equal skin depth: "
    "cube side 2r, cylinder d = h = 2r, sphere radius r, torus minor radius r (any R >= r)"
)


def family_comparison(r: float, delta: float, R: float | None = None) -> dict[str, float]:
    """``V / (delta A)`` of four cavity families sharing radius ``r`` and depth ``delta``."""
    shapes = {
        "cuboid": Cuboid(2 * r, 2 * r, 2 * r),
        "cylinder": Cylinder(2 * r, 2 * r),
        "spheroid": Spheroid(r, r),
        "torus": Torus(r, r if R is None else R),
    }
    return {name: q_ratio_for_depth(shape, delta) for name, shape in shapes.items()}


def characteristic_radius(geometry: Geometry) -> float:
    if isinstance(geometry, Torus):
        return geometry.r
    if isinstance(geometry, Cylinder):
        return geometry.d / 2
    if isinstance(geometry, Spheroid):
        return geometry.a
    return min(geometry.a, geometry.b, geometry.c) / 2
