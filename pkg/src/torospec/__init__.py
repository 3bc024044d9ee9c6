"""Resonant-mode spectra of cylindrical and toroidal microwave cavities."""

from .calibration import (
    CalibrationResult,
    MeasuredLine,
    MeasuredSpectrum,
    calibrate_minor_radius,
    mean_frequency_shift,
    torus_frequency,
)
from .errors import (
    BesselRangeError,
    CalibrationError,
    ClassificationError,
    ConvergenceError,
    DomainError,
    ForbiddenRegionError,
    InsufficientDataError,
    MissingModeError,
    ModeNotFoundError,
    NumericalError,
    ParseError,
    TorospecError,
)
from .modes import (
    C0,
    Cuboid,
    Cylinder,
    CylinderExact,
    FitTable,
    ModeId,
    NodalLimitWarning,
    Spheroid,
    Torus,
    TorusFitted,
    TorusPerturbative,
    cylinder_F,
    enumerate_modes,
    evaluate_F,
    physical_frequency,
    torus_F,
)
from .quality import (
    MATERIALS,
    Material,
    QualityReport,
    family_comparison,
    photon_lifetime,
    q_ratio,
    quality_report,
    ring_mode_frequency,
    skin_depth,
    surface_resistance,
)
from .special_functions import (
    BesselZeroTable,
    bessel_j,
    bessel_j_prime,
    bessel_prime_zero,
    bessel_zero,
)
from .spectrum import (
    Gaps,
    Spectrum,
    SpectrumEntry,
    build_spectrum,
    cylinder_crossover,
    dark_modes,
    flow_modes,
    flow_sweep,
    gaps,
    ground_state,
    lowest_levels,
    mode_chart,
    mode_rank,
)

__version__ = "0.1.0"
