"""Coupled logistic conflict map with stability, bifurcation and game analysis."""
__version__ = "0.1.0"

from ._backend import BACKEND
from .games import (
    BimatrixGame,
    DominanceFact,
    Equilibrium,
    behavior_label,
    correspondence_report,
    dominant_strategies,
    hawk_dove_first_injurer,
    hawk_dove_symmetric,
    mixed_nash_support_enum,
    pure_nash,
)
from .model import (
    PARAM_NAMES,
    MapCoefficients,
    ModelParams,
    Orbit,
    OrbitDiverged,
    State,
    ValidationError,
    derive_coefficients,
    jacobian_at,
    orbit,
    step,
    validate_params,
)
from .roots import real_roots
from .scan import SweepConfig, SweepResult, crossing_point, detect_period, lyapunov_max, sweep
from .scenarios import PRESETS, Scenario, parse_scenario, serialize_scenario
from .stability import (
    FixedPoint,
    FixedPointReport,
    StabilityVerdict,
    analyze,
    classify,
    eigenvalues_2x2,
    fixed_points,
    quartic_coefficients,
    settle_time,
)
