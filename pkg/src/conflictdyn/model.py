"""The two-player conflict map and its elementary operations.

Each participant's next strategic behavior is a constant term (strength plus
naval technology) minus a logistic pull from the opponent's current behavior::

    x' = a_x - c_x * 4-scaled logistic(y)      c_x = 4 G (D_y + E_x)
    y' = a_y - c_y * 4-scaled logistic(x)      c_y = 4 (1 - G) (D_x + E_y)

Values are not clamped to [0, 1] unless explicitly requested; several results
of interest (fixed points with a coordinate above 1, negative parameter
sweeps) only exist on the unclamped map.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, fields, replace

import numpy as np

from ._backend import kernels

PARAM_NAMES = ("P_x", "P_y", "TN_x", "TN_y", "G", "D_x", "D_y", "E_x", "E_y")

#: Coordinates beyond this magnitude count as a diverged orbit.
OVERFLOW_LIMIT = 1e12

TIME_UNIT = "hours"


class ValidationError(ValueError):
    """Raised for non-finite inputs or out-of-range parameters in strict mode."""


class OrbitDiverged(ArithmeticError):
    """An orbit left the overflow box.

    ``last_index`` is the index of the last state that was still valid and
    ``orbit`` holds the states up to and including it.
    """

    def __init__(self, last_index: int, orbit: "Orbit"):
        super().__init__(f"orbit diverged after t={last_index}")
        self.last_index = last_index
        self.orbit = orbit


@dataclass(frozen=True)
class ModelParams:
    P_x: float
    P_y: float
    TN_x: float
    TN_y: float
    G: float
    D_x: float
    D_y: float
    E_x: float
    E_y: float

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, numbers.Real):
                raise ValidationError(f"{f.name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ValidationError(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, float(value))

    def with_(self, **changes: float) -> "ModelParams":
        unknown = set(changes) - set(PARAM_NAMES)
        if unknown:
            raise KeyError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        return replace(self, **changes)

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in PARAM_NAMES}

    def swapped(self) -> "ModelParams":
        """Exchange the roles of the two participants (G becomes 1 - G)."""
        return ModelParams(
            P_x=self.P_y, P_y=self.P_x, TN_x=self.TN_y, TN_y=self.TN_x,
            G=1.0 - self.G, D_x=self.D_y, D_y=self.D_x, E_x=self.E_y, E_y=self.E_x,
        )


@dataclass(frozen=True)
class MapCoefficients:
    a_x: float
    c_x: float
    a_y: float
    c_y: float


@dataclass(frozen=True)
class State:
    x: float
    y: float

    def __iter__(self):
        yield self.x
        yield self.y

    def distance(self, other: "State") -> float:
        """Max-norm distance."""
        return max(abs(self.x - other.x), abs(self.y - other.y))


@dataclass(frozen=True)
class Orbit:
    initial: State
    xs: np.ndarray
    ys: np.ndarray
    time_unit: str = TIME_UNIT

    def __len__(self) -> int:
        return len(self.xs)

    def __getitem__(self, t: int) -> State:
        return State(float(self.xs[t]), float(self.ys[t]))

    @property
    def states(self) -> list[State]:
        return [State(float(x), float(y)) for x, y in zip(self.xs, self.ys)]


@dataclass(frozen=True)
class ValidationOutcome:
    accepted: bool
    warnings: tuple[str, ...] = ()
    errors: tuple[str, ...] = ()


def validate_params(params: ModelParams, strict: bool = False) -> ValidationOutcome:
    """Check every field against the intended [0, 1] range.

    Strict mode rejects out-of-range fields; exploration mode accepts them and
    lists them as warnings. Non-finite values never reach this point because
    ``ModelParams`` refuses them on construction.
    """
    out_of_range = tuple(
        f"{name}={value!r} outside [0, 1]"
        for name, value in params.as_dict().items()
        if not 0.0 <= value <= 1.0
    )
    if strict and out_of_range:
        return ValidationOutcome(False, (), out_of_range)
    return ValidationOutcome(True, out_of_range, ())


def derive_coefficients(params: ModelParams) -> MapCoefficients:
    p = params
    return MapCoefficients(
        a_x=p.P_x + p.TN_x,
        c_x=4.0 * p.G * (p.D_y + p.E_x),
        a_y=p.P_y + p.TN_y,
        c_y=4.0 * (1.0 - p.G) * (p.D_x + p.E_y),
    )


def _check_state(s: State) -> None:
    if not (math.isfinite(s.x) and math.isfinite(s.y)):
        raise ValidationError(f"state must be finite, got {s}")


def step(coeffs: MapCoefficients, s: State) -> State:
    _check_state(s)
    c = coeffs
    return State(c.a_x - c.c_x * s.y * (1.0 - s.y), c.a_y - c.c_y * s.x * (1.0 - s.x))


def orbit(
    coeffs: MapCoefficients,
    initial: State = State(0.5, 0.5),
    steps: int = 24,
    clamp: bool = False,
) -> Orbit:
    """Return ``steps + 1`` states starting at ``initial``.

    With ``clamp`` set each coordinate is projected onto [0, 1] after every
    step. Raises ``OrbitDiverged`` when a coordinate exceeds 1e12.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    _check_state(initial)
    c = coeffs
    xs, ys, n = kernels.orbit(
        c.a_x, c.c_x, c.a_y, c.c_y, float(initial.x), float(initial.y),
        int(steps), bool(clamp), OVERFLOW_LIMIT,
    )
    if n < steps + 1:
        raise OrbitDiverged(n - 1, Orbit(initial, xs[:n].copy(), ys[:n].copy()))
    return Orbit(initial, xs, ys)


def jacobian_at(coeffs: MapCoefficients, s: State) -> np.ndarray:
    """Analytic Jacobian; the diagonal is identically zero."""
    _check_state(s)
    return np.array(
        [[0.0, coeffs.c_x * (2.0 * s.y - 1.0)],
         [coeffs.c_y * (2.0 * s.x - 1.0), 0.0]]
    )
