"""One-parameter attractor sweeps, period detection and Lyapunov exponents."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .model import (
    OVERFLOW_LIMIT,
    PARAM_NAMES,
    MapCoefficients,
    ModelParams,
    State,
    derive_coefficients,
)
from .stability import fixed_points

PERIOD_TOL = 1e-6
MAX_PERIOD = 64
CHAOS_THRESHOLD = 0.01
# tangent-space averaging length used by sweeps, on top of the transient
LYAPUNOV_STEPS = 4500


class UsageError(ValueError):
    """Bad sweep configuration or arguments."""


class LyapunovDiverged(ArithmeticError):
    def __init__(self, step: int):
        super().__init__(f"orbit diverged at step {step}")
        self.step = step


class CrossingError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    parameter: str
    lo: float
    hi: float
    points: int
    transient: int = 500
    samples: int = 200
    initial: State = State(0.5, 0.5)
    divergence_threshold: float = 1e6
    lyapunov: bool = False

    def __post_init__(self):
        if self.parameter not in PARAM_NAMES:
            raise UsageError(
                f"unknown parameter {self.parameter!r}; valid names: {', '.join(PARAM_NAMES)}"
            )
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
            raise UsageError(f"need finite lo < hi, got [{self.lo}, {self.hi}]")
        if self.points < 2:
            raise UsageError("points must be >= 2")
        if self.transient < 1 or self.samples < 1:
            raise UsageError("transient and samples must be >= 1")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)


@dataclass(frozen=True)
class SweepResult:
    value: float
    xs: np.ndarray = field(repr=False)
    ys: np.ndarray = field(repr=False)
    period: int | None
    lyapunov: float | None
    diverged: bool

    @property
    def samples(self) -> list[State]:
        return [State(float(x), float(y)) for x, y in zip(self.xs, self.ys)]

    @property
    def chaotic(self) -> bool:
        return (
            not self.diverged
            and self.period is None
            and self.lyapunov is not None
            and self.lyapunov > CHAOS_THRESHOLD
        )


def _as_array(samples) -> np.ndarray:
    if isinstance(samples, np.ndarray):
        return samples.reshape(-1, 2)
    return np.array([[s.x, s.y] if isinstance(s, State) else s for s in samples], dtype=float).reshape(-1, 2)


def detect_period(samples, tol: float = PERIOD_TOL, p_max: int = MAX_PERIOD) -> int | None:
    """Smallest p <= p_max with max_k |s[k+p] - s[k]| < tol, else None (aperiodic)."""
    s = _as_array(samples)
    if len(s) < 2 * p_max:
        raise UsageError(f"need at least {2 * p_max} samples, got {len(s)}")
    for p in range(1, p_max + 1):
        if np.max(np.abs(s[p:] - s[:-p])) < tol:
            return p
    return None


def lyapunov_max(
    coeffs: MapCoefficients,
    initial: State = State(0.5, 0.5),
    iterations: int = 5000,
    transient: int = 500,
    limit: float = OVERFLOW_LIMIT,
) -> float:
    """Largest Lyapunov exponent (natural log per step).

    A unit tangent vector is pushed through the Jacobian along the orbit and
    renormalised every step; log growth is averaged after ``transient``.
    """
    if iterations <= transient:
        raise UsageError("iterations must exceed transient")
    value, diverged_at = kernels.lyapunov(
        coeffs.a_x, coeffs.c_x, coeffs.a_y, coeffs.c_y,
        float(initial.x), float(initial.y), int(iterations), int(transient), float(limit),
    )
    if diverged_at >= 0:
        raise LyapunovDiverged(diverged_at)
    return value


def _evaluate(params: ModelParams, config: SweepConfig, value: float) -> SweepResult:
    coeffs = derive_coefficients(params.with_(**{config.parameter: float(value)}))
    s0 = config.initial
    xs, ys, diverged_at = kernels.attractor(
        coeffs.a_x, coeffs.c_x, coeffs.a_y, coeffs.c_y, float(s0.x), float(s0.y),
        config.transient, config.samples, config.divergence_threshold,
    )
    if diverged_at >= 0:
        empty = np.empty(0)
        return SweepResult(float(value), empty, empty, None, None, True)
    pts = np.column_stack([xs, ys])
    period = detect_period(pts, p_max=min(MAX_PERIOD, len(pts) // 2))
    lyap = None
    if config.lyapunov:
        try:
            lyap = lyapunov_max(
                coeffs, s0, config.transient + LYAPUNOV_STEPS, config.transient,
                config.divergence_threshold,
            )
        except LyapunovDiverged:
            return SweepResult(float(value), xs, ys, None, None, True)
    return SweepResult(float(value), xs, ys, period, lyap, False)


def sweep(params: ModelParams, config: SweepConfig) -> list[SweepResult]:
    """Characterise the long-run attractor at each grid value, in grid order.

    Parameter values outside [0, 1] are swept as given.
    """
    return [_evaluate(params, config, v) for v in config.grid()]


def _attracting_point(params: ModelParams, parameter: str, value: float, transient: int) -> State:
    p = params.with_(**{parameter: value})
    config = SweepConfig(parameter, value - 1.0, value + 1.0, 2, transient=transient, samples=2 * MAX_PERIOD)
    res = _evaluate(params, config, value)
    if res.diverged or res.period != 1:
        raise CrossingError(f"attractor at {parameter}={value!r} is not a fixed point")
    tail = State(float(res.xs[-1]), float(res.ys[-1]))
    # snap to the exact fixed point the orbit converged onto
    candidates = fixed_points(p, cross_check=False)
    best = min(candidates, key=lambda f: f.location.distance(tail), default=None)
    if best is None or best.location.distance(tail) > 1e-5:
        return tail
    return best.location


def crossing_point(
    params: ModelParams,
    parameter: str,
    bracket: tuple[float, float],
    tol: float = 1e-6,
    transient: int = 500,
) -> float:
    """Parameter value where the attracting fixed point has x* = y*.

    Bisects g(v) = x*(v) - y*(v) until the bracket is narrower than ``tol``.
    """
    if parameter not in PARAM_NAMES:
        raise UsageError(f"unknown parameter {parameter!r}")
    lo, hi = float(bracket[0]), float(bracket[1])

    def g(v: float) -> float:
        s = _attracting_point(params, parameter, v, transient)
        return s.x - s.y

    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if (glo > 0.0) == (ghi > 0.0):
        raise CrossingError(f"no crossing in bracket [{lo}, {hi}]")
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            return mid
        if (gm > 0.0) == (glo > 0.0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)
