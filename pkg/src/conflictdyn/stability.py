"""Fixed points, Jacobian spectra, stability labels and settle times."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .model import (
    OVERFLOW_LIMIT,
    MapCoefficients,
    ModelParams,
    State,
    derive_coefficients,
    jacobian_at,
    step,
)
from .roots import real_roots

DEFAULT_BOX = ((-2.0, 3.0), (-2.0, 3.0))
RESIDUAL_BAR = 1e-10
DISTINCT_TOL = 1e-8
CROSSCHECK_TOL = 1e-6
NEWTON_GRID = 16

PAPER_LABELS = ("center", "saddle", "node", "spiral", "degenerate")
DISCRETE_LABELS = (
    "stable-node", "stable-spiral", "unstable-node", "unstable-spiral",
    "saddle", "non-hyperbolic",
)


class InternalConsistencyError(RuntimeError):
    """The polynomial and multistart-Newton solvers disagree: a solver bug."""


@dataclass(frozen=True)
class FixedPoint:
    location: State
    residual: float
    admissible: bool


@dataclass(frozen=True)
class StabilityVerdict:
    jacobian: np.ndarray
    trace: float
    determinant: float
    discriminant: float
    eigenvalues: tuple[complex, complex]
    paper_scheme: str
    discrete_scheme: str

    @property
    def spectral_radius(self) -> float:
        return max(abs(v) for v in self.eigenvalues)


@dataclass(frozen=True)
class FixedPointReport:
    fixed_point: FixedPoint
    verdict: StabilityVerdict
    scenario: str = ""


@dataclass(frozen=True)
class SettleResult:
    step: int | None
    diverged: bool = False


def quartic_coefficients(coeffs: MapCoefficients) -> np.ndarray:
    """Ascending coefficients of P(x) whose real roots are fixed-point x values.

    Eliminating y = a_y - c_y u with u = x - x^2 gives
    P(x) = x - a_x + c_x [(a_y - a_y^2) + c_y (2 a_y - 1) u - c_y^2 u^2].
    Trailing zero coefficients are dropped, so decoupled maps give degree 1.
    """
    ax, cx, ay, cy = coeffs.a_x, coeffs.c_x, coeffs.a_y, coeffs.c_y
    u = np.array([0.0, 1.0, -1.0, 0.0, 0.0])
    u2 = np.array([0.0, 0.0, 1.0, -2.0, 1.0])
    p = np.array([-ax + cx * (ay - ay * ay), 1.0, 0.0, 0.0, 0.0])
    p = p + cx * cy * (2.0 * ay - 1.0) * u - cx * cy * cy * u2
    nz = np.flatnonzero(p)
    return p[: nz[-1] + 1]


def _residual(coeffs: MapCoefficients, s: State) -> float:
    return step(coeffs, s).distance(s)


def _newton_polish(coeffs: MapCoefficients, s: State, iterations: int = 6) -> State:
    ax, cx, ay, cy = coeffs.a_x, coeffs.c_x, coeffs.a_y, coeffs.c_y
    best, rbest = s, _residual(coeffs, s)
    x, y = s
    for _ in range(iterations):
        if rbest == 0.0:
            break
        fx = ax - cx * y * (1.0 - y) - x
        fy = ay - cy * x * (1.0 - x) - y
        b = cx * (2.0 * y - 1.0)
        c = cy * (2.0 * x - 1.0)
        det = 1.0 - b * c
        if det == 0.0:
            break
        # solve [[-1, b], [c, -1]] d = -f
        dx = (fx + b * fy) / det
        dy = (fy + c * fx) / det
        x, y = x + dx, y + dy
        cand = State(x, y)
        r = _residual(coeffs, cand)
        if r < rbest:
            best, rbest = cand, r
    return best


def _newton_multistart(coeffs: MapCoefficients, box, grid: int = NEWTON_GRID) -> np.ndarray:
    """Vectorised 2D Newton from a grid x grid lattice of starts; distinct roots in box."""
    ax, cx, ay, cy = coeffs.a_x, coeffs.c_x, coeffs.a_y, coeffs.c_y
    (xlo, xhi), (ylo, yhi) = box
    gx, gy = np.meshgrid(np.linspace(xlo, xhi, grid), np.linspace(ylo, yhi, grid), indexing="ij")
    x, y = gx.ravel().copy(), gy.ravel().copy()
    alive = np.ones(x.size, dtype=bool)
    with np.errstate(all="ignore"):
        for _ in range(200):
            fx = ax - cx * y * (1.0 - y) - x
            fy = ay - cy * x * (1.0 - x) - y
            b = cx * (2.0 * y - 1.0)
            c = cy * (2.0 * x - 1.0)
            det = 1.0 - b * c
            alive &= det != 0.0
            dx = np.where(alive, (fx + b * fy) / np.where(alive, det, 1.0), 0.0)
            dy = np.where(alive, (fy + c * fx) / np.where(alive, det, 1.0), 0.0)
            x, y = x + dx, y + dy
            alive &= np.isfinite(x) & np.isfinite(y) & (np.abs(x) < 1e8) & (np.abs(y) < 1e8)
        fx = ax - cx * y * (1.0 - y) - x
        fy = ay - cy * x * (1.0 - x) - y
        res = np.maximum(np.abs(fx), np.abs(fy))
    ok = alive & (res < 1e-9)
    ok &= (x >= xlo) & (x <= xhi) & (y >= ylo) & (y <= yhi)
    pts = sorted(zip(x[ok].tolist(), y[ok].tolist()))
    distinct: list[tuple[float, float]] = []
    for p in pts:
        if not any(max(abs(p[0] - q[0]), abs(p[1] - q[1])) < CROSSCHECK_TOL for q in distinct):
            distinct.append(p)
    return np.array(distinct).reshape(-1, 2)


def _near_edge(p, box, tol) -> bool:
    (xlo, xhi), (ylo, yhi) = box
    return min(abs(p[0] - xlo), abs(p[0] - xhi), abs(p[1] - ylo), abs(p[1] - yhi)) < tol


def _cross_check(quartic: np.ndarray, newton: np.ndarray, box) -> None:
    for a, b, what in ((quartic, newton, "multistart Newton"), (newton, quartic, "quartic reduction")):
        for p in a:
            if _near_edge(p, box, CROSSCHECK_TOL):
                continue
            if b.size == 0 or np.min(np.max(np.abs(b - p), axis=1)) >= CROSSCHECK_TOL:
                raise InternalConsistencyError(
                    f"fixed point ({p[0]:.12g}, {p[1]:.12g}) not reproduced by {what}"
                )


def fixed_points(
    params: ModelParams | MapCoefficients,
    search_box=DEFAULT_BOX,
    cross_check: bool = True,
) -> list[FixedPoint]:
    """All real fixed points in ``search_box``, sorted by x.

    Roots come from the one-variable quartic; the set is verified against 2D
    Newton iteration from a 16x16 lattice of starts and an
    ``InternalConsistencyError`` is raised if the two disagree.
    """
    coeffs = derive_coefficients(params) if isinstance(params, ModelParams) else params
    (xlo, xhi), (ylo, yhi) = search_box
    found: list[FixedPoint] = []
    for x in real_roots(quartic_coefficients(coeffs), (xlo, xhi)):
        s = State(x, coeffs.a_y - coeffs.c_y * x * (1.0 - x))
        if not ylo <= s.y <= yhi:
            continue
        if _residual(coeffs, s) >= RESIDUAL_BAR:
            s = _newton_polish(coeffs, s)
        r = _residual(coeffs, s)
        if r >= RESIDUAL_BAR:
            raise InternalConsistencyError(f"fixed point {s} has residual {r:.3g}")
        if any(s.distance(f.location) < DISTINCT_TOL for f in found):
            continue
        admissible = 0.0 <= s.x <= 1.0 and 0.0 <= s.y <= 1.0
        found.append(FixedPoint(s, r, admissible))
    found.sort(key=lambda f: f.location.x)
    if cross_check:
        quartic = np.array([[f.location.x, f.location.y] for f in found]).reshape(-1, 2)
        _cross_check(quartic, _newton_multistart(coeffs, search_box), search_box)
    return found


def eigenvalues_2x2(m) -> tuple[complex, complex]:
    """Closed-form roots of lambda^2 - trace lambda + det, largest (re, im) first."""
    m = np.asarray(m, dtype=float)
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    root = cmath.sqrt(tr * tr - 4.0 * det)
    pair = [complex(0.5 * (tr + root)), complex(0.5 * (tr - root))]
    pair.sort(key=lambda z: (z.real, z.imag), reverse=True)
    return pair[0], pair[1]


def classify(m, tol: float = 1e-9) -> StabilityVerdict:
    """Label a 2x2 Jacobian under two schemes.

    ``paper_scheme`` uses the continuous-time trace/determinant rules;
    ``discrete_scheme`` compares eigenvalue moduli with 1, which is what
    governs convergence of an iterated map.
    """
    m = np.array(m, dtype=float)
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    disc = tr * tr - 4.0 * det
    eig = eigenvalues_2x2(m)

    if abs(det) <= tol:
        paper = "degenerate"
    elif det < 0.0:
        paper = "saddle"
    elif disc < 0.0:
        paper = "center" if abs(tr) <= tol else "spiral"
    else:
        paper = "node"

    moduli = [abs(v) for v in eig]
    is_real = all(abs(v.imag) <= tol for v in eig)
    if any(abs(r - 1.0) <= tol for r in moduli):
        discrete = "non-hyperbolic"
    elif all(r < 1.0 for r in moduli):
        discrete = "stable-node" if is_real else "stable-spiral"
    elif all(r > 1.0 for r in moduli):
        discrete = "unstable-node" if is_real else "unstable-spiral"
    else:
        discrete = "saddle"
    m.setflags(write=False)
    return StabilityVerdict(m, float(tr), float(det), float(disc), eig, paper, discrete)


def settle_time(
    coeffs: MapCoefficients,
    initial: State,
    target: State,
    epsilon: float = 1e-3,
    window: int = 10,
    budget: int = 10000,
) -> SettleResult:
    """First step t after which the orbit stays within ``epsilon`` of ``target``.

    "Stays" means every state s_t .. s_{t+window} is within ``epsilon`` in
    max-norm. Gives ``step=None`` if that does not happen by step ``budget``.
    """
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    if window < 1:
        raise ValueError("window must be >= 1")
    xs, ys, n = kernels.orbit(
        coeffs.a_x, coeffs.c_x, coeffs.a_y, coeffs.c_y,
        float(initial.x), float(initial.y), budget + window, False, OVERFLOW_LIMIT,
    )
    diverged = n < budget + window + 1
    close = np.maximum(np.abs(xs[:n] - target.x), np.abs(ys[:n] - target.y)) < epsilon
    run = 0
    best = None
    # scan backwards tracking the length of the run of close states starting at t
    for t in range(n - 1, -1, -1):
        run = run + 1 if close[t] else 0
        if run >= window + 1 and t <= budget:
            best = t
    return SettleResult(best, diverged and best is None)


def analyze(params: ModelParams, scenario: str = "", search_box=DEFAULT_BOX) -> list[FixedPointReport]:
    coeffs = derive_coefficients(params)
    return [
        FixedPointReport(fp, classify(jacobian_at(coeffs, fp.location)), scenario)
        for fp in fixed_points(coeffs, search_box)
    ]


def attracting(report: FixedPointReport) -> bool:
    return report.verdict.discrete_scheme in ("stable-node", "stable-spiral")


def predicted_settle_time(rho: float, initial_error: float, epsilon: float) -> int:
    """Linear-contraction estimate ceil(ln(eps / e0) / ln rho)."""
    return max(0, math.ceil(math.log(epsilon / initial_error) / math.log(rho)))
