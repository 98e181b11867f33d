"""Real roots of a low-degree polynomial on an interval.

Coefficients are in ascending order (``c[0] + c[1] x + ...``), the same
convention as ``numpy.polynomial``.
"""
from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as npoly

SCAN_INTERVALS = 4096
DEDUP_TOL = 1e-8
RESIDUAL_REL = 1e-12


def trim(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float)
    nz = np.flatnonzero(c)
    return c[: nz[-1] + 1] if nz.size else c[:1] * 0.0


def residual_scale(coeffs, x: float) -> float:
    """Magnitude against which ``|P(x)|`` is judged: sum of |c_k| |x|^k."""
    c = np.abs(np.asarray(coeffs, dtype=float))
    return float(npoly.polyval(abs(x), c)) or 1.0


def _bisect(c, lo, hi, flo):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = npoly.polyval(mid, c)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _polish(c, dc, x, lo, hi):
    """A few guarded Newton steps; keeps the iterate only while |P| shrinks."""
    best, fbest = x, abs(npoly.polyval(x, c))
    for _ in range(8):
        d = npoly.polyval(best, dc)
        if d == 0.0 or fbest == 0.0:
            break
        cand = best - npoly.polyval(best, c) / d
        if not lo <= cand <= hi:
            break
        fc = abs(npoly.polyval(cand, c))
        if fc >= fbest:
            break
        best, fbest = cand, fc
    return best


def real_roots(poly, interval: tuple[float, float], tol: float = DEDUP_TOL) -> list[float]:
    """All real roots of ``poly`` inside the closed ``interval``, ascending.

    Simple roots are bracketed by a sign-change scan over 4096 subintervals.
    Roots of even multiplicity (no sign change) are found among the critical
    points, located recursively as roots of the derivative. Roots closer than
    ``tol`` are merged. An empty list is a normal result.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise ValueError(f"invalid interval {interval!r}")
    c = trim(poly)
    degree = len(c) - 1
    if degree == 0:
        if c[0] == 0.0:
            raise ValueError("zero polynomial has no isolated roots")
        return []
    if degree == 1:
        with np.errstate(over="ignore"):
            r = -c[0] / c[1]
        return [float(r)] if lo <= r <= hi else []

    dc = npoly.polyder(c)
    grid = np.linspace(lo, hi, SCAN_INTERVALS + 1)
    values = npoly.polyval(grid, c)
    found = []
    for i in range(SCAN_INTERVALS):
        a, b = grid[i], grid[i + 1]
        fa, fb = values[i], values[i + 1]
        if fa == 0.0:
            found.append(a)
        elif fa * fb < 0.0:
            found.append(_polish(c, dc, _bisect(c, a, b, fa), a, b))
    if values[-1] == 0.0:
        found.append(grid[-1])

    for crit in real_roots(dc, (lo, hi), tol):
        if abs(npoly.polyval(crit, c)) <= RESIDUAL_REL * residual_scale(c, crit):
            found.append(crit)

    found.sort()
    roots: list[float] = []
    for r in found:
        if roots and r - roots[-1] < tol:
            # keep whichever representative has the smaller residual
            if abs(npoly.polyval(r, c)) < abs(npoly.polyval(roots[-1], c)):
                roots[-1] = float(r)
            continue
        roots.append(float(r))
    return roots
