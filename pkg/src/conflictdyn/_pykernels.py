"""Pure-Python iteration kernels.

These mirror ``_ckernels.pyx`` operation for operation so that both backends
produce bit-identical floats. Keep the two files in lockstep.
"""
import math

import numpy as np

NAME = "python"


def orbit(ax, cx, ay, cy, x0, y0, steps, clamp, limit):
    """Iterate the map ``steps`` times.

    Returns ``(xs, ys, n)`` where ``n`` is the number of valid states stored;
    ``n < steps + 1`` means the state at index ``n`` left the ``limit`` box.
    """
    xs = np.empty(steps + 1)
    ys = np.empty(steps + 1)
    x = x0
    y = y0
    xs[0] = x
    ys[0] = y
    for t in range(1, steps + 1):
        nx = ax - cx * y * (1.0 - y)
        ny = ay - cy * x * (1.0 - x)
        if clamp:
            nx = min(max(nx, 0.0), 1.0)
            ny = min(max(ny, 0.0), 1.0)
        if not (abs(nx) <= limit and abs(ny) <= limit):
            return xs, ys, t
        x = nx
        y = ny
        xs[t] = x
        ys[t] = y
    return xs, ys, steps + 1


def attractor(ax, cx, ay, cy, x0, y0, transient, samples, limit):
    """Discard ``transient`` steps, then keep ``samples`` consecutive states.

    Returns ``(xs, ys, diverged_step)``; ``diverged_step`` is -1 when the
    orbit stayed inside the ``limit`` box.
    """
    xs = np.empty(samples)
    ys = np.empty(samples)
    x = x0
    y = y0
    total = transient + samples
    for t in range(total):
        if t >= transient:
            xs[t - transient] = x
            ys[t - transient] = y
        nx = ax - cx * y * (1.0 - y)
        ny = ay - cy * x * (1.0 - x)
        if not (abs(nx) <= limit and abs(ny) <= limit):
            if t + 1 < total:
                return xs, ys, t + 1
        x = nx
        y = ny
    return xs, ys, -1


def lyapunov(ax, cx, ay, cy, x0, y0, iterations, transient, limit):
    """Largest Lyapunov exponent by tangent-vector iteration.

    Returns ``(exponent, diverged_step)``. The exponent is ``-inf`` when the
    tangent vector is annihilated exactly (a superstable visit).
    """
    x = x0
    y = y0
    vx = math.sqrt(0.5)
    vy = vx
    acc = 0.0
    for t in range(iterations):
        if t >= transient:
            j12 = cx * (2.0 * y - 1.0)
            j21 = cy * (2.0 * x - 1.0)
            wx = j12 * vy
            wy = j21 * vx
            norm = math.sqrt(wx * wx + wy * wy)
            if norm == 0.0:
                return -math.inf, -1
            acc += math.log(norm)
            vx = wx / norm
            vy = wy / norm
        nx = ax - cx * y * (1.0 - y)
        ny = ay - cy * x * (1.0 - x)
        if not (abs(nx) <= limit and abs(ny) <= limit):
            return math.nan, t + 1
        x = nx
        y = ny
    return acc / (iterations - transient), -1
