# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled iteration kernels; same contracts as ``_pykernels``."""
from libc.math cimport fabs, log, sqrt, INFINITY, NAN

import numpy as np

NAME = "cython"


def orbit(double ax, double cx, double ay, double cy, double x0, double y0,
          Py_ssize_t steps, bint clamp, double limit):
    xs_arr = np.empty(steps + 1)
    ys_arr = np.empty(steps + 1)
    cdef double[::1] xs = xs_arr
    cdef double[::1] ys = ys_arr
    cdef double x = x0, y = y0, nx, ny
    cdef Py_ssize_t t
    xs[0] = x
    ys[0] = y
    for t in range(1, steps + 1):
        nx = ax - cx * y * (1.0 - y)
        ny = ay - cy * x * (1.0 - x)
        if clamp:
            nx = min(max(nx, 0.0), 1.0)
            ny = min(max(ny, 0.0), 1.0)
        if not (fabs(nx) <= limit and fabs(ny) <= limit):
            return xs_arr, ys_arr, t
        x = nx
        y = ny
        xs[t] = x
        ys[t] = y
    return xs_arr, ys_arr, steps + 1


def attractor(double ax, double cx, double ay, double cy, double x0, double y0,
              Py_ssize_t transient, Py_ssize_t samples, double limit):
    xs_arr = np.empty(samples)
    ys_arr = np.empty(samples)
    cdef double[::1] xs = xs_arr
    cdef double[::1] ys = ys_arr
    cdef double x = x0, y = y0, nx, ny
    cdef Py_ssize_t t, total = transient + samples
    for t in range(total):
        if t >= transient:
            xs[t - transient] = x
            ys[t - transient] = y
        nx = ax - cx * y * (1.0 - y)
        ny = ay - cy * x * (1.0 - x)
        if not (fabs(nx) <= limit and fabs(ny) <= limit):
            if t + 1 < total:
                return xs_arr, ys_arr, t + 1
        x = nx
        y = ny
    return xs_arr, ys_arr, -1


def lyapunov(double ax, double cx, double ay, double cy, double x0, double y0,
             Py_ssize_t iterations, Py_ssize_t transient, double limit):
    cdef double x = x0, y = y0, nx, ny
    cdef double vx = sqrt(0.5), vy
    cdef double j12, j21, wx, wy, norm, acc = 0.0
    cdef Py_ssize_t t
    vy = vx
    for t in range(iterations):
        if t >= transient:
            j12 = cx * (2.0 * y - 1.0)
            j21 = cy * (2.0 * x - 1.0)
            wx = j12 * vy
            wy = j21 * vx
            norm = sqrt(wx * wx + wy * wy)
            if norm == 0.0:
                return -INFINITY, -1
            acc += log(norm)
            vx = wx / norm
            vy = wy / norm
        nx = ax - cx * y * (1.0 - y)
        ny = ay - cy * x * (1.0 - x)
        if not (fabs(nx) <= limit and fabs(ny) <= limit):
            return NAN, t + 1
        x = nx
        y = ny
    return acc / (iterations - transient), -1
