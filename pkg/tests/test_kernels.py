"""Both kernel backends must agree bit for bit."""
import numpy as np
import pytest

from conflictdyn import _backend, _pykernels
from conflictdyn.model import derive_coefficients

from .conftest import _ckernels

pytestmark = pytest.mark.skipif(_ckernels is None, reason="extension not built")


def _coeff_draws(baseline, n=40):
    rng = np.random.default_rng(11)
    out = [derive_coefficients(baseline)]
    for tn in np.linspace(-1, 1, n):
        out.append(derive_coefficients(baseline.with_(TN_x=float(tn))))
    for _ in range(n):
        c = derive_coefficients(baseline.with_(**dict(zip(("G", "D_y", "E_x"), rng.uniform(0, 1, 3).tolist()))))
        out.append(c)
    return out


def _args(c):
    return c.a_x, c.c_x, c.a_y, c.c_y


def test_backend_selected():
    assert _backend.BACKEND == "cython"


@pytest.mark.parametrize("clamp", [False, True])
def test_orbit_identical(baseline, clamp):
    for c in _coeff_draws(baseline):
        a = _pykernels.orbit(*_args(c), 0.5, 0.5, 300, clamp, 1e12)
        b = _ckernels.orbit(*_args(c), 0.5, 0.5, 300, clamp, 1e12)
        assert a[2] == b[2]
        n = a[2]
        assert a[0][:n].tobytes() == b[0][:n].tobytes()
        assert a[1][:n].tobytes() == b[1][:n].tobytes()


def test_attractor_identical(baseline):
    for c in _coeff_draws(baseline):
        a = _pykernels.attractor(*_args(c), 0.5, 0.5, 500, 200, 1e6)
        b = _ckernels.attractor(*_args(c), 0.5, 0.5, 500, 200, 1e6)
        assert a[2] == b[2]
        if a[2] < 0:
            assert a[0].tobytes() == b[0].tobytes() and a[1].tobytes() == b[1].tobytes()


def test_lyapunov_identical(baseline):
    for c in _coeff_draws(baseline):
        a = _pykernels.lyapunov(*_args(c), 0.5, 0.5, 5000, 500, 1e6)
        b = _ckernels.lyapunov(*_args(c), 0.5, 0.5, 5000, 500, 1e6)
        assert a[1] == b[1]
        if a[1] < 0:
            assert a[0] == b[0]


def test_superstable_start_gives_minus_infinity():
    # the Jacobian vanishes at (0.5, 0.5); starting the average there kills the tangent vector
    for k in (_pykernels, _ckernels):
        value, diverged = k.lyapunov(0.95, 0.8, 1.15, 3.6, 0.5, 0.5, 10, 0, 1e6)
        assert value == -np.inf and diverged == -1


def test_sweep_identical_under_fallback(baseline, monkeypatch):
    from conflictdyn import scan

    cfg = scan.SweepConfig("TN_x", -0.3, 0.3, 61, lyapunov=True)
    fast = scan.sweep(baseline, cfg)
    monkeypatch.setattr(scan, "kernels", _pykernels)
    slow = scan.sweep(baseline, cfg)
    for a, b in zip(fast, slow):
        assert (a.period, a.diverged) == (b.period, b.diverged)
        assert a.xs.tobytes() == b.xs.tobytes()
        assert a.lyapunov == b.lyapunov


def test_fallback_selected_without_extension(monkeypatch):
    import importlib
    import sys

    import conflictdyn

    monkeypatch.setitem(sys.modules, "conflictdyn._ckernels", None)
    monkeypatch.delattr(conflictdyn, "_ckernels")
    try:
        mod = importlib.reload(_backend)
        assert mod.BACKEND == "python" and mod.kernels is _pykernels
    finally:
        monkeypatch.undo()
        importlib.reload(_backend)
