"""Exit criteria for the package, one test per criterion (or sub-criterion).

Run ``pytest tests/test_acceptance.py`` to get a PASS/FAIL line per
criterion in the terminal summary.
"""
import math

import numpy as np
import pytest

from conflictdyn.games import hawk_dove_first_injurer, hawk_dove_symmetric, dominant_strategies, mixed_nash_support_enum, pure_nash
from conflictdyn.model import State, derive_coefficients, orbit
from conflictdyn.scan import SweepConfig, crossing_point, lyapunov_max, sweep
from conflictdyn.scenarios import PRESETS
from conflictdyn.stability import analyze, attracting, settle_time

from . import test_cli, test_games, test_model, test_scenarios, test_stability

H, D = 0, 1
criterion = pytest.mark.criterion


def reports(name):
    return analyze(PRESETS[name].params, name)


@pytest.fixture(scope="module")
def tn_sweep():
    return sweep(PRESETS["salamis_straits"].params, SweepConfig("TN_x", -1.0, 1.0, 2001, lyapunov=True))


@criterion("1")
def test_baseline_fixed_points():
    """salamis_straits: two fixed points near (0.75, 0.475) and (0.96, 1.012), residual < 1e-10, E2 inadmissible"""
    e1, e2 = (r.fixed_point for r in reports("salamis_straits"))
    assert e1.location.distance(State(0.75, 0.475)) <= 1e-2
    assert e2.location.distance(State(0.96, 1.012)) <= 1e-2
    assert e1.residual < 1e-10 and e2.residual < 1e-10
    assert e1.admissible and not e2.admissible
    assert e2.location.y > 1


@criterion("2")
def test_baseline_stability_numbers():
    """salamis_straits: det 0.069 / -2.718, eigenvalues +-0.264i / +-1.648, labels center / saddle"""
    r1, r2 = reports("salamis_straits")
    v1, v2 = r1.verdict, r2.verdict
    assert v1.determinant == pytest.approx(0.069, abs=0.002)
    assert v1.eigenvalues[0] == pytest.approx(0.264j, abs=0.002)
    assert v1.eigenvalues[1] == pytest.approx(-0.264j, abs=0.002)
    assert v2.determinant == pytest.approx(-2.718, abs=0.02)
    assert v2.eigenvalues[0] == pytest.approx(1.648, abs=0.005)
    assert v2.eigenvalues[1] == pytest.approx(-1.648, abs=0.005)
    assert (v1.paper_scheme, v2.paper_scheme) == ("center", "saddle")


@criterion("3")
def test_open_saronic():
    """open_saronic (G=0.64): points near (0.667, 0.67) and (0.904, 0.963), dets -0.314 / -2.068, both saddles"""
    r1, r2 = reports("open_saronic")
    assert r1.fixed_point.location.distance(State(0.667, 0.67)) <= 1e-2
    assert r2.fixed_point.location.distance(State(0.904, 0.963)) <= 1e-2
    assert r1.verdict.determinant == pytest.approx(-0.314, abs=0.005)
    assert r2.verdict.determinant == pytest.approx(-2.068, abs=0.01)
    assert r1.verdict.paper_scheme == r2.verdict.paper_scheme == "saddle"


@criterion("4")
def test_isthmus():
    """isthmus (G=0.7): dets -0.583 / -1.526 at refined fixed points, both saddles"""
    r1, r2 = reports("isthmus")
    assert r1.verdict.determinant == pytest.approx(-0.583, abs=0.01)
    assert r2.verdict.determinant == pytest.approx(-1.526, abs=0.02)
    assert r1.verdict.paper_scheme == r2.verdict.paper_scheme == "saddle"


def _settle(name):
    p = PRESETS[name].params
    target = next(r for r in analyze(p) if attracting(r)).fixed_point.location
    return settle_time(derive_coefficients(p), State(0.5, 0.5), target, 1e-3, 10).step


@criterion("5")
def test_settle_times():
    """settle times 6+-2 (salamis_straits), 10.5+-2.5 (open_saronic); y > x after settling in open_saronic and isthmus"""
    assert abs(_settle("salamis_straits") - 6) <= 2
    assert abs(_settle("open_saronic") - 10.5) <= 2.5
    for name in ("open_saronic", "isthmus"):
        t = _settle(name)
        o = orbit(derive_coefficients(PRESETS[name].params), State(0.5, 0.5), t + 100)
        assert np.all(o.ys[t:] > o.xs[t:])


@criterion("6")
def test_branch_crossing():
    """crossing over G in [0.5, 0.7] is 0.6375 +- 0.005; at G=0.6375 both coordinates equal 2/3 within 1e-9"""
    base = PRESETS["salamis_straits"].params
    g = crossing_point(base, "G", (0.5, 0.7))
    assert g == pytest.approx(0.6375, abs=0.005)
    c = derive_coefficients(base.with_(G=0.6375))
    s = 2.0 / 3.0
    assert abs(c.a_x - c.c_x * s * (1 - s) - s) <= 1e-9
    assert abs(c.a_y - c.c_y * s * (1 - s) - s) <= 1e-9
    e1 = analyze(base.with_(G=0.6375))[0].fixed_point.location
    assert abs(e1.x - s) <= 1e-9 and abs(e1.y - s) <= 1e-9


@criterion("7a")
def test_tn_sweep_period_two(tn_sweep):
    """TN_x sweep over [-1, 1] (2001 points) has at least one period-2 value"""
    assert any(r.period == 2 for r in tn_sweep)


@criterion("7b")
def test_tn_sweep_period_four(tn_sweep):
    """TN_x sweep over [-1, 1] (2001 points) has at least one period-4 value"""
    assert any(r.period == 4 for r in tn_sweep)


@criterion("7c")
def test_tn_sweep_chaos(tn_sweep):
    """TN_x sweep over [-1, 1] (2001 points) has a value with Lyapunov exponent > 0.01"""
    assert any(r.lyapunov is not None and r.lyapunov > 0.01 for r in tn_sweep)
    assert any(r.chaotic for r in tn_sweep)


@criterion("7d")
def test_g_sweep_period_one():
    """G sweep over [0.05, 0.95] is period 1 everywhere"""
    res = sweep(PRESETS["salamis_straits"].params, SweepConfig("G", 0.05, 0.95, 181))
    assert all(r.period == 1 for r in res), [r.value for r in res if r.period != 1]


@criterion("8")
def test_lyapunov_oracle():
    """lyapunov_max is ln(0.2645) at salamis_straits and -0.578 at open_saronic, matching log spectral radius"""
    for name, expected in (("salamis_straits", math.log(0.2645)), ("open_saronic", -0.578)):
        p = PRESETS[name].params
        lam = lyapunov_max(derive_coefficients(p))
        assert lam == pytest.approx(expected, abs=0.02)
        rho = next(r for r in analyze(p) if attracting(r)).verdict.spectral_radius
        assert lam == pytest.approx(math.log(rho), abs=0.02)


@criterion("9")
def test_game_results():
    """first-injurer (2,1): pure NE {(H,H),(H,D)}, row Hawk strict; symmetric (1,2): (H,D),(D,H),(0.5,0.5) confirmed by grid scan"""
    fi = hawk_dove_first_injurer(2, 1)
    assert {e.profile() for e in pure_nash(fi)} == {(H, H), (H, D)}
    assert any(f.player == 1 and f.dominating == H and f.strictness == "strict" for f in dominant_strategies(fi))

    sym = hawk_dove_symmetric(1, 2)
    eqs = mixed_nash_support_enum(sym)
    assert {e.profile() for e in eqs if e.kind == "pure"} == {(H, D), (D, H)}
    (mixed,) = [e for e in eqs if e.kind == "mixed"]
    assert mixed.row == pytest.approx((0.5, 0.5)) and mixed.col == pytest.approx((0.5, 0.5))
    grid = test_games.brute_force_2x2(sym, step=1e-3, eps=2e-3)
    locs = np.array([[e.row[H], e.col[H]] for e in eqs])
    for loc in locs:
        assert np.min(np.max(np.abs(grid - loc), axis=1)) <= 1e-3
    near = np.min(np.max(np.abs(grid[:, None, :] - locs[None, :, :]), axis=2), axis=1)
    assert np.max(near) <= 0.01


@criterion("10")
def test_property_suites(tmp_path, capsys):
    """property suites: role swap, quartic vs Newton, Jacobian vs FD, affine invariance, round trip, CSV reruns"""
    test_model.test_role_swap_symmetry()
    test_stability.test_quartic_and_newton_agree()
    test_model.test_jacobian_matches_finite_differences(derive_coefficients(PRESETS["salamis_straits"].params))
    test_games.test_equilibrium_set_affine_invariance()
    test_scenarios.test_random_round_trip()
    test_cli.test_csv_reruns_bit_identical(capsys, tmp_path)
