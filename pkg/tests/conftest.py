import pytest

from conflictdyn import _pykernels
from conflictdyn.model import State, derive_coefficients
from conflictdyn.scenarios import PRESETS, SALAMIS

try:
    from conflictdyn import _ckernels
except ImportError:  # extension not built
    _ckernels = None


@pytest.fixture
def baseline():
    return SALAMIS


@pytest.fixture
def coeffs(baseline):
    return derive_coefficients(baseline)


@pytest.fixture
def start():
    return State(0.5, 0.5)


@pytest.fixture(params=sorted(PRESETS))
def preset(request):
    return PRESETS[request.param]


def backends():
    out = [pytest.param(_pykernels, id="python")]
    out.append(
        pytest.param(
            _ckernels,
            id="cython",
            marks=pytest.mark.skipif(_ckernels is None, reason="extension not built"),
        )
    )
    return out


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion covered by the test")


_criteria: list[tuple[str, str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _criteria.append((marker.args[0], "PASS" if report.passed else "FAIL", doc))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict, doc in _criteria:
        terminalreporter.write_line(f"[{verdict}] criterion {label}: {doc}")
