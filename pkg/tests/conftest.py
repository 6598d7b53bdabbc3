import math

import pytest

from torsionlab import _backend

BACKENDS = [pytest.param(_backend.pure, id="python")]
if _backend.compiled is not None:
    BACKENDS.append(pytest.param(_backend.compiled, id="compiled"))


@pytest.fixture(params=BACKENDS)
def kernels(request):
    return request.param


def rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


LOG_2PI = math.log(2.0 * math.pi)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
