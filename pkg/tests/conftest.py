import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SEEDS = (1, 2, 3)


@pytest.fixture(params=SEEDS)
def seed(request):
    return request.param


# one line per acceptance criterion, printed after the run
_CRITERIA: dict = {}


class CriterionRecorder:
    def record(self, number: int, title: str, ok: bool, detail: str = "") -> None:
        status = "PASS" if ok else "FAIL"
        _CRITERIA[number] = f"criterion {number:2d} {status}: {title}" + (f" ({detail})" if detail else "")


@pytest.fixture
def criterion():
    return CriterionRecorder()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n])
