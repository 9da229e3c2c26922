import pytest
from hypothesis import settings

from milnor.catalog import builtin_catalog

settings.register_profile("default", max_examples=120, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()


_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion, then assert it."""

    def record(cid: str, ok: bool, detail: str) -> None:
        line = f"{cid} {'PASS' if ok else 'FAIL'}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
