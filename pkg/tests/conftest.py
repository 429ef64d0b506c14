import pytest

from isosing.paperdata import load_corpus

ACCEPTANCE: list[tuple[int, str, str]] = []


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture
def record():
    def _record(number: int, status: str, detail: str) -> None:
        ACCEPTANCE.append((number, status, detail))
        print(f"criterion {number:2d}: {status:12s} {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:2d}: {status:12s} {detail}")
