"""Collects acceptance results and prints one pass/fail line per criterion."""
import pytest

RESULTS: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def criterion():
    """``criterion(number, title, part=(worst, tolerance), ...)`` records and asserts a result.

    A criterion passes when every part's worst residual is within its tolerance.
    """
    def record(number: int, title: str, **parts: tuple[float, float]):
        failed = [k for k, (worst, tol) in parts.items() if not worst <= tol]
        detail = ", ".join(f"{k} {worst:.3g}/{tol:g}" for k, (worst, tol) in parts.items())
        RESULTS[number] = (title, not failed, detail)
        assert not failed, f"criterion {number} ({title}) failed: {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        title, ok, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title} [{detail}]")
