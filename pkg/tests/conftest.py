import pytest

from qcube.core import CubeParams, PointSet, parse_pointset


@pytest.fixture
def mkset():
    """Build a PointSet from whitespace-separated vector strings, e.g.
    mkset(2, 3, "000 011 101")."""

    def make(q: int, n: int, text: str) -> PointSet:
        return parse_pointset("\n".join(text.split()), CubeParams(q, n))[0]

    return make


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # Replay the acceptance-criteria verdicts after the run, since passing
    # tests have their stdout captured.
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num, desc, verdict, detail in sorted(RESULTS):
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"criterion {num} [{verdict}] {desc}{suffix}")
