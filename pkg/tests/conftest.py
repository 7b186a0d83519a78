import pytest

from spin_twist.dynkin_catalog import GabrielovDiagram, build_gabrielov, frame_vectors


@pytest.fixture(scope="session")
def e12():
    d = GabrielovDiagram(2, 3, 7)
    return build_gabrielov(d), frame_vectors(d)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
