from pathlib import Path

import pytest

from bitflip import constructions as cons
from bitflip.alist import read_alist
from bitflip.decoder import MonotonicityMonitor

DATA = Path(__file__).parent / "data"

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def fano():
    return cons.projective_plane(2)


@pytest.fixture(scope="session")
def pg4():
    return cons.projective_plane(4)


@pytest.fixture(scope="session")
def eg4():
    return cons.euclidean_punctured(4)


@pytest.fixture(scope="session")
def sw3_4():
    return cons.simplex_weight3_matrix(4)


@pytest.fixture(scope="session")
def golden():
    return {p.stem: read_alist(p) for p in sorted(DATA.glob("*.alist"))}


@pytest.fixture(scope="session")
def step_monitor():
    """Accumulates every in-process step-by-step flip made by the acceptance run."""
    return MonotonicityMonitor()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call" or not item.get_closest_marker("acceptance"):
        return
    doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    status = "PASS" if rep.passed else "FAIL"
    _acceptance_lines.append(f"{status}  {doc}" + (f"  [{detail}]" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
