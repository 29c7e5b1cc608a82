from pathlib import Path

import pytest

from dgcyclic.io import load

INPUTS = Path(__file__).resolve().parent.parent / "inputs"


def model(name):
    return load(INPUTS / f"{name}.dg").to_presentation()


@pytest.fixture(scope="session")
def K():
    return model("K")


@pytest.fixture(scope="session")
def F():
    return model("F")


@pytest.fixture(scope="session")
def Q():
    return model("Q")


@pytest.fixture(scope="session")
def Q3():
    return model("Q3")


@pytest.fixture(scope="session")
def D():
    return model("D")


@pytest.fixture(scope="session")
def A2():
    return model("A2")


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("DGCYCLIC_CACHE", str(d))
    return d


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
