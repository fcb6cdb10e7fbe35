import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from snarkdesign.catalog import data_dir  # noqa: E402
from snarkdesign.formats import read_design  # noqa: E402

DESIGNS = Path(str(data_dir())) / "designs"
HOST_IDS = ("k64", "k73", "k136", "k145", "k12x3", "k24-24-15", "k72-72-63", "k24x4", "k24x3-21")


def design_files():
    return sorted(DESIGNS.glob("*/*.design"))


@lru_cache(maxsize=None)
def shipped(host_id, k):
    return read_design(DESIGNS / host_id / f"g{k:02d}.design")


@pytest.fixture(scope="session")
def all_records():
    return [read_design(p) for p in design_files()]


ACCEPTANCE: dict[str, str] = {}


def record_criterion(name, passed, detail=""):
    ACCEPTANCE[name] = f"{'PASS' if passed else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[key])
