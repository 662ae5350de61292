import json
import re
from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str) -> np.ndarray:
    doc = json.loads((FIXTURES / f"{name}.json").read_text())
    return np.array(doc["entries"], dtype=float)


def matrix_fixtures():
    return sorted(p.stem for p in FIXTURES.glob("*.json") if p.stem not in ("MANIFEST", "sylvester_rank3"))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    outcome = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", getattr(rep, "nodeid", ""))
            if not m or rep.when not in ("call", "setup"):
                continue
            n = int(m.group(1))
            ok = key == "passed"
            outcome[n] = outcome.get(n, True) and ok
    if not outcome:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(outcome):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if outcome[n] else 'FAIL'}")
