import re
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

TESTS = Path(__file__).parent
sys.path.insert(0, str(TESTS))  # oracles.py

settings.register_profile("repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

CRITERIA = {
    1: "polynomial identity p = 1..8, A_2, A_p(t,0)",
    2: "delta0 certification",
    3: "generic-torus cone laws on random forms",
    4: "product binomial identity",
    5: "dual-cone consistency on surfaces",
    6: "potential and metric numerics",
    7: "Monge-Ampere solves",
    8: "concentration chain",
    9: "transport along families",
    10: "determinism and round-trips",
}


@pytest.fixture
def fixtures():
    return TESTS / "fixtures"


def pytest_terminal_summary(terminalreporter):
    outcome = {}
    for key in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(key, []):
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", getattr(rep, "nodeid", ""))
            if not m:
                continue
            k = int(m.group(1))
            ok = key == "passed" and rep.when == "call"
            if key in ("failed", "error", "skipped"):
                outcome[k] = False
            elif ok and k not in outcome:
                outcome[k] = True
    if not outcome:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        if k in outcome:
            terminalreporter.write_line(f"criterion {k:2d} {'PASS' if outcome[k] else 'FAIL'}  {CRITERIA[k]}")
        else:
            terminalreporter.write_line(f"criterion {k:2d} NOT RUN  {CRITERIA[k]}")
