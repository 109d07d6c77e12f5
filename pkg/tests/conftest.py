from collections import defaultdict
import functools

import pytest
from hypothesis import settings

from x2y2.rrho import solve_block

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

NMAX_TABLE = 88


@functools.lru_cache(maxsize=None)
def rrho_block(species, nmax, k=6):
    return solve_block(species, nmax, k, want_vectors=True)


@pytest.fixture(scope="session")
def table_blocks():
    """Largest-basis RRHO solutions, shared by the slow tests."""
    return {sp: rrho_block(sp, NMAX_TABLE) for sp in ("A1", "A2", "B1", "B2", "Ex", "Ey")}


_criteria = defaultdict(list)
_CRITERION_TITLES = {
    1: "RRHO reference regression (lowest state per species)",
    2: "RRHO higher states",
    3: "RRK column (a=1, 60 digits, K<=25)",
    4: "CMX column (some order M<=15)",
    5: "variational monotonicity",
    6: "E degeneracy (spectra and grids)",
    7: "moments vs 2D quadrature",
    8: "eigenfunction C4v symmetry",
}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marks = getattr(report, "criterion", None)
    if marks is not None:
        _criteria[marks].append((report.nodeid, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        runs = _criteria[n]
        bad = [nid.split("::")[-1] for nid, out in runs if out != "passed"]
        status = "PASS" if not bad else "FAIL"
        line = f"criterion {n}: {status}  {_CRITERION_TITLES.get(n, '')} ({len(runs) - len(bad)}/{len(runs)} checks)"
        if bad:
            line += "  failing: " + ", ".join(bad)
        tr.write_line(line)
