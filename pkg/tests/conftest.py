import time

import pytest

from ctmbdm.distribution import to_complexity
from ctmbdm.enumeration import EnumerationPlan, enumerate_outputs
from ctmbdm.machine import MachineSpec

ACCEPTANCE: dict[str, tuple[bool | None, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[name]
        status = "SKIP" if ok is None else "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  {name}: {detail}")


@pytest.fixture(scope="session")
def timed():
    """Cache of expensive enumerations, with their wall time."""
    cache = {}

    def get(key, build):
        if key not in cache:
            t0 = time.perf_counter()
            cache[key] = (build(), time.perf_counter() - t0)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def d22(timed):
    return timed("d22", lambda: enumerate_outputs(EnumerationPlan(MachineSpec(2), cutoff=1000)))[0]


@pytest.fixture(scope="session")
def d32(timed):
    return timed("d32", lambda: enumerate_outputs(EnumerationPlan(MachineSpec(3), cutoff=1000)))[0]


@pytest.fixture(scope="session")
def k22(d22):
    return to_complexity(d22)


@pytest.fixture(scope="session")
def k32(d32):
    return to_complexity(d32)


@pytest.fixture(scope="session")
def acss():
    pytest.importorskip("pybdm")
    from ctmbdm.reference import load_pybdm
    return load_pybdm("CTM-B2-D12")


@pytest.fixture(scope="session")
def acss2d():
    pytest.importorskip("pybdm")
    from ctmbdm.reference import load_pybdm
    return load_pybdm("CTM-B2-D4x4")


@pytest.fixture(scope="session")
def acceptance():
    """Record a criterion result; the summary prints one line per criterion."""
    def record(name: str, ok: bool | None, detail: str) -> bool | None:
        ACCEPTANCE[name] = (None if ok is None else bool(ok), detail)
        return ok

    return record
