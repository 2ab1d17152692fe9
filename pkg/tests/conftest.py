import numpy as np
import pytest

from qwalk2d import engine
from qwalk2d.lattice import alternate_initial_coin, grover_initial_coin, new_state

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log(request):
    """Record one PASS/FAIL line per acceptance criterion, then assert it."""
    log = request.config.stash[_ACCEPTANCE_KEY]

    def check(name, ok, detail=""):
        log.append(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
        assert ok, f"{name}: {detail}"

    return check


def grover_nonlocal_state(radius):
    return new_state(4, radius, grover_initial_coin())


def alternate_symmetric_state(radius):
    return new_state(2, radius, alternate_initial_coin())


def trajectory(kind, init, steps):
    """States at t = 0..steps (inclusive)."""
    states = [init]
    engine.evolve(init, kind, steps, observer=states.append)
    return states


@pytest.fixture(scope="session")
def matched_states_30():
    """Co-evolved Grover and alternate states for t = 0..30."""
    g = trajectory(engine.WalkKind.GROVER, grover_nonlocal_state(31), 30)
    a = trajectory(engine.WalkKind.ALTERNATE, alternate_symmetric_state(31), 30)
    return g, a


@pytest.fixture
def rng():
    return np.random.default_rng(20100419)
