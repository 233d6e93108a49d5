import sys
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nbuetest.montecarlo import SimConfig, sample_null_statistics  # noqa: E402
from nbuetest.statistic import HP1975, generalized  # noqa: E402

SEED = 42


@lru_cache(maxsize=None)
def null_draws(n: int, j: float | str = 1.0, reps: int = 1_000_000, seed: int = SEED) -> np.ndarray:
    """Session-wide cache of null simulations (read-only arrays)."""
    variant = HP1975 if j == "hp1975" else generalized(j)
    out = sample_null_statistics(SimConfig(n=n, variant=variant, replications=reps, seed=seed))
    out.setflags(write=False)
    return out


@pytest.fixture
def draws():
    return null_draws


# one status line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
