import math
import time

import pytest

from modkit.families import (FamilyInstance, from_spec, pointed_cyclic,
                             pointed_fusion_tensor, taft_double, taft_fusion_tensor,
                             taft_J_indices)
from modkit.pipeline import PipelineResult, verify_raw

TAFT_RANGE = range(2, 9)

POINTED_GRID = [(n, a, k0)
                for n in (3, 5, 7, 9)
                for a in (1, 2)
                for k0 in (0, 1)
                if math.gcd(a, n) == 1]


class TimedResult:
    def __init__(self, result: PipelineResult, seconds: float):
        self.result = result
        self.seconds = seconds


@pytest.fixture(scope="session")
def taft_verified() -> dict[int, TimedResult]:
    """verify_raw on the full Taft datum, with the independent fusion oracle
    and the closed-form representative set, for every d in 2..8."""
    out = {}
    for d in TAFT_RANGE:
        raw = taft_double(d)
        oracle = taft_fusion_tensor(d)
        t0 = time.perf_counter()
        res = verify_raw(raw, fusion_oracle=oracle, reps=taft_J_indices(d))
        out[d] = TimedResult(res, time.perf_counter() - t0)
    return out


@pytest.fixture(scope="session")
def taft_instances() -> dict[int, FamilyInstance]:
    return {d: from_spec(f"taft:d={d}") for d in TAFT_RANGE}


@pytest.fixture(scope="session")
def pointed_verified() -> dict[tuple[int, int, int], PipelineResult]:
    out = {}
    for (n, a, k0) in POINTED_GRID:
        raw = pointed_cyclic(n, a, k0)
        out[(n, a, k0)] = verify_raw(raw, fusion_oracle=pointed_fusion_tensor(n))
    return out
