import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cbr.alphabet import enumerated
from cbr.transform import CostRecord, Grouping, Transform


def random_pmf(rng: np.random.Generator, n: int, sparse: bool = False) -> dict:
    w = rng.random(n)
    if sparse:
        w[rng.random(n) < 0.3] = 0.0
        if w.sum() == 0.0:
            w[0] = 1.0
    w = w / w.sum()
    return {f"x{i}": float(p) for i, p in enumerate(w)}


def random_grouping(rng: np.random.Generator, letter_ids, n_groups: int) -> dict:
    return {lid: f"g{rng.integers(n_groups)}" for lid in letter_ids}


def make_grouping(mapping: dict, name: str = "t", cost: float = 1.0, node_kind: str = "M") -> Transform:
    return Transform(name, Grouping(mapping), CostRecord("time", cost, "s"), node_kind)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
