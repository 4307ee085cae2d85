from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from cpc.gf2 import Gf2Matrix
from cpc.model import CpcCode, GeneralCpcCode
from cpc.search import random_code

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURE_DIR = REPO_ROOT / "fixtures"


@pytest.fixture
def fixture_dir() -> Path:
    return FIXTURE_DIR


def seeded_random_codes(count: int, seed: int = 2024, k_max: int = 4, n_max: int = 5):
    """Deterministic stream of small random codes for cross-module checks."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    codes: list[CpcCode] = []
    while len(codes) < count:
        k = int(rng.integers(1, k_max + 1))
        n_b = int(rng.integers(1, n_max + 1))
        n_p = int(rng.integers(0, n_max + 1))
        codes.append(random_code(k, n_b, n_p, rng))
    return codes


def seeded_random_general_codes(count: int, seed: int = 5150, k_max: int = 3, n_max: int = 5):
    """Random generalized codes, including self-loop wiring (a data qubit
    attached to the same check by both edge types)."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    codes: list[GeneralCpcCode] = []
    while len(codes) < count:
        k = int(rng.integers(1, k_max + 1))
        n_c = int(rng.integers(1, n_max + 1))
        mbs = rng.integers(0, 2, size=(k, n_c), dtype=np.uint8)
        mps = rng.integers(0, 2, size=(k, n_c), dtype=np.uint8)
        mcs = np.triu(rng.integers(0, 2, size=(n_c, n_c), dtype=np.uint8), k=1)
        codes.append(
            GeneralCpcCode(mbs=Gf2Matrix(mbs), mps=Gf2Matrix(mps), mcs=Gf2Matrix(mcs))
        )
    return codes
