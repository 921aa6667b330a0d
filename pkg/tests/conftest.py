import math

import numpy as np
import pytest

from rotor.pulse import SQRT3
from rotor.synthesis import SynthesisRequest, synthesize

ENV_VARS = (
    "ROTTEN_OUTPUT_DIR",
    "ROTTEN_THREADS",
    "ROTTEN_SAMPLES_PER_PULSE",
    "ROTTEN_SCAN_POINTS",
    "ROTTEN_SCAN_F_MIN",
    "ROTTEN_SCAN_F_MAX",
    "ROTTEN_ORACLE_RESTARTS",
    "ROTTEN_ORACLE_BUDGET",
    "ROTTEN_ORACLE_SEED",
    "ROTTEN_ORACLE_BATCH",
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def rotten_90x():
    return synthesize(SynthesisRequest(theta=math.pi / 2, phi=0.0, f_star=SQRT3))


def random_unit_vector(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)
