import os
import sys
import time

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from qhmspace.generators import random_corpus  # noqa: E402
from qhmspace.linalg import jacobi_eigh  # noqa: E402

import numpy as np  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CORPUS_SIZE = 1000
CORPUS_SEED = 1


@pytest.fixture(scope="session", autouse=True)
def _compiled_kernels():
    # trigger (or load) the compiled eigen-kernel once, outside any timing
    jacobi_eigh(np.eye(3))


@pytest.fixture(scope="session")
def corpus():
    t = time.perf_counter()
    items = random_corpus(CORPUS_SIZE, seed=CORPUS_SEED)
    return items, time.perf_counter() - t
