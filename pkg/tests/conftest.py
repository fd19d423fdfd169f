import numpy as np
import pytest

from deorbitsim import OrbitEnv


@pytest.fixture
def env() -> OrbitEnv:
    return OrbitEnv()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


def random_unit_quat(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    return q / np.linalg.norm(q)
