import numpy as np
import pytest

from qillum.gaussian import TwoModeCovariance, random_two_mode_symplectic


@pytest.fixture
def rng():
    return np.random.default_rng(20250808)


@pytest.fixture
def random_state_factory(rng):
    """Random physical two-mode states: symplectic congruences of thermal
    covariances, drawn from the shared seeded generator."""

    def make(max_squeeze: float = 1.0, max_thermal: float = 3.0) -> TwoModeCovariance:
        s = random_two_mode_symplectic(rng, max_squeeze)
        nbars = rng.uniform(0.0, max_thermal, size=2)
        thermal = np.diag(np.repeat(2.0 * nbars + 1.0, 2)) / 2.0
        m = s @ thermal @ s.T
        return TwoModeCovariance((m + m.T) / 2.0)

    return make
