import numpy as np
import pytest

import adiasearch as a


@pytest.fixture(scope="session")
def quadratic():
    return a.get_profile("quadratic")


@pytest.fixture(scope="session")
def plain():
    return a.get_profile("none")


@pytest.fixture(scope="session")
def sqrt_product():
    return a.get_profile("sqrt_product")


@pytest.fixture(scope="session")
def inst64():
    return a.make_instance(6)


@pytest.fixture(scope="session")
def inst1024():
    return a.make_instance(10)


def max_amp_dev(res_a, res_b):
    """Largest amplitude deviation between two trajectories, sample-wise."""
    return max(
        max(abs(p.state.amp_m - q.state.amp_m), abs(p.state.amp_perp - q.state.amp_perp))
        for p, q in zip(res_a.trajectory, res_b.trajectory)
    )


@pytest.fixture(scope="session")
def amp_dev():
    return max_amp_dev


def gap_grid(instance, profile, n_points=1001):
    s = np.linspace(0.0, 1.0, n_points)
    return s, np.asarray(a.gap_numeric(instance, profile, s))


@pytest.fixture(scope="session")
def grid_gap():
    return gap_grid
