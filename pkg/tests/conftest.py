import numpy as np
import pytest

from landau.scaling import calibrate_prefactor, run_sweep

ACCEPTANCE_MUS = np.logspace(-4, -2, 8)


@pytest.fixture(scope="session")
def calibrated_c():
    return calibrate_prefactor()


@pytest.fixture(scope="session")
def acceptance_sweep(calibrated_c):
    """The 8-point construction-mode sweep with Landau comparator rows,
    shared by the scaling, ordering, and membership tests."""
    return run_sweep(ACCEPTANCE_MUS, mode="construction", c=calibrated_c,
                     include_landau=True)


def smooth_random_field(rng, n, channels, sigma=0.08):
    """Random field with a Gaussian spectral envelope; used wherever a
    'random smooth field' oracle case is required."""
    k = np.fft.fftfreq(n, 1.0 / n)
    env = np.exp(-sigma * (k[:, None] ** 2 + k[None, :] ** 2))
    out = np.stack(
        [np.fft.ifft2(np.fft.fft2(rng.normal(size=(n, n))) * env).real
         for _ in range(channels)], axis=-1)
    return out
