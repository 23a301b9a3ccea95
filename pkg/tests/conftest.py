"""Shared state builders for the test suite."""

import numpy as np
import pytest

from blowupwatch.fields import FluidState, GasModel, Grid


def gaussian_state(cells=192, halfwidth=8.0, velocity="radial", gamma=2.0):
    """rho = exp(-r^2), P = rho^gamma, velocity x, (x2,-x1), or zero."""
    grid = Grid.regular(2, cells, halfwidth)
    x1, x2 = grid.centers()
    rho = np.exp(-grid.radius_squared())
    if velocity == "radial":
        vel = (x1.copy(), x2.copy())
    elif velocity == "swirl":
        vel = (x2.copy(), -x1.copy())
    elif velocity == "none":
        vel = (np.zeros_like(rho), np.zeros_like(rho))
    else:
        raise ValueError(velocity)
    return FluidState(grid=grid, time=0.0, rho=rho, vel=vel,
                      pres=rho ** gamma), GasModel(gamma=gamma, ndim=2)


def mixture_state(rng, cells=96, halfwidth=12.0, gamma=1.4, n_blobs=3):
    """Random well-decayed Gaussian mixture with smooth velocity.

    Blob centers stay within |c| <= 2 and widths below 1, so the
    density at the box edge is far beneath the tail gate.
    """
    grid = Grid.regular(2, cells, halfwidth)
    x1, x2 = grid.centers()
    rho = np.zeros(grid.cells)
    for _ in range(n_blobs):
        cx, cy = rng.uniform(-2.0, 2.0, size=2)
        width = rng.uniform(0.4, 1.0)
        amp = rng.uniform(0.2, 1.5)
        rho = rho + amp * np.exp(-((x1 - cx) ** 2 + (x2 - cy) ** 2)
                                 / (2.0 * width * width))
    coeff = rng.uniform(-0.8, 0.8, size=(2, 6))
    vel = []
    for a in range(2):
        c = coeff[a]
        vel.append(c[0] + c[1] * x1 + c[2] * x2 + c[3] * x1 * x2
                   + c[4] * x1 * x1 * 0.1 + c[5] * x2 * x2 * 0.1)
    entropy = rng.uniform(-0.5, 0.5)
    pres = np.exp(entropy) * rho ** gamma
    state = FluidState(grid=grid, time=0.0, rho=rho,
                       vel=(vel[0], vel[1]), pres=pres)
    return state, GasModel(gamma=gamma, ndim=2)


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)
