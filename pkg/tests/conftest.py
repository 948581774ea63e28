"""Shared market instances for the test suite.

The cost-distribution corpus spans the four solver cases:
  * uniform on [0, 0.18]      -> interior-formula case (threshold 0.4)
  * step with an interior dip -> no-disclosure case (the dip sits too low)
  * bimodal steps             -> re-crossing case (threshold ~0.40641)
  * strictly convex quadratic -> no-critical-set case
plus smooth families used by the comparative-statics tests.
"""

import numpy as np
import pytest

from censearch.dists import PiecewisePolyDist


@pytest.fixture(scope="session")
def F():
    return PiecewisePolyDist.uniform(0.0, 1.0)


@pytest.fixture(scope="session")
def F_tilted():
    # density 1/2 + x on [0, 1]; mean 7/12
    return PiecewisePolyDist([0.0, 1.0], [np.array([0.5, 1.0])])


@pytest.fixture(scope="session")
def H_uniform():
    return PiecewisePolyDist.uniform(0.0, 0.18)


@pytest.fixture(scope="session")
def H_convex():
    # H(c) = (c/0.3)^2, density 2c/0.09 on [0, 0.3]
    return PiecewisePolyDist([0.0, 0.3], [np.array([0.0, 2.0 / 0.09])])


@pytest.fixture(scope="session")
def H_step():
    # piecewise-constant densities 4, 0.8, 4.4 on [0,.1], (.1,.3], (.3,.4]
    return PiecewisePolyDist(
        [0.0, 0.1, 0.3, 0.4],
        [np.array([4.0]), np.array([0.8]), np.array([4.4])],
    )


@pytest.fixture(scope="session")
def H_bimodal():
    # densities 8, 0.4, 7, 0.5 on [0,.1], (.1,.15], (.15,.17], (.17,.25]
    return PiecewisePolyDist(
        [0.0, 0.1, 0.15, 0.17, 0.25],
        [np.array([8.0]), np.array([0.4]), np.array([7.0]), np.array([0.5])],
    )


@pytest.fixture(scope="session")
def H_threestep():
    # interior dip with the smallest critical minimum between 1/mean and
    # 1/cbar: densities 8, 1, 10.4 on [0,.05], (.05,.13], (.13,.18]
    return PiecewisePolyDist(
        [0.0, 0.05, 0.13, 0.18],
        [np.array([8.0]), np.array([1.0]), np.array([10.4])],
    )


def quasi_convex_pair(cbar: float = 0.18):
    """Two symmetric dip densities h = gamma + beta (c - cbar/2)^2; the
    larger beta is the mean-preserving spread of the smaller."""
    out = []
    for beta in (300.0, 600.0):
        gamma = (1.0 - beta * cbar**3 / 12.0) / cbar
        out.append(
            PiecewisePolyDist(
                [0.0, cbar],
                [np.array([gamma + beta * (cbar / 2) ** 2, -beta * cbar, beta])],
            )
        )
    return out


def quasi_concave_pair(cbar: float = 0.18):
    """Two symmetric peak densities h = A + B c (cbar - c); the smaller B is
    the mean-preserving spread (flatter) of the larger."""
    out = []
    for B in (500.0, 250.0):
        A = (1.0 - B * cbar**3 / 6.0) / cbar
        out.append(PiecewisePolyDist([0.0, cbar], [np.array([A, B * cbar, -B])]))
    return out


def ramp_costs(cbar: float, k: int) -> PiecewisePolyDist:
    """Mass 1 - 1/k uniform on the top (1/k)-fraction of [0, cbar]."""
    cut = cbar * (1.0 - 1.0 / k)
    return PiecewisePolyDist(
        [0.0, cut, cbar],
        [np.array([(1.0 / k) / cut]), np.array([(1.0 - 1.0 / k) / (cbar - cut)])],
    )
