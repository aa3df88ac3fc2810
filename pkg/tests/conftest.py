import numpy as np
import pytest

import vectorvortex as vv


@pytest.fixture(scope="session")
def grid256():
    return vv.make_grid(256, 5.0)


@pytest.fixture(scope="session")
def grid128():
    return vv.make_grid(128, 5.0)


@pytest.fixture(scope="session")
def grid64():
    return vv.make_grid(64, 4.0)


def polarized_gaussian(grid, name, mode=0):
    """Uniformly polarized single-mode source, unit total power."""
    base = vv.lg_mode(grid, mode)
    jv = vv.basis(name)
    return vv.VectorField(
        vv.ScalarField(grid, base.amp * jv.h),
        vv.ScalarField(grid, base.amp * jv.v),
    )


def zero_field(grid):
    return vv.ScalarField(grid, np.zeros((grid.n, grid.n), dtype=complex))
