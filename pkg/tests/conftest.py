import numpy as np
import pytest

import resgrow as rg


@pytest.fixture(scope="session")
def diag03():
    return np.diag([0.0 + 0j, 3.0 + 0j])


@pytest.fixture(scope="session")
def shift2():
    """Weighted cyclic shift with weights (2, 1), built through its inverse."""
    return rg.operator_from_inverse(rg.circulant_weighted_shift_inverse([2, 1]))


@pytest.fixture(scope="session")
def shift4():
    return rg.operator_from_inverse(rg.circulant_weighted_shift_inverse([2, 1, 1, 1]))


@pytest.fixture(scope="session")
def zigzag2():
    return rg.zigzag_diagonal(2)


@pytest.fixture(scope="session")
def zigzag4():
    return rg.zigzag_diagonal(4)
