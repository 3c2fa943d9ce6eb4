import pytest

from qheis.presets import params

PARAM_GRID = [(1, 1), (1, -1), (2, 3), (2, -3), (6, 4), (-2, 5)]


@pytest.fixture(params=PARAM_GRID, ids=lambda mn: f"m{mn[0]}n{mn[1]}")
def mn_params(request):
    return params(*request.param)


@pytest.fixture
def p11():
    return params(1, 1)
