import pytest

from ptwell.model import CouplingParams

# parameter sets inside the physical domain, symmetric and lopsided couplings
PARAM_SETS = [
    CouplingParams(1.0, 1.0, 0.5),
    CouplingParams(0.5, 2.0, -0.3),
    CouplingParams(2.0, 0.3, 1.2),
]


@pytest.fixture(params=PARAM_SETS, ids=lambda p: f"X{p.X}-Y{p.Y}-Z{p.Z}")
def params(request):
    return request.param


@pytest.fixture
def unit_params():
    return CouplingParams(1.0, 1.0, 0.5)
