import pytest

from generators import illustrative_system as build_illustrative
from linalg import Rng
from solver import EquationOrder, Mode, SolverConfig


@pytest.fixture
def rng():
    return Rng(0)


@pytest.fixture
def illustrative_system():
    return build_illustrative()


@pytest.fixture
def solver_config():
    return SolverConfig(seed=0, mode=Mode.ALL, worker_count=1, equation_order=EquationOrder.GIVEN)
