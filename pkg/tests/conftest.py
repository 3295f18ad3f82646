import pytest

from acdopt import ModelParams


@pytest.fixture
def two_root_params():
    """a - b = 1, k_B z = 1/8: two interior defender roots."""
    return ModelParams(a=1.0, b=0.0, alpha_R=0.5, z=0.5, k_B=0.25)


@pytest.fixture
def game_params():
    """k_B z = 1/8, k_R z = 1/6: both players in the two-roots regime."""
    return ModelParams(a=1.0, b=0.0, alpha_R=0.5, z=0.5, k_B=0.25, k_R=1.0 / 3.0)
