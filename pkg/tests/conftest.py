import numpy as np
import pytest

from spin2.model import EffectiveParams, effective


def draw_effective(rng: np.random.Generator, with_phase: bool = True,
                   theta_max: float = 3.0) -> EffectiveParams:
    """Random effective parameter set in a generic (non-degenerate) range."""
    return effective(
        bar_delta1=rng.uniform(0.2, 2.0),
        bar_delta2=rng.uniform(0.2, 2.0),
        v=rng.uniform(0.05, 2.0),
        theta1=rng.uniform(0.0, theta_max),
        theta2=rng.uniform(0.0, theta_max),
        tan_K1=rng.uniform(0.0, 0.7) if with_phase else 0.0,
        tan_K2=rng.uniform(0.0, 0.7) if with_phase else 0.0,
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
