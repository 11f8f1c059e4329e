import numpy as np
import pytest

from biphoton_cavity import (
    FilterSpec,
    PhaseMatchingSpec,
    PumpSpec,
    build_grid,
    compose_input_state,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def make_input_state(points=96, span_nm=40.0, pump_nm=6.0, filter_nm=8.0,
                     convention="at_degeneracy"):
    """Reference-configuration input state on a reduced grid, for fast unit tests."""
    grid = build_grid(685.0, span_nm, points)
    pump = PumpSpec(685.0, pump_nm, bandwidth_convention=convention)
    filt = FilterSpec(685.0, filter_nm)
    return compose_input_state(pump, PhaseMatchingSpec("flat"), filt, filt, grid)
