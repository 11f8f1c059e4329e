"""Glue from a SimConfig to grids, states, cavity models and entropies."""

from dataclasses import dataclass

import numpy as np

from .cavity import CavityModel, TransferCurve, transfer_for
from .config import SimConfig
from .grid import FrequencyGrid, build_grid, omega_from_wavelength
from .schmidt import entropy_of
from .state import (
    BiphotonAmplitude,
    FilterSpec,
    PhaseMatchingSpec,
    PumpSpec,
    apply_idler_transfer,
    compose_input_state,
)


def grid_from_config(config: SimConfig) -> FrequencyGrid:
    g = config.grid
    return build_grid(g.center_nm, g.span_nm, g.points)


def input_state_from_config(config: SimConfig, grid: FrequencyGrid | None = None) -> BiphotonAmplitude:
    grid = grid_from_config(config) if grid is None else grid
    pump = PumpSpec(
        center_wavelength=config.pump.center_down_nm,
        bandwidth_fwhm=config.pump.bandwidth_nm,
        bandwidth_convention=config.pump.bandwidth_convention,
    )
    pm = PhaseMatchingSpec(kind=config.phase_matching.kind, width_nm=config.phase_matching.width_nm)
    signal = FilterSpec(config.signal_filter.center_nm, config.signal_filter.fwhm_nm)
    idler = FilterSpec(config.idler_filter.center_nm, config.idler_filter.fwhm_nm)
    return compose_input_state(pump, pm, signal, idler, grid)


def cavity_model_from_config(config: SimConfig) -> CavityModel:
    c = config.cavity
    gamma = 1.0 / c.lifetime_fs
    return CavityModel(
        kind=c.kind,
        omega_0=omega_from_wavelength(c.center_nm),
        gamma=gamma,
        lambda_c=c.coupling_ratio * gamma if c.kind == "dicke" else 0.0,
        omega_e=omega_from_wavelength(c.emitter_nm) if c.kind == "dicke" else None,
        gamma_e=c.emitter_damping_ratio * gamma if c.kind == "dicke" else 0.0,
    )


def transfer_from_config(config: SimConfig, grid: FrequencyGrid) -> TransferCurve:
    return transfer_for(cavity_model_from_config(config), grid.idler_axis)


@dataclass(frozen=True)
class SingleRun:
    """Input and transformed states for one configuration, with entropies."""

    config: SimConfig
    input_state: BiphotonAmplitude
    output_state: BiphotonAmplitude
    curve: TransferCurve
    input_entropy: float
    output_entropy: float
    flags: tuple[str, ...]

    @property
    def entropy_delta(self) -> float:
        return self.output_entropy - self.input_entropy


def run_with_model(config: SimConfig, model: CavityModel) -> SingleRun:
    """Compose the input state, apply the given cavity model, measure entropies."""
    grid = grid_from_config(config)
    state = input_state_from_config(config, grid)
    curve = transfer_for(model, grid.idler_axis)
    output = apply_idler_transfer(state, curve)
    return SingleRun(
        config=config,
        input_state=state,
        output_state=output,
        curve=curve,
        input_entropy=entropy_of(state),
        output_entropy=entropy_of(output),
        flags=curve.flags,
    )


def run_single(config: SimConfig) -> SingleRun:
    """Compose the input state, apply the configured cavity, measure entropies."""
    return run_with_model(config, cavity_model_from_config(config))


def detuned_cavity_center_omega(emitter_nm: float, detuning_nm: float) -> float:
    """Cavity mode frequency displaced from the emitter line by detuning_nm.

    The nm offset converts at the emitter wavelength to first order
    (|d omega / d lambda| = omega/lambda); positive detuning shifts the
    cavity to higher frequency.
    """
    emitter_omega = omega_from_wavelength(emitter_nm)
    return emitter_omega + detuning_nm * (emitter_omega / emitter_nm)
