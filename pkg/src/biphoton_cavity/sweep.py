"""Parameter sweeps: entropy vs coupling strength, cavity detuning, and pump
bandwidth, with the input-state and empty-cavity reference entropies carried
alongside every result.

Sweep points are independent pure computations; rows come out sorted by
(series value, sweep value) so results are deterministic.
"""

import dataclasses
from dataclasses import dataclass

import numpy as np

from .cavity import CavityModel, transfer_for
from .config import SimConfig
from .grid import omega_from_wavelength
from .pipeline import (
    detuned_cavity_center_omega,
    grid_from_config,
    input_state_from_config,
)
from .schmidt import entropy_of
from .state import apply_idler_transfer

SWEEP_PARAMETERS = ("coupling_ratio", "cavity_detuning_nm", "pump_bandwidth_nm")

# Bracketing defaults: the resolved-polariton boundary sits at coupling
# ratio 0.5, and the couplings of interest for the bandwidth comparison
# cluster between 0.75 and 2.
DEFAULT_COUPLING_VALUES = tuple(np.round(np.arange(0.5, 3.0 + 1e-9, 0.05), 10))
DEFAULT_DETUNING_SERIES = (-4.0, -2.0, 0.0, 2.0, 4.0)
DEFAULT_BANDWIDTH_VALUES = tuple(np.round(np.arange(0.5, 10.0 + 1e-9, 0.25), 10))
DEFAULT_COUPLING_SERIES = (0.75, 1.0, 1.35, 2.0)


@dataclass(frozen=True)
class SweepPlan:
    """A swept parameter, its values, and an optional small series parameter."""

    base_config: SimConfig
    swept_parameter: str
    values: tuple[float, ...]
    series_parameter: str | None = None
    series_values: tuple[float, ...] = ()

    def __post_init__(self):
        if self.swept_parameter not in SWEEP_PARAMETERS:
            raise ValueError(f"unknown swept parameter {self.swept_parameter!r}")
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("sweep needs at least one value")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if self.swept_parameter in ("coupling_ratio", "pump_bandwidth_nm") and values[0] <= 0.0:
            raise ValueError(f"{self.swept_parameter} values must be positive")
        object.__setattr__(self, "values", values)
        if self.series_parameter is not None:
            if self.series_parameter not in SWEEP_PARAMETERS:
                raise ValueError(f"unknown series parameter {self.series_parameter!r}")
            if not self.series_values:
                raise ValueError("series parameter given without series values")
        object.__setattr__(self, "series_values", tuple(float(v) for v in self.series_values))


@dataclass(frozen=True)
class SweepRow:
    series_value: float
    sweep_value: float
    entropy: float
    delta_vs_input: float
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class ReferenceRow:
    """Per-sweep-value reference entropy (input state or empty cavity)."""

    kind: str
    sweep_value: float
    entropy: float


@dataclass(frozen=True)
class SweepResult:
    plan: SweepPlan
    rows: tuple[SweepRow, ...]
    input_entropy: float
    empty_cavity_entropy: float
    reference_rows: tuple[ReferenceRow, ...] = ()

    def series(self, series_value: float) -> list[SweepRow]:
        return [r for r in self.rows if r.series_value == series_value]


@dataclass(frozen=True)
class Crossing:
    """Interpolated sweep value where the output entropy first reaches the
    input entropy; boundary=True when already above at the first sample."""

    value: float
    boundary: bool = False


def _dicke_model(config: SimConfig, coupling_ratio: float, detuning_nm: float) -> CavityModel:
    c = config.cavity
    gamma = 1.0 / c.lifetime_fs
    return CavityModel(
        kind="dicke",
        omega_0=detuned_cavity_center_omega(c.emitter_nm, detuning_nm),
        gamma=gamma,
        lambda_c=coupling_ratio * gamma,
        omega_e=omega_from_wavelength(c.emitter_nm),
        gamma_e=c.emitter_damping_ratio * gamma,
    )


def _empty_model(config: SimConfig) -> CavityModel:
    c = config.cavity
    return CavityModel(
        kind="two_sided",
        omega_0=omega_from_wavelength(c.center_nm),
        gamma=1.0 / c.lifetime_fs,
    )


def _reference_entropies(config: SimConfig, state) -> tuple[float, float]:
    grid = grid_from_config(config)
    empty_curve = transfer_for(_empty_model(config), grid.idler_axis)
    return entropy_of(state), entropy_of(apply_idler_transfer(state, empty_curve))


def run_coupling_sweep(plan: SweepPlan) -> SweepResult:
    """Entropy of the dicke-transformed state per (detuning series, coupling).

    The base config must select a dicke cavity.  Rows carry the
    weak-coupling flag below the resolved-polariton boundary.
    """
    if plan.swept_parameter != "coupling_ratio":
        raise ValueError("plan does not sweep coupling_ratio")
    if plan.base_config.cavity.kind != "dicke":
        raise ValueError("coupling sweep requires a dicke cavity in the base config")
    series = plan.series_values if plan.series_parameter else (0.0,)
    if plan.series_parameter not in (None, "cavity_detuning_nm"):
        raise ValueError("coupling sweep series must be cavity_detuning_nm")

    config = plan.base_config
    grid = grid_from_config(config)
    state = input_state_from_config(config, grid)
    input_entropy, empty_entropy = _reference_entropies(config, state)

    rows = []
    for detuning in series:
        for ratio in plan.values:
            model = _dicke_model(config, ratio, detuning)
            curve = transfer_for(model, grid.idler_axis)
            entropy = entropy_of(apply_idler_transfer(state, curve))
            rows.append(
                SweepRow(
                    series_value=detuning,
                    sweep_value=ratio,
                    entropy=entropy,
                    delta_vs_input=entropy - input_entropy,
                    flags=curve.flags,
                )
            )
    return SweepResult(
        plan=plan,
        rows=tuple(rows),
        input_entropy=input_entropy,
        empty_cavity_entropy=empty_entropy,
    )


def run_detuning_sweep(plan: SweepPlan) -> SweepResult:
    """Entropy per cavity detuning at fixed coupling; emitter stays put."""
    if plan.swept_parameter != "cavity_detuning_nm":
        raise ValueError("plan does not sweep cavity_detuning_nm")
    if plan.base_config.cavity.kind != "dicke":
        raise ValueError("detuning sweep requires a dicke cavity in the base config")
    series = plan.series_values if plan.series_parameter else (plan.base_config.cavity.coupling_ratio,)
    if plan.series_parameter not in (None, "coupling_ratio"):
        raise ValueError("detuning sweep series must be coupling_ratio")

    config = plan.base_config
    grid = grid_from_config(config)
    state = input_state_from_config(config, grid)
    input_entropy, empty_entropy = _reference_entropies(config, state)

    rows = []
    for ratio in series:
        for detuning in plan.values:
            model = _dicke_model(config, ratio, detuning)
            curve = transfer_for(model, grid.idler_axis)
            entropy = entropy_of(apply_idler_transfer(state, curve))
            rows.append(
                SweepRow(
                    series_value=ratio,
                    sweep_value=detuning,
                    entropy=entropy,
                    delta_vs_input=entropy - input_entropy,
                    flags=curve.flags,
                )
            )
    return SweepResult(
        plan=plan,
        rows=tuple(rows),
        input_entropy=input_entropy,
        empty_cavity_entropy=empty_entropy,
    )


def run_pump_bandwidth_sweep(plan: SweepPlan) -> SweepResult:
    """Entropy per (coupling series, pump bandwidth), with per-bandwidth
    input-state and empty-cavity reference rows over the same values."""
    if plan.swept_parameter != "pump_bandwidth_nm":
        raise ValueError("plan does not sweep pump_bandwidth_nm")
    if plan.series_parameter not in (None, "coupling_ratio"):
        raise ValueError("pump bandwidth sweep series must be coupling_ratio")
    base = plan.base_config
    if base.cavity.kind != "dicke":
        raise ValueError("pump bandwidth sweep requires a dicke cavity in the base config")
    series = plan.series_values if plan.series_parameter else (base.cavity.coupling_ratio,)

    grid = grid_from_config(base)
    empty_curve = transfer_for(_empty_model(base), grid.idler_axis)

    rows = []
    reference_rows = []
    for bandwidth in plan.values:
        config = dataclasses.replace(
            base, pump=dataclasses.replace(base.pump, bandwidth_nm=bandwidth)
        )
        state = input_state_from_config(config, grid)
        s_in = entropy_of(state)
        s_empty = entropy_of(apply_idler_transfer(state, empty_curve))
        reference_rows.append(ReferenceRow("input", bandwidth, s_in))
        reference_rows.append(ReferenceRow("empty_cavity", bandwidth, s_empty))
        for ratio in series:
            model = _dicke_model(config, ratio, 0.0)
            curve = transfer_for(model, grid.idler_axis)
            entropy = entropy_of(apply_idler_transfer(state, curve))
            rows.append(
                SweepRow(
                    series_value=ratio,
                    sweep_value=bandwidth,
                    entropy=entropy,
                    delta_vs_input=entropy - s_in,
                    flags=curve.flags,
                )
            )
    rows.sort(key=lambda r: (r.series_value, r.sweep_value))

    base_state = input_state_from_config(base, grid)
    input_entropy, empty_entropy = _reference_entropies(base, base_state)
    return SweepResult(
        plan=plan,
        rows=tuple(rows),
        input_entropy=input_entropy,
        empty_cavity_entropy=empty_entropy,
        reference_rows=tuple(reference_rows),
    )


def find_entropy_crossing(result: SweepResult, series_value: float) -> Crossing | None:
    """Sweep value where the output entropy first crosses the input entropy.

    Linear interpolation between adjacent samples; None when the output stays
    below the input over the whole range; flagged boundary when the first
    sample is already at or above it.
    """
    rows = result.series(series_value)
    if len(rows) < 2:
        raise ValueError("crossing detection needs at least 2 rows in the series")
    rows = sorted(rows, key=lambda r: r.sweep_value)
    deltas = [r.delta_vs_input for r in rows]
    if deltas[0] >= 0.0:
        return Crossing(value=rows[0].sweep_value, boundary=True)
    for (row_a, row_b) in zip(rows, rows[1:]):
        if row_a.delta_vs_input < 0.0 <= row_b.delta_vs_input:
            span = row_b.delta_vs_input - row_a.delta_vs_input
            t = -row_a.delta_vs_input / span
            return Crossing(value=row_a.sweep_value + t * (row_b.sweep_value - row_a.sweep_value))
    return None
