"""Complex idler transfer functions from input-output theory.

Three cavity kinds are supported:

* one_sided  -- all-pass: C = (g/2 - i d) / (g/2 + i d), |C| = 1
* two_sided  -- Lorentzian: C = g / (g + i d)
* dicke      -- cavity mode linearly coupled to a collective emitter mode:
                C = g / (g + i d + lam^2 / (i (w - w_e)))

with d = w - w_0 and g the external coupling rate (inverse photon
lifetime).  The dicke response carries an exact transmission zero and a pi
phase discontinuity at the emitter frequency.
"""

from dataclasses import dataclass, field

import numpy as np

CAVITY_KINDS = ("one_sided", "two_sided", "dicke")


@dataclass(frozen=True)
class CavityModel:
    """Parameters of an idler-arm microcavity.

    gamma is the external coupling rate in rad/fs (photon lifetime 1/gamma).
    lambda_c and omega_e only apply to the dicke kind; lambda_c is the
    collective (sqrt(N)-normalized) light-matter coupling.  gamma_e is an
    optional emitter-damping extension beyond the standard damping-free
    model; outputs produced with gamma_e > 0 are flagged.
    """

    kind: str
    omega_0: float
    gamma: float
    lambda_c: float = 0.0
    omega_e: float | None = None
    gamma_e: float = 0.0

    def __post_init__(self):
        if self.kind not in CAVITY_KINDS:
            raise ValueError(f"unknown cavity kind {self.kind!r}")
        if not (self.gamma > 0.0 and np.isfinite(self.gamma)):
            raise ValueError("gamma must be positive and finite")
        if not (self.omega_0 > 0.0 and np.isfinite(self.omega_0)):
            raise ValueError("omega_0 must be positive and finite")
        if self.kind == "dicke":
            if self.lambda_c < 0.0 or not np.isfinite(self.lambda_c):
                raise ValueError("lambda_c must be non-negative and finite")
            if self.omega_e is None or self.omega_e <= 0.0:
                raise ValueError("dicke cavity requires a positive emitter frequency")
            # Guard well below the superradiant critical point of the Dicke
            # model, lambda_crit = sqrt(omega_0 * omega_e) / 2.
            if self.lambda_c >= 0.5 * np.sqrt(self.omega_0 * self.omega_e):
                raise ValueError("lambda_c is at or beyond the Dicke critical point")
            if self.gamma_e < 0.0:
                raise ValueError("gamma_e must be non-negative")

    @property
    def strong_coupling(self) -> bool:
        """True when lambda_c exceeds gamma/2 (resolved-polariton regime)."""
        return self.kind == "dicke" and self.lambda_c > self.gamma / 2.0

    def flags(self) -> tuple[str, ...]:
        out = []
        if self.kind == "dicke" and not self.strong_coupling:
            out.append("weak_coupling")
        if self.gamma_e > 0.0:
            out.append("extension:emitter_damping")
        return tuple(out)


@dataclass(frozen=True)
class TransferCurve:
    """Sampled complex C(omega) with derived transmission and unwrapped phase."""

    axis: np.ndarray
    values: np.ndarray
    transmission: np.ndarray = field(init=False)
    phase: np.ndarray = field(init=False)
    flags: tuple[str, ...] = ()
    _phase_split: float | None = None

    def __post_init__(self):
        axis = np.array(self.axis, dtype=float, order="C")
        values = np.array(self.values, dtype=complex, order="C")
        if axis.ndim != 1 or values.shape != axis.shape:
            raise ValueError("axis and values must be matching 1-d arrays")
        if np.any(np.diff(axis) <= 0.0):
            raise ValueError("axis must be strictly increasing")
        transmission = np.abs(values) ** 2
        if np.any(transmission > 1.0 + 1e-9):
            raise ValueError("transmission exceeds 1 beyond tolerance")
        phase = _unwrap_phase(axis, values, self._phase_split)
        for arr in (axis, values, transmission, phase):
            arr.setflags(write=False)
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "transmission", transmission)
        object.__setattr__(self, "phase", phase)


def _unwrap_phase(axis, values, split):
    """Cumulative unwrapping; with a split point the two sides are unwrapped
    independently so a physical discontinuity there survives."""
    raw = np.angle(values)
    if split is None:
        return np.unwrap(raw)
    left = axis < split
    right = axis > split
    out = raw.copy()
    out[left] = np.unwrap(raw[left])
    out[right] = np.unwrap(raw[right])
    return out


def one_sided_transfer(model: CavityModel, axis: np.ndarray) -> TransferCurve:
    """All-pass response of a cavity with loss through a single mirror."""
    if model.kind != "one_sided":
        raise ValueError(f"one_sided_transfer called with kind {model.kind!r}")
    d = np.asarray(axis, dtype=float) - model.omega_0
    half = model.gamma / 2.0
    values = (half - 1j * d) / (half + 1j * d)
    return TransferCurve(axis=axis, values=values, flags=model.flags())


def two_sided_transfer(model: CavityModel, axis: np.ndarray) -> TransferCurve:
    """Lorentzian transmission of a cavity with equally leaky mirrors.

    C(omega_0) = 1 and |C|^2 has FWHM 2*gamma in angular frequency.
    """
    if model.kind != "two_sided":
        raise ValueError(f"two_sided_transfer called with kind {model.kind!r}")
    d = np.asarray(axis, dtype=float) - model.omega_0
    values = model.gamma / (model.gamma + 1j * d)
    return TransferCurve(axis=axis, values=values, flags=model.flags())


def dicke_transfer(model: CavityModel, axis: np.ndarray) -> TransferCurve:
    """Response of the cavity strongly coupled to a collective emitter mode.

    At zero detuning the transmission shows unit-height polariton peaks at
    omega_0 +/- lambda_c and an exact zero at the emitter frequency, where
    the phase jumps by pi.  With lambda_c = 0 the curve reduces to the
    two-sided response.
    """
    if model.kind != "dicke":
        raise ValueError(f"dicke_transfer called with kind {model.kind!r}")
    w = np.asarray(axis, dtype=float)
    d = w - model.omega_0
    if model.lambda_c == 0.0:
        values = model.gamma / (model.gamma + 1j * d)
        return TransferCurve(axis=axis, values=values, flags=model.flags())
    de = w - model.omega_e
    at_emitter = de == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        self_energy = model.lambda_c**2 / (1j * de + model.gamma_e / 2.0)
        values = model.gamma / (model.gamma + 1j * d + self_energy)
    if model.gamma_e == 0.0:
        # Defined limit at the pole: |C| -> 0 from both sides.
        values[at_emitter] = 0.0
    split = model.omega_e if model.gamma_e == 0.0 else None
    return TransferCurve(axis=axis, values=values, flags=model.flags(), _phase_split=split)


def transfer_for(model: CavityModel, axis: np.ndarray) -> TransferCurve:
    """Dispatch to the transfer function matching the model kind."""
    if model.kind == "one_sided":
        return one_sided_transfer(model, axis)
    if model.kind == "two_sided":
        return two_sided_transfer(model, axis)
    return dicke_transfer(model, axis)


def phase_step_sharpness(model: CavityModel, axis: np.ndarray) -> float:
    """Width (rad/fs) of the central pi phase transition across the emitter line.

    The unwrapped phase approaches -pi/2 just below the emitter frequency and
    +pi/2 just above it.  The returned width is the distance between the
    10% and 90% levels of that step (phase = -0.4 pi on the left, +0.4 pi on
    the right), each located by linear interpolation on the sampled curve.
    The width grows with lambda_c/gamma: a larger self-energy pushes the
    +-pi/2 approach region outward.
    """
    if model.kind != "dicke":
        raise ValueError("phase step sharpness is defined for dicke cavities")
    if model.lambda_c <= 0.0:
        raise ValueError("phase step sharpness requires lambda_c > 0")
    curve = dicke_transfer(model, axis)
    w = curve.axis
    left = w < model.omega_e
    right = w > model.omega_e
    if left.sum() < 2 or right.sum() < 2:
        raise ValueError("axis must bracket the emitter frequency")
    lo_level = -0.4 * np.pi
    hi_level = 0.4 * np.pi

    w_left = _crossing_nearest(w[left], curve.phase[left], lo_level, side="last")
    w_right = _crossing_nearest(w[right], curve.phase[right], hi_level, side="first")
    if w_left is None or w_right is None:
        raise ValueError("phase step not resolved on this axis; widen or refine it")
    return float(w_right - w_left)


def _crossing_nearest(x, y, level, side):
    """Interpolated x where y crosses `level`; first or last such crossing."""
    sign = np.sign(y - level)
    idx = np.nonzero(sign[:-1] * sign[1:] <= 0)[0]
    if idx.size == 0:
        return None
    i = idx[-1] if side == "last" else idx[0]
    y0, y1 = y[i], y[i + 1]
    if y1 == y0:
        return float(x[i])
    t = (level - y0) / (y1 - y0)
    return float(x[i] + t * (x[i + 1] - x[i]))
