"""Sources and linear optical elements for bright two-mode squeezed beams.

The source model is a nondegenerate parametric amplifier seeded far above
threshold of detection: a bright coherent amplitude ``alpha`` on each of two
orthogonally polarized modes, with two-mode squeezing between them.  In the
deamplification regime the sum of amplitude quadratures and the difference
of phase quadratures are squeezed::

    Var((X_a + X_b)/sqrt 2) = Var((Y_a - Y_b)/sqrt 2) = e^(-2r)

Amplification mirrors the correlations (difference of X, sum of Y).

Wave plates act on the two polarization modes through their Jones matrix,
lifted to a symplectic matrix on the four quadratures.  Two conventions are
fixed here and relied on by everything downstream:

* quarter-wave plate at 0 deg leaves the first (signal) mode untouched and
  retards the second (idler) by a quarter wave: ``(a, b) -> (a, i b)``;
* the half-wave stage is modeled as its equivalent polarization rotation,
  ``U(theta) = R(2 theta)``.  A physical half-wave retarder realizes the same
  mode decomposition only up to per-port phases, which are unobservable in
  direct photodetection; dropping them makes the composed plate pair land
  exactly on the canonical splitting ``p = (a - ib)/sqrt 2``,
  ``s = (a + ib)/sqrt 2`` at (22.5 deg, 0 deg).  The true pi retarder is
  still available as two quarter-wave plates or ``phase_shift(pi)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .gaussian import (
    GaussianState,
    ModeRegistry,
    SymplecticOp,
    check_physicality,
    compose,
    displace,
    new_vacuum,
)

__all__ = [
    "PumpPhase",
    "SourceSpec",
    "WavePlateKind",
    "WavePlateSpec",
    "nopa_source",
    "jones_to_symplectic",
    "quarter_wave_plate",
    "half_wave_plate",
    "qwp",
    "hwp",
    "measurement_chain",
    "pbs",
    "phase_shift",
    "loss_channel",
    "bright_pair",
]


class PumpPhase(enum.Enum):
    """Relative phase of pump and seed: which quadrature pair is squeezed."""

    DEAMPLIFICATION = "deamp"
    AMPLIFICATION = "amp"


@dataclass(frozen=True)
class SourceSpec:
    """Parameters of the bright twin-beam source.

    Parameters
    ----------
    alpha:
        Coherent amplitude of each beam (real, >= 0).  Mean photon number
        per beam is ``alpha**2``.
    r:
        Squeezing parameter (>= 0); ``r = 0`` is a pair of coherent states.
    pump_phase:
        Deamplification squeezes (X_a + X_b, Y_a - Y_b); amplification
        squeezes the mirrored combinations.
    excess_noise:
        Isotropic technical noise added to every quadrature variance
        before the efficiency loss is applied (>= 0, vacuum units).
    efficiency:
        Overall source escape/detection efficiency in (0, 1], applied as a
        loss channel to both modes.
    """

    alpha: float = 100.0
    r: float = 1.0
    pump_phase: PumpPhase = PumpPhase.DEAMPLIFICATION
    excess_noise: float = 0.0
    efficiency: float = 1.0

    def __post_init__(self) -> None:
        if not (self.alpha >= 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be finite and >= 0, got {self.alpha}")
        if not (self.r >= 0.0 and math.isfinite(self.r)):
            raise ValueError(f"r must be finite and >= 0, got {self.r}")
        if not isinstance(self.pump_phase, PumpPhase):
            raise ValueError(f"pump_phase must be a PumpPhase, got {self.pump_phase!r}")
        if not (self.excess_noise >= 0.0 and math.isfinite(self.excess_noise)):
            raise ValueError(f"excess_noise must be finite and >= 0, got {self.excess_noise}")
        if not (0.0 < self.efficiency <= 1.0):
            raise ValueError(f"efficiency must be in (0, 1], got {self.efficiency}")


def nopa_source(
    spec: SourceSpec, labels: tuple[str, str] = ("signal", "idler")
) -> GaussianState:
    """Bright two-mode squeezed state on two labeled modes.

    Excess noise is added at the source, then the efficiency acts as a loss
    channel on both modes, so the delivered amplitude is
    ``sqrt(efficiency) * alpha`` and e.g. the squeezed sum variance is
    ``efficiency * (e^(-2r) + excess_noise) + (1 - efficiency)``.
    """
    if len(labels) != 2:
        raise ValueError("nopa_source needs exactly two mode labels")
    ch, sh = math.cosh(2.0 * spec.r), math.sinh(2.0 * spec.r)
    if spec.pump_phase is PumpPhase.DEAMPLIFICATION:
        x_cross, y_cross = -sh, +sh
    else:
        x_cross, y_cross = +sh, -sh
    cov = np.array(
        [
            [ch, 0.0, x_cross, 0.0],
            [0.0, ch, 0.0, y_cross],
            [x_cross, 0.0, ch, 0.0],
            [0.0, y_cross, 0.0, ch],
        ]
    )
    cov = cov + spec.excess_noise * np.eye(4)
    mean = np.array([2.0 * spec.alpha, 0.0, 2.0 * spec.alpha, 0.0])
    state = GaussianState(ModeRegistry(tuple(labels)), mean, cov)
    for label in labels:
        state = loss_channel(state, label, spec.efficiency)
    report = check_physicality(state)
    if not report.passed:  # defensive: cannot happen for valid parameters
        raise ValueError(f"source state failed physicality: min nu = {report.min_eigenvalue}")
    return state


class WavePlateKind(enum.Enum):
    QUARTER = "quarter"
    HALF = "half"


@dataclass(frozen=True)
class WavePlateSpec:
    """A wave plate: retardance kind plus fast-axis angle in degrees.

    The angle is normalized to [0, 180); a plate is invariant under a
    180 deg rotation of its axes.
    """

    kind: WavePlateKind
    fast_axis_angle_deg: float

    def __post_init__(self) -> None:
        if not isinstance(self.kind, WavePlateKind):
            raise ValueError(f"kind must be a WavePlateKind, got {self.kind!r}")
        if not math.isfinite(self.fast_axis_angle_deg):
            raise ValueError("fast_axis_angle_deg must be finite")
        object.__setattr__(
            self, "fast_axis_angle_deg", float(self.fast_axis_angle_deg) % 180.0
        )


def jones_to_symplectic(u: np.ndarray) -> np.ndarray:
    """Lift a complex mode transformation ``a'_j = sum_k U_jk a_k`` to quadratures.

    Each complex entry ``u + iv`` becomes the 2x2 real block
    ``[[u, -v], [v, u]]`` acting on that mode's (X, Y) pair; unitary U gives
    a symplectic (in fact orthogonal-symplectic) matrix.
    """
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    if u.shape != (n, n):
        raise ValueError(f"mode matrix must be square, got {u.shape}")
    s = np.zeros((2 * n, 2 * n))
    re, im = np.real(u), np.imag(u)
    s[0::2, 0::2] = re
    s[1::2, 1::2] = re
    s[1::2, 0::2] = im
    s[0::2, 1::2] = -im
    return s


def _rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def quarter_wave_plate(
    spec: WavePlateSpec, labels: tuple[str, str] = ("signal", "idler")
) -> SymplecticOp:
    """Quarter-wave plate; at 0 deg the idler picks up the quarter-wave phase."""
    if spec.kind is not WavePlateKind.QUARTER:
        raise ValueError(f"expected a quarter-wave spec, got kind={spec.kind.value!r}")
    theta = math.radians(spec.fast_axis_angle_deg)
    u = _rotation(theta) @ np.diag([1.0, 1.0j]) @ _rotation(-theta)
    return SymplecticOp(jones_to_symplectic(u), tuple(labels))


def half_wave_plate(
    spec: WavePlateSpec, labels: tuple[str, str] = ("signal", "idler")
) -> SymplecticOp:
    """Half-wave stage as its equivalent polarization rotation ``R(2 theta)``.

    See the module docstring: per-port retarder phases are dropped, which
    is what makes ``compose(hwp(22.5), qwp(0))`` equal the canonical
    ``(a, b) -> ((a - ib)/sqrt 2, (a + ib)/sqrt 2)`` splitting exactly.
    At 45 deg the polarizations swap (up to sign); at 0 deg this stage is
    the identity.
    """
    if spec.kind is not WavePlateKind.HALF:
        raise ValueError(f"expected a half-wave spec, got kind={spec.kind.value!r}")
    theta = math.radians(spec.fast_axis_angle_deg)
    u = _rotation(2.0 * theta).astype(complex)
    return SymplecticOp(jones_to_symplectic(u), tuple(labels))


def qwp(angle_deg: float, labels: tuple[str, str] = ("signal", "idler")) -> SymplecticOp:
    return quarter_wave_plate(WavePlateSpec(WavePlateKind.QUARTER, angle_deg), labels)


def hwp(angle_deg: float, labels: tuple[str, str] = ("signal", "idler")) -> SymplecticOp:
    return half_wave_plate(WavePlateSpec(WavePlateKind.HALF, angle_deg), labels)


def measurement_chain(
    hwp_angle_deg: float = 22.5,
    qwp_angle_deg: float = 0.0,
    labels_in: tuple[str, str] = ("signal", "idler"),
    labels_out: tuple[str, str] = ("p", "s"),
) -> SymplecticOp:
    """Quarter-wave plate followed by the half-wave stage, ports renamed.

    At the nominal angles (22.5 deg, 0 deg) the composite maps the source
    modes onto the +/-45 deg circular-mixed pair
    ``p = (a - ib)/sqrt 2``, ``s = (a + ib)/sqrt 2``.
    """
    chain = compose(hwp(hwp_angle_deg, labels_in), qwp(qwp_angle_deg, labels_in))
    return chain.renamed(tuple(labels_out))


def pbs(
    labels_in: tuple[str, str, str, str] = ("p", "s", "vac_c", "vac_d"),
    labels_out: tuple[str, str, str, str] = ("c", "d", "c_rej", "d_rej"),
    extinction_angle: float = 0.0,
) -> SymplecticOp:
    """Polarizing beam splitter routing two polarizations to two output ports.

    Inputs are (transmitted pol, reflected pol, vacuum behind port c,
    vacuum behind port d).  An ideal splitter (``extinction_angle = 0``) is
    a pure relabeling: port c carries the first input's statistics, port d
    the second's.  Finite extinction mixes each signal with its companion
    vacuum port by the given angle (radians).
    """
    if len(labels_in) != 4 or len(labels_out) != 4:
        raise ValueError("pbs wires exactly four modes (two signals, two vacua)")
    c, s = math.cos(extinction_angle), math.sin(extinction_angle)
    u = np.array(
        [
            [c, 0.0, s, 0.0],
            [0.0, c, 0.0, s],
            [-s, 0.0, c, 0.0],
            [0.0, -s, 0.0, c],
        ],
        dtype=complex,
    )
    return SymplecticOp(jones_to_symplectic(u), tuple(labels_in), tuple(labels_out))


def phase_shift(labels: str | tuple[str, ...], theta: float) -> SymplecticOp:
    """Optical phase ``a -> e^(i theta) a`` on one or several modes."""
    if isinstance(labels, str):
        labels = (labels,)
    labels = tuple(labels)
    u = np.diag([complex(math.cos(theta), math.sin(theta))] * len(labels))
    return SymplecticOp(jones_to_symplectic(u), labels)


def loss_channel(state: GaussianState, label: str, efficiency: float) -> GaussianState:
    """Pure-loss channel of transmission ``efficiency`` on one mode.

    Mean scales by sqrt(efficiency); the mode's covariance block relaxes
    toward vacuum, ``block -> eta block + (1 - eta) I``; cross-covariances
    scale by sqrt(eta).  ``efficiency = 0`` replaces the mode by vacuum.
    """
    if not (0.0 <= efficiency <= 1.0):
        raise ValueError(f"efficiency must be in [0, 1], got {efficiency}")
    i = state.registry.x_index(label)
    sl = slice(i, i + 2)
    root = math.sqrt(efficiency)
    mean = np.array(state.mean)
    cov = np.array(state.cov)
    mean[sl] *= root
    cov[sl, :] *= root
    cov[:, sl] *= root
    cov[sl, sl] += (1.0 - efficiency) * np.eye(2)
    return GaussianState(state.registry, mean, cov)


def bright_pair(
    alpha: float, labels: tuple[str, str] = ("signal", "idler")
) -> GaussianState:
    """Two independent coherent beams of equal real amplitude (r = 0 source)."""
    state = new_vacuum(labels)
    for label in labels:
        state = displace(state, label, alpha)
    return state
