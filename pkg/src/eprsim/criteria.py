"""Inseparability criterion for the two-mode collective quadratures.

With vacuum variance 1 per quadrature, two modes are inseparable when::

    var((X_a + X_b)/sqrt 2) + var((Y_a - Y_b)/sqrt 2) < 2

(strictly: a total of exactly 2 — e.g. two coherent beams — is *not*
entangled).  For an amplification-phase source the squeezed combinations
are mirrored, ``(X_a - X_b, Y_a + Y_b)``; the orientation flag selects
which pair the report refers to.

The same total can be formed from the measured RF currents: at the nominal
plate angles ``var(i_sum) = alpha^2 v_plus`` and
``var(i_diff) = alpha^2 v_minus``, so dividing the current variances by the
calibrated mean photon number recovers the witness without any phase-locked
local oscillator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import GaussianState, quadrature_variance
from .optics import PumpPhase

#: Separability bound on the two-combination variance total.
DUAN_BOUND = 2.0

__all__ = ["DUAN_BOUND", "CriterionReport", "duan_sum", "duan_from_currents", "variance_db"]


@dataclass(frozen=True)
class CriterionReport:
    """Witness variances, their total, and the verdict.

    ``margin_db`` is ``10 log10(total / bound)``: negative means the bound
    is beaten (entangled), 0 sits exactly on it.
    """

    v_plus: float
    v_minus: float
    total: float
    bound: float
    entangled: bool
    margin_db: float
    orientation: PumpPhase

    def __post_init__(self) -> None:
        if self.v_plus < 0.0 or self.v_minus < 0.0:
            raise ValueError("witness variances must be >= 0")


def _report(v_plus: float, v_minus: float, orientation: PumpPhase) -> CriterionReport:
    total = v_plus + v_minus
    return CriterionReport(
        v_plus=v_plus,
        v_minus=v_minus,
        total=total,
        bound=DUAN_BOUND,
        entangled=bool(total < DUAN_BOUND),
        margin_db=variance_db(total / DUAN_BOUND) if total > 0.0 else -math.inf,
        orientation=orientation,
    )


def duan_sum(
    state: GaussianState,
    pair: tuple[str, str] = ("signal", "idler"),
    orientation: PumpPhase = PumpPhase.DEAMPLIFICATION,
) -> CriterionReport:
    """Witness evaluated directly on a state's covariance matrix.

    ``v_plus``/``v_minus`` are the variances of the normalized collective
    combinations; the combination signs follow ``orientation``.
    """
    a, b = pair
    n = 2 * state.registry.n_modes
    sx = 1.0 if orientation is PumpPhase.DEAMPLIFICATION else -1.0
    c_plus = np.zeros(n)
    c_plus[state.registry.x_index(a)] = 1.0
    c_plus[state.registry.x_index(b)] = sx
    c_minus = np.zeros(n)
    c_minus[state.registry.y_index(a)] = 1.0
    c_minus[state.registry.y_index(b)] = -sx
    # Integer combination vectors divided by 2 afterwards keep boundary
    # cases exact in floating point (identity covariance -> total == 2.0).
    v_plus = quadrature_variance(state, c_plus) / 2.0
    v_minus = quadrature_variance(state, c_minus) / 2.0
    return _report(v_plus, v_minus, orientation)


def duan_from_currents(
    v_sum_current: float,
    v_diff_current: float,
    alpha: float,
    orientation: PumpPhase = PumpPhase.DEAMPLIFICATION,
) -> CriterionReport:
    """Witness from measured RF current variances, normalized by ``alpha^2``.

    ``alpha`` is the calibrated per-beam coherent amplitude at the
    detectors (its square is the mean photon number inferred from the DC
    currents).
    """
    if not (alpha > 0.0 and math.isfinite(alpha)):
        raise ValueError(f"alpha must be finite and > 0, got {alpha}")
    if v_sum_current < 0.0 or v_diff_current < 0.0:
        raise ValueError("current variances must be >= 0")
    scale = alpha * alpha
    return _report(v_sum_current / scale, v_diff_current / scale, orientation)


def variance_db(v: float) -> float:
    """A variance ratio in decibels, ``10 log10(v)``; requires ``v > 0``."""
    if not (v > 0.0):
        raise ValueError(f"variance must be > 0 to express in dB, got {v}")
    return 10.0 * math.log10(v)
