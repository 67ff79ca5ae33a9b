"""Linearized direct photodetection and RF current processing.

A photodiode on a bright mode measures the photon flux
``n = (X^2 + Y^2)/4 - 1/2``.  Around a mean ``(xbar, ybar)`` this
linearizes to a DC term plus a linear form in the quadrature fluctuations::

    n ~ dc + (xbar/2) dX + (ybar/2) dY
    dc = (xbar^2 + ybar^2)/4 - 1/2 + tr(mode covariance block)/4

The DC term is exact for Gaussian states (the symmetric-ordering offset of
-1/2 cancels the vacuum half of the covariance trace), while the dropped
quadratic fluctuation term contributes O(1) to variances — negligible
against the O(alpha^2) linear term for bright beams, and the reason a
brightness warning is raised for dim ones.

Each photocurrent is split on an RF power splitter: DC halves, fluctuation
amplitude scales by 1/sqrt 2 per output (noise power halves).  Sums and
differences of split currents then carry the collective quadratures of the
two input beams, e.g. at the nominal plate angles::

    var(i_sum)  = (alpha^2 / 2) var(dX_a + dX_b)
    var(i_diff) = (alpha^2 / 2) var(dY_a - dY_b)
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .gaussian import GaussianState, ModeRegistry, SymplecticOp, quadrature_variance

#: Mean photon number below which the linearization is considered dubious.
BRIGHTNESS_THRESHOLD = 100.0

__all__ = [
    "BRIGHTNESS_THRESHOLD",
    "LinearizationWarning",
    "LinearObservable",
    "direct_detect",
    "rf_split",
    "current_sum",
    "current_diff",
    "current_variance",
    "homodyne_variance",
    "pull_back",
]


class LinearizationWarning(UserWarning):
    """The detected mode is too dim for the linearized photocurrent model."""


@dataclass(frozen=True)
class LinearObservable:
    """An affine observable ``dc + coeffs . dq`` over a state's quadratures."""

    registry: ModeRegistry
    dc: float
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=float, copy=True)
        n = 2 * self.registry.n_modes
        if coeffs.shape != (n,):
            raise ValueError(f"coeffs must have shape ({n},), got {coeffs.shape}")
        if not (math.isfinite(self.dc) and np.all(np.isfinite(coeffs))):
            raise ValueError("observable dc/coeffs must be finite")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "dc", float(self.dc))


def _require_same_registry(a: ModeRegistry, b: ModeRegistry) -> None:
    if a.labels != b.labels:
        raise ValueError(
            f"observables/state live on different registries: {a.labels} vs {b.labels}"
        )


def direct_detect(state: GaussianState, label: str) -> LinearObservable:
    """Linearized photon-flux observable of one mode.

    Warns with :class:`LinearizationWarning` when the mode's mean photon
    number is below ``BRIGHTNESS_THRESHOLD``.
    """
    xbar, ybar = state.mode_mean(label)
    mean_photons = (xbar * xbar + ybar * ybar) / 4.0
    if mean_photons < BRIGHTNESS_THRESHOLD:
        warnings.warn(
            f"mode {label!r} has mean photon number {mean_photons:.3g} < "
            f"{BRIGHTNESS_THRESHOLD:g}; linearized photodetection is inaccurate",
            LinearizationWarning,
            stacklevel=2,
        )
    block = state.mode_cov(label)
    dc = mean_photons - 0.5 + float(np.trace(block)) / 4.0
    coeffs = np.zeros(2 * state.registry.n_modes)
    i = state.registry.x_index(label)
    coeffs[i] = xbar / 2.0
    coeffs[i + 1] = ybar / 2.0
    return LinearObservable(state.registry, dc, coeffs)


def rf_split(obs: LinearObservable) -> tuple[LinearObservable, LinearObservable]:
    """Split a current on an RF power splitter: DC/2, fluctuations / sqrt 2."""
    half = LinearObservable(obs.registry, obs.dc / 2.0, obs.coeffs / math.sqrt(2.0))
    return half, half


def current_sum(a: LinearObservable, b: LinearObservable) -> LinearObservable:
    """Sum of two currents (same registry)."""
    _require_same_registry(a.registry, b.registry)
    return LinearObservable(a.registry, a.dc + b.dc, a.coeffs + b.coeffs)


def current_diff(a: LinearObservable, b: LinearObservable) -> LinearObservable:
    """Difference of two currents (same registry)."""
    _require_same_registry(a.registry, b.registry)
    return LinearObservable(a.registry, a.dc - b.dc, a.coeffs - b.coeffs)


def current_variance(
    state: GaussianState, obs: LinearObservable, electronic_noise: float = 0.0
) -> float:
    """Variance of a linear current on a state, plus optional electronic noise."""
    _require_same_registry(state.registry, obs.registry)
    if electronic_noise < 0.0:
        raise ValueError(f"electronic_noise must be >= 0, got {electronic_noise}")
    return quadrature_variance(state, obs.coeffs) + electronic_noise


def homodyne_variance(state: GaussianState, label: str, theta: float) -> float:
    """Variance of the rotated quadrature ``X cos theta + Y sin theta``.

    The baseline this scheme replaces: a homodyne needs a phase-locked
    local oscillator to pin ``theta``.
    """
    coeffs = np.zeros(2 * state.registry.n_modes)
    i = state.registry.x_index(label)
    coeffs[i] = math.cos(theta)
    coeffs[i + 1] = math.sin(theta)
    return quadrature_variance(state, coeffs)


def pull_back(obs: LinearObservable, op: SymplecticOp) -> LinearObservable:
    """Express an observable on an op's output in the op's input quadratures.

    Fluctuations map as ``dq_out = S dq_in`` on the op's modes, so the
    coefficient vector pulls back through ``S^T``; the DC term is
    unchanged.  Useful to compare a detected current against collective
    source-quadrature patterns.
    """
    idx = obs.registry.quad_indices(op.labels_out)
    coeffs = np.array(obs.coeffs)
    coeffs[idx] = op.matrix.T @ obs.coeffs[idx]
    registry = obs.registry.renamed(op.labels_out, op.labels_in)
    return LinearObservable(registry, obs.dc, coeffs)
