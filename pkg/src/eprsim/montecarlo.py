"""Monte Carlo cross-checks of the linearized detection model.

Phase-space samples are drawn from the Gaussian quasi-probability
distribution ``N(mean, cov)`` of a state, and *exact* per-sample photon
fluxes ``n = (X^2 + Y^2)/4 - 1/2`` are accumulated — no linearization.
For Gaussian states the sample mean of this flux converges to the
linearized DC term exactly (the -1/2 offset cancels the vacuum half of the
covariance trace), while sample variances differ from the linearized
current variances by the dropped quadratic-fluctuation term: an O(1)
discrepancy against an O(alpha^2) signal, shrinking as 1/alpha^2.

Determinism: the sample stream is a pure function of the seed and the
batch size.  Each batch draws from its own child of
``numpy.random.SeedSequence(seed)`` and batches are reduced in a fixed
order, so results do not depend on how the work is scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .detection import current_diff, current_sum, current_variance, direct_detect, rf_split
from .gaussian import GaussianState, check_physicality

__all__ = [
    "McConfig",
    "McReport",
    "sample_wigner",
    "mc_photon_stats",
    "mc_current_variance",
]


@dataclass(frozen=True)
class McConfig:
    """Sampling plan: total samples, RNG seed, and batch size."""

    n_samples: int
    seed: int
    batch_size: int = 250_000

    def __post_init__(self) -> None:
        if not (isinstance(self.n_samples, int) and self.n_samples >= 1):
            raise ValueError(f"n_samples must be an int >= 1, got {self.n_samples!r}")
        if not (isinstance(self.seed, int) and self.seed >= 0):
            raise ValueError(f"seed must be a non-negative int, got {self.seed!r}")
        if not (isinstance(self.batch_size, int) and self.batch_size >= 1):
            raise ValueError(f"batch_size must be an int >= 1, got {self.batch_size!r}")


def _factor_covariance(cov: np.ndarray) -> np.ndarray:
    """A matrix L with L L^T = cov; Cholesky, or eigen-factor for singular cov."""
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        vals, vecs = np.linalg.eigh(cov)
        return vecs * np.sqrt(np.clip(vals, 0.0, None))


def sample_wigner(state: GaussianState, config: McConfig) -> Iterator[np.ndarray]:
    """Yield batches of quadrature samples, shape ``(batch, 2 n_modes)``.

    Raises ``ValueError`` for a non-physical state: its quasi-probability
    distribution would not be a probability density worth sampling.
    """
    report = check_physicality(state)
    if not report.passed:
        raise ValueError(
            f"cannot sample a non-physical state (min symplectic eigenvalue "
            f"{report.min_eigenvalue:.6g})"
        )
    factor_t = _factor_covariance(state.cov).T
    n_batches = -(-config.n_samples // config.batch_size)
    children = np.random.SeedSequence(config.seed).spawn(n_batches)
    remaining = config.n_samples
    for child in children:
        m = min(config.batch_size, remaining)
        remaining -= m
        rng = np.random.Generator(np.random.PCG64(child))
        z = rng.standard_normal((m, state.mean.shape[0]))
        yield state.mean + z @ factor_t


class _Moments:
    """Streaming per-column mean/variance with a fixed reduction order."""

    def __init__(self, n_cols: int) -> None:
        self.count = 0
        self.mean = np.zeros(n_cols)
        self.m2 = np.zeros(n_cols)

    def add(self, batch: np.ndarray) -> None:
        m = batch.shape[0]
        batch_mean = batch.mean(axis=0)
        batch_m2 = ((batch - batch_mean) ** 2).sum(axis=0)
        delta = batch_mean - self.mean
        total = self.count + m
        self.mean = self.mean + delta * (m / total)
        self.m2 = self.m2 + batch_m2 + delta * delta * (self.count * m / total)
        self.count = total

    def variance(self) -> np.ndarray:
        if self.count < 2:
            return np.zeros_like(self.m2)
        return self.m2 / (self.count - 1)


@dataclass(frozen=True)
class McReport:
    """Monte Carlo estimate next to its linearized-model prediction."""

    mc_mean: float
    mc_variance: float
    linearized_mean: float
    linearized_variance: float
    relative_error: float
    standard_error: float
    n_samples: int

    @property
    def variance_standard_error(self) -> float:
        """Gaussian-approximation standard error of ``mc_variance`` itself."""
        if self.n_samples < 2:
            return 0.0
        return self.mc_variance * math.sqrt(2.0 / (self.n_samples - 1))


def _report(mc_mean: float, mc_var: float, lin_mean: float, lin_var: float, n: int) -> McReport:
    rel = abs(mc_var - lin_var) / lin_var if lin_var > 0.0 else math.inf
    se = math.sqrt(mc_var / n) if n >= 1 else 0.0
    return McReport(
        mc_mean=mc_mean,
        mc_variance=mc_var,
        linearized_mean=lin_mean,
        linearized_variance=lin_var,
        relative_error=rel,
        standard_error=se,
        n_samples=n,
    )


def _photon_flux(samples: np.ndarray, x_index: int) -> np.ndarray:
    x = samples[:, x_index]
    y = samples[:, x_index + 1]
    return (x * x + y * y) / 4.0 - 0.5


def mc_photon_stats(state: GaussianState, label: str, config: McConfig) -> McReport:
    """Exact sampled photon-flux statistics of one mode vs. the linear model."""
    obs = direct_detect(state, label)
    lin_var = current_variance(state, obs)
    i = state.registry.x_index(label)
    moments = _Moments(1)
    for batch in sample_wigner(state, config):
        moments.add(_photon_flux(batch, i)[:, None])
    return _report(
        float(moments.mean[0]), float(moments.variance()[0]), obs.dc, lin_var, moments.count
    )


def mc_current_variance(
    state: GaussianState, ports: tuple[str, str], config: McConfig
) -> tuple[McReport, McReport]:
    """Sampled RF sum/difference current statistics vs. the linear model.

    Mirrors the detection pipeline exactly: each port's flux is split (DC
    halves, fluctuations scale 1/sqrt 2) and the split halves are summed /
    subtracted.  Returns ``(sum_report, diff_report)``.
    """
    c, d = ports
    obs_c = direct_detect(state, c)
    obs_d = direct_detect(state, d)
    half_c, _ = rf_split(obs_c)
    half_d, _ = rf_split(obs_d)
    i_plus = current_sum(half_c, half_d)
    i_minus = current_diff(half_c, half_d)
    lin = (
        (i_plus.dc, current_variance(state, i_plus)),
        (i_minus.dc, current_variance(state, i_minus)),
    )
    ic = state.registry.x_index(c)
    id_ = state.registry.x_index(d)
    inv_root2 = 1.0 / math.sqrt(2.0)
    moments = _Moments(2)
    for batch in sample_wigner(state, config):
        ec = _photon_flux(batch, ic) - obs_c.dc
        ed = _photon_flux(batch, id_) - obs_d.dc
        cols = np.empty((batch.shape[0], 2))
        cols[:, 0] = i_plus.dc + (ec + ed) * inv_root2
        cols[:, 1] = i_minus.dc + (ec - ed) * inv_root2
        moments.add(cols)
    variances = moments.variance()
    reports = tuple(
        _report(float(moments.mean[k]), float(variances[k]), lin[k][0], lin[k][1], moments.count)
        for k in range(2)
    )
    return reports[0], reports[1]
