"""Gaussian states over labeled optical modes.

Conventions used throughout the package:

* Quadratures are ``X = a' + a`` and ``Y = i(a' - a)`` (``a'`` denotes the
  creation operator), so the vacuum variance of each quadrature is 1 and
  ``[X, Y] = 2i``.  A coherent amplitude ``alpha`` therefore sits at mean
  ``(2 Re alpha, 2 Im alpha)``.
* The mean vector and covariance matrix are ordered ``(X1, Y1, X2, Y2, ...)``
  following the registry's mode order.
* The symplectic form is block diagonal with per-mode blocks
  ``[[0, 1], [-1, 0]]``.  A physical covariance matrix has all symplectic
  eigenvalues >= 1; pure states sit exactly at 1.

States are immutable: every operation returns a new ``GaussianState``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

#: Largest covariance asymmetry absorbed silently (averaged with the
#: transpose); anything larger is treated as a construction error.
SYMMETRY_TOL = 1e-9

#: Acceptance threshold for ``S Omega S^T = Omega`` when validating ops.
SYMPLECTIC_TOL = 1e-12

#: Physicality margin: symplectic eigenvalues must not dip below 1 by more
#: than this.
PHYSICALITY_TOL = 1e-9

__all__ = [
    "SYMMETRY_TOL",
    "SYMPLECTIC_TOL",
    "PHYSICALITY_TOL",
    "ModeRegistry",
    "GaussianState",
    "SymplecticOp",
    "PhysicalityReport",
    "symplectic_form",
    "new_vacuum",
    "extend_with_vacuum",
    "displace",
    "apply",
    "compose",
    "quadrature_variance",
    "symplectic_eigenvalues",
    "check_physicality",
]


def _as_readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class ModeRegistry:
    """Ordered, unique mode labels mapping each mode to its quadrature slots.

    Mode ``k`` (0-based) owns slots ``2k`` (X) and ``2k + 1`` (Y).
    """

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.labels, tuple):
            object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) == 0:
            raise ValueError("mode registry needs at least one label")
        seen: set[str] = set()
        for label in self.labels:
            if not isinstance(label, str) or not label:
                raise ValueError(f"mode labels must be non-empty strings, got {label!r}")
            if label in seen:
                raise ValueError(f"duplicate mode label {label!r}")
            seen.add(label)

    @property
    def n_modes(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown mode label {label!r}; registry has {self.labels}") from None

    def x_index(self, label: str) -> int:
        """Slot of the amplitude quadrature X of ``label``."""
        return 2 * self.index(label)

    def y_index(self, label: str) -> int:
        """Slot of the phase quadrature Y of ``label``."""
        return 2 * self.index(label) + 1

    def quad_indices(self, labels: tuple[str, ...]) -> np.ndarray:
        """Interleaved (X, Y) slot indices for ``labels``, in the given order."""
        idx = []
        for label in labels:
            k = self.index(label)
            idx.extend((2 * k, 2 * k + 1))
        return np.asarray(idx, dtype=int)

    def renamed(self, old: tuple[str, ...], new: tuple[str, ...]) -> "ModeRegistry":
        """Registry with each label in ``old`` replaced positionally by ``new``."""
        if len(old) != len(new):
            raise ValueError("rename lists must have equal length")
        mapping = dict(zip(old, new))
        for label in old:
            self.index(label)  # raises KeyError on unknown labels
        return ModeRegistry(tuple(mapping.get(label, label) for label in self.labels))


def symplectic_form(n_modes: int) -> np.ndarray:
    """Symplectic form Omega for ``n_modes`` modes (per-mode [[0, 1], [-1, 0]])."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


@dataclass(frozen=True)
class GaussianState:
    """Gaussian state: mean vector and covariance matrix over a registry.

    The covariance is symmetrized on construction (average with its
    transpose) to absorb round-off; an asymmetry beyond ``SYMMETRY_TOL`` is
    an error rather than something to fix silently.  Physicality is *not*
    enforced here — use :func:`check_physicality` — so that deliberately
    unphysical matrices can be constructed and diagnosed.
    """

    registry: ModeRegistry
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self) -> None:
        n = 2 * self.registry.n_modes
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.shape != (n,):
            raise ValueError(f"mean must have shape ({n},), got {mean.shape}")
        if cov.shape != (n, n):
            raise ValueError(f"cov must have shape ({n}, {n}), got {cov.shape}")
        if not np.all(np.isfinite(mean)) or not np.all(np.isfinite(cov)):
            raise ValueError("state mean/cov must be finite")
        asym = float(np.max(np.abs(cov - cov.T)))
        if asym > SYMMETRY_TOL:
            raise ValueError(
                f"covariance asymmetry {asym:.3e} exceeds {SYMMETRY_TOL:.0e}"
            )
        cov = (cov + cov.T) / 2.0
        object.__setattr__(self, "mean", _as_readonly(mean))
        object.__setattr__(self, "cov", _as_readonly(cov))

    @property
    def n_modes(self) -> int:
        return self.registry.n_modes

    def mode_mean(self, label: str) -> tuple[float, float]:
        """Mean (X, Y) of one mode."""
        i = self.registry.x_index(label)
        return float(self.mean[i]), float(self.mean[i + 1])

    def mode_amplitude(self, label: str) -> complex:
        """Coherent amplitude ``<a> = (X + iY)/2`` of one mode."""
        x, y = self.mode_mean(label)
        return complex(x, y) / 2.0

    def mode_cov(self, label: str) -> np.ndarray:
        """2x2 covariance block of one mode."""
        i = self.registry.x_index(label)
        return np.array(self.cov[i : i + 2, i : i + 2])


@dataclass(frozen=True)
class SymplecticOp:
    """Linear optical element: ``q -> S q + d`` on named modes.

    ``labels_in`` name the modes the op consumes, in the row/column order of
    ``matrix``; ``labels_out`` name what those registry slots are called
    afterwards (defaults to ``labels_in``, i.e. no renaming).  ``matrix``
    must satisfy ``S Omega S^T = Omega`` within ``SYMPLECTIC_TOL``.
    """

    matrix: np.ndarray
    labels_in: tuple[str, ...]
    labels_out: tuple[str, ...] = ()
    displacement: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        labels_in = tuple(self.labels_in)
        labels_out = tuple(self.labels_out) if self.labels_out else labels_in
        if len(labels_out) != len(labels_in):
            raise ValueError("labels_out must match labels_in in length")
        # Reuse registry validation for uniqueness/non-emptiness.
        ModeRegistry(labels_in)
        ModeRegistry(labels_out)
        n = 2 * len(labels_in)
        matrix = np.asarray(self.matrix, dtype=float)
        if matrix.shape != (n, n):
            raise ValueError(f"matrix must have shape ({n}, {n}), got {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise ValueError("op matrix must be finite")
        d = self.displacement
        d = np.zeros(n) if d is None else np.asarray(d, dtype=float)
        if d.shape != (n,):
            raise ValueError(f"displacement must have shape ({n},), got {d.shape}")
        err = symplectic_deviation(matrix)
        if err > SYMPLECTIC_TOL:
            raise ValueError(
                f"matrix is not symplectic: max |S Omega S^T - Omega| = {err:.3e}"
            )
        object.__setattr__(self, "matrix", _as_readonly(matrix))
        object.__setattr__(self, "displacement", _as_readonly(d))
        object.__setattr__(self, "labels_in", labels_in)
        object.__setattr__(self, "labels_out", labels_out)

    @property
    def n_modes(self) -> int:
        return len(self.labels_in)

    def renamed(self, labels_out: tuple[str, ...]) -> "SymplecticOp":
        """Same transformation with different output labels."""
        return SymplecticOp(self.matrix, self.labels_in, tuple(labels_out), self.displacement)


def symplectic_deviation(matrix: np.ndarray) -> float:
    """Max-norm deviation of ``S Omega S^T`` from Omega."""
    matrix = np.asarray(matrix, dtype=float)
    omega = symplectic_form(matrix.shape[0] // 2)
    return float(np.max(np.abs(matrix @ omega @ matrix.T - omega)))


def new_vacuum(labels: tuple[str, ...] | list[str]) -> GaussianState:
    """Vacuum on the given modes: zero mean, identity covariance."""
    registry = ModeRegistry(tuple(labels))
    n = 2 * registry.n_modes
    return GaussianState(registry, np.zeros(n), np.eye(n))


def extend_with_vacuum(state: GaussianState, labels: tuple[str, ...]) -> GaussianState:
    """Append fresh vacuum modes (uncorrelated with the existing ones)."""
    extra = ModeRegistry(tuple(labels))  # validates the new labels
    registry = ModeRegistry(state.registry.labels + extra.labels)
    n_old = 2 * state.registry.n_modes
    n = 2 * registry.n_modes
    mean = np.zeros(n)
    mean[:n_old] = state.mean
    cov = np.eye(n)
    cov[:n_old, :n_old] = state.cov
    return GaussianState(registry, mean, cov)


def displace(state: GaussianState, label: str, alpha: complex) -> GaussianState:
    """Displace one mode by a coherent amplitude (mean shifts, covariance fixed)."""
    i = state.registry.x_index(label)
    mean = np.array(state.mean)
    mean[i] += 2.0 * np.real(alpha)
    mean[i + 1] += 2.0 * np.imag(alpha)
    return GaussianState(state.registry, mean, state.cov)


def apply(state: GaussianState, op: SymplecticOp) -> GaussianState:
    """Apply a symplectic op to the modes it names; other modes are untouched.

    The op's matrix is embedded at the slots of ``op.labels_in`` (identity
    elsewhere), so cross-covariances with spectator modes transform
    consistently.  Registry slots are renamed to ``op.labels_out``.
    """
    err = symplectic_deviation(op.matrix)
    if err > SYMPLECTIC_TOL:  # re-check: ops are validated on construction
        raise ValueError(f"op matrix lost symplecticity: deviation {err:.3e}")
    idx = state.registry.quad_indices(op.labels_in)
    n = 2 * state.registry.n_modes
    s_full = np.eye(n)
    s_full[np.ix_(idx, idx)] = op.matrix
    d_full = np.zeros(n)
    d_full[idx] = op.displacement
    mean = s_full @ state.mean + d_full
    cov = s_full @ state.cov @ s_full.T
    registry = state.registry.renamed(op.labels_in, op.labels_out)
    return GaussianState(registry, mean, cov)


def compose(late: SymplecticOp, early: SymplecticOp) -> SymplecticOp:
    """Op equal to ``early`` followed by ``late`` (matrix product ``S_l S_e``).

    ``late`` must consume exactly the labels ``early`` produces, in order.
    """
    if late.labels_in != early.labels_out:
        raise ValueError(
            f"wiring mismatch: late op consumes {late.labels_in}, "
            f"early op produces {early.labels_out}"
        )
    matrix = late.matrix @ early.matrix
    disp = late.matrix @ early.displacement + late.displacement
    return SymplecticOp(matrix, early.labels_in, late.labels_out, disp)


def quadrature_variance(state: GaussianState, coeffs: np.ndarray) -> float:
    """Variance of the linear combination ``c . q`` of quadratures."""
    c = np.asarray(coeffs, dtype=float)
    n = 2 * state.registry.n_modes
    if c.shape != (n,):
        raise ValueError(f"coeffs must have shape ({n},), got {c.shape}")
    return float(c @ state.cov @ c)


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues: moduli of the eigenvalue pairs of ``Omega^-1 cov``.

    For a valid covariance the eigenvalues of ``Omega^-1 cov`` come in pairs
    ``+/- i nu_k``; the returned array holds each ``nu_k`` once, ascending.
    """
    cov = np.asarray(cov, dtype=float)
    n_modes = cov.shape[0] // 2
    omega = symplectic_form(n_modes)
    omega_inv = -omega  # Omega^2 = -1 for this block convention
    moduli = np.sort(np.abs(np.linalg.eigvals(omega_inv @ cov)))
    return moduli[::2].copy()


@dataclass(frozen=True)
class PhysicalityReport:
    """Outcome of the uncertainty-principle check on a covariance matrix."""

    symplectic_eigenvalues: tuple[float, ...]
    min_eigenvalue: float
    tolerance: float
    passed: bool


def check_physicality(state: GaussianState, tolerance: float = PHYSICALITY_TOL) -> PhysicalityReport:
    """Check ``nu_k >= 1 - tolerance`` for all symplectic eigenvalues."""
    nus = symplectic_eigenvalues(state.cov)
    min_nu = float(nus[0])
    return PhysicalityReport(
        symplectic_eigenvalues=tuple(float(v) for v in nus),
        min_eigenvalue=min_nu,
        tolerance=tolerance,
        passed=bool(min_nu >= 1.0 - tolerance),
    )
