"""Eigendecomposition into distinct eigenvalues with orthogonal projectors,
and the walk operator built from them."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidStateError, NumericFailureError
from .graphs import Hamiltonian


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds used throughout the package.

    tol_group scales by max(1, ||M||_inf) and tol_proj by n at the point of
    use; the remaining fields are used as stored.
    """

    tol_group: float = 1e-8   # eigenvalue clustering
    tol_supp: float = 1e-8    # support membership, relative to ||x||
    tol_proj: float = 1e-9    # projector algebra residuals
    tol_phase: float = 1e-8   # phase-match residual for transfer checks
    q_max: int = 10_000       # denominator cap for rational reconstruction
    int_tol: float = 1e-6     # integrality detection

    def __post_init__(self):
        for name in ("tol_group", "tol_supp", "tol_proj", "tol_phase", "int_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.q_max < 1:
            raise ValueError("q_max must be at least 1")


DEFAULT_TOLERANCES = ToleranceConfig()


@dataclass(eq=False)
class SpectralDecomposition:
    """Distinct eigenvalues (strictly decreasing) with their projectors."""

    eigenvalues: np.ndarray          # shape (k,), descending
    projectors: np.ndarray           # shape (k, n, n), symmetric
    multiplicities: tuple[int, ...]
    scale: float                     # ||M||_inf of the decomposed matrix
    ambiguous: bool = False          # some cluster gap was < 2x the threshold
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @property
    def n(self) -> int:
        return self.projectors.shape[1]

    @property
    def k(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        return np.einsum("k,kij->ij", self.eigenvalues, self.projectors)

    def eigenvector(self, j: int) -> np.ndarray:
        """Deterministic unit eigenvector for the j-th distinct eigenvalue."""
        e = self.projectors[j]
        col = int(np.argmax(np.diag(e)))
        vec = e[:, col]
        nrm = np.linalg.norm(vec)
        if nrm == 0.0:
            raise NumericFailureError("projector has no nonzero column")
        return vec / nrm


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, Hamiltonian):
        return m.matrix
    return np.asarray(m, dtype=float)


def as_state(x, n: int | None = None) -> np.ndarray:
    """Validate a nonzero real vector."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise InvalidStateError("state must be a one-dimensional real vector")
    if n is not None and x.shape[0] != n:
        raise InvalidStateError(f"state has length {x.shape[0]}, expected {n}")
    if not np.all(np.isfinite(x)):
        raise InvalidStateError("state has non-finite entries")
    if np.linalg.norm(x) == 0.0:
        raise InvalidStateError("state must be nonzero")
    return x


def decompose(m, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SpectralDecomposition:
    """Group the spectrum of a real symmetric matrix into distinct eigenvalues.

    Single-linkage clustering on the sorted spectrum with threshold
    tol_group * max(1, ||M||_inf); each cluster's eigenvalue is the mean and
    its projector is assembled from the cluster's orthonormal eigenvectors.
    """
    mat = _as_matrix(m)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise InvalidStateError("matrix must be square")
    scale = float(np.linalg.norm(mat, np.inf))
    if np.max(np.abs(mat - mat.T)) > 1e-12 * max(1.0, scale):
        raise InvalidStateError("matrix must be symmetric")
    try:
        evals, evecs = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise NumericFailureError(f"eigendecomposition failed: {exc}") from exc

    threshold = cfg.tol_group * max(1.0, scale)
    clusters: list[list[int]] = [[0]]
    for i in range(1, len(evals)):
        if evals[i] - evals[i - 1] <= threshold:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    clusters.reverse()  # descending eigenvalue order

    n = mat.shape[0]
    values = np.empty(len(clusters))
    projectors = np.empty((len(clusters), n, n))
    mults = []
    for j, idx in enumerate(clusters):
        values[j] = float(np.mean(evals[idx]))
        block = evecs[:, idx]
        e = block @ block.T
        projectors[j] = (e + e.T) / 2.0
        mults.append(len(idx))

    ambiguous = False
    warnings = []
    for j in range(1, len(values)):
        gap = values[j - 1] - values[j]
        if gap < 2.0 * threshold:
            ambiguous = True
            warnings.append(
                f"cluster gap {gap:.3e} between eigenvalues {values[j - 1]:.6g} "
                f"and {values[j]:.6g} is below twice the clustering threshold"
            )
    values.setflags(write=False)
    projectors.setflags(write=False)
    return SpectralDecomposition(
        eigenvalues=values,
        projectors=projectors,
        multiplicities=tuple(mults),
        scale=scale,
        ambiguous=ambiguous,
        warnings=tuple(warnings),
    )


def evolve(dec: SpectralDecomposition, t: float, x) -> np.ndarray:
    """Apply the walk operator at time t: sum_j exp(i t lambda_j) E_j x."""
    x = as_state(x, dec.n)
    components = dec.projectors @ x            # (k, n)
    phases = np.exp(1j * t * dec.eigenvalues)  # (k,)
    return phases @ components


def transition_matrix(dec: SpectralDecomposition, t: float) -> np.ndarray:
    """Full walk operator at time t (complex symmetric unitary)."""
    phases = np.exp(1j * t * dec.eigenvalues)
    return np.einsum("k,kij->ij", phases, dec.projectors)


def fidelity(dec: SpectralDecomposition, t: float, x, y) -> float:
    """|y^T U(t) x|^2 normalized by the state norms; lands in [0, 1]."""
    x = as_state(x, dec.n)
    y = as_state(y, dec.n)
    z = evolve(dec, t, x)
    amp = y @ z
    val = float(abs(amp) ** 2 / (np.dot(x, x) * np.dot(y, y)))
    return min(val, 1.0) if val <= 1.0 + 1e-9 else val
