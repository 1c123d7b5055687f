"""Eigenvalue supports, fixed-state detection, strong cospectrality with its
sign partition, partner enumeration, and moment/automorphism checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    FixedStateError,
    InvalidAutomorphismError,
    InvalidPairError,
    InvalidStateError,
    NotCospectralError,
    TooManyPartitionsError,
)
from .spectral import DEFAULT_TOLERANCES, SpectralDecomposition, ToleranceConfig, as_state

FIXED = "fixed"
SIZE2 = "size2"
GENERAL = "general"

MAX_PARTITION_SUPPORT = 20


@dataclass(eq=False)
class SupportProfile:
    """Support eigenvalues of a state with the projected components u_j = E_j x."""

    indices: tuple[int, ...]      # positions in the decomposition (descending eigenvalues)
    eigenvalues: np.ndarray       # support eigenvalues, descending
    components: np.ndarray        # shape (m, n); row j is E_j x
    kind: str                     # fixed | size2 | general

    @property
    def size(self) -> int:
        return len(self.indices)


@dataclass(eq=False)
class CospectralityCertificate:
    """Sign partition of the support: E_j x = E_j y on plus, = -E_j y on minus."""

    plus_positions: tuple[int, ...]   # positions within the support profile
    minus_positions: tuple[int, ...]
    sigma_plus: np.ndarray            # eigenvalues
    sigma_minus: np.ndarray
    residual: float                   # max_j || E_j x -+ E_j y || over the winner signs
    profile: SupportProfile


def support(dec: SpectralDecomposition, x, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SupportProfile:
    """Set of eigenvalues whose projection of x is nonzero (relative threshold)."""
    x = as_state(x, dec.n)
    comps = dec.projectors @ x
    norms = np.linalg.norm(comps, axis=1)
    cutoff = cfg.tol_supp * float(np.linalg.norm(x))
    idx = tuple(int(j) for j in np.nonzero(norms > cutoff)[0])
    if not idx:
        raise InvalidStateError("state has empty eigenvalue support at this tolerance")
    kind = FIXED if len(idx) == 1 else SIZE2 if len(idx) == 2 else GENERAL
    return SupportProfile(
        indices=idx,
        eigenvalues=dec.eigenvalues[list(idx)],
        components=comps[list(idx)],
        kind=kind,
    )


def _check_pair(x: np.ndarray, y: np.ndarray) -> None:
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if abs(nx - ny) > 1e-10 * max(nx, ny):
        raise InvalidPairError("states must have equal norms")
    if min(np.linalg.norm(x - y), np.linalg.norm(x + y)) <= 1e-10 * nx:
        raise InvalidPairError("y must differ from both x and -x")


def check_strong_cospectrality(
    dec: SpectralDecomposition,
    x,
    y,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    profile: SupportProfile | None = None,
) -> CospectralityCertificate:
    """Classify E_j x = +-E_j y over the support of x.

    The sign per eigenvalue is whichever of ||E_j x - E_j y||, ||E_j x + E_j y||
    is smaller; the winner must fall below tol_supp*||x|| and the loser must
    exceed ten times that, otherwise the classification is refused as
    numerically ambiguous. Raises FixedStateError for single-eigenvalue
    supports and NotCospectralError at the first violating eigenvalue.
    """
    x = as_state(x, dec.n)
    y = as_state(y, dec.n)
    _check_pair(x, y)
    prof = profile if profile is not None else support(dec, x, cfg)
    if prof.kind == FIXED:
        raise FixedStateError("a fixed state cannot be strongly cospectral")
    tol = cfg.tol_supp * float(np.linalg.norm(x))

    plus, minus = [], []
    worst = 0.0
    for pos, j in enumerate(prof.indices):
        ex = prof.components[pos]
        ey = dec.projectors[j] @ y
        d_plus = float(np.linalg.norm(ex - ey))   # residual for the + classification
        d_minus = float(np.linalg.norm(ex + ey))
        win, lose = (d_plus, d_minus) if d_plus <= d_minus else (d_minus, d_plus)
        if win > tol or lose < 10.0 * tol:
            raise NotCospectralError(float(dec.eigenvalues[j]))
        worst = max(worst, win)
        (plus if d_plus <= d_minus else minus).append(pos)
    # y may not carry support outside sigma_x
    off = [j for j in range(dec.k) if j not in prof.indices]
    for j in off:
        if np.linalg.norm(dec.projectors[j] @ y) > tol:
            raise NotCospectralError(float(dec.eigenvalues[j]))
    if not plus or not minus:
        raise InvalidPairError("pair is numerically indistinguishable from y = +-x")
    return CospectralityCertificate(
        plus_positions=tuple(plus),
        minus_positions=tuple(minus),
        sigma_plus=prof.eigenvalues[plus],
        sigma_minus=prof.eigenvalues[minus],
        residual=worst,
        profile=prof,
    )


def enumerate_partners(
    dec: SpectralDecomposition, x, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> list[np.ndarray]:
    """All 2**(m-1) - 1 states strongly cospectral with x, one per proper
    bipartition of the support with the largest eigenvalue kept positive."""
    x = as_state(x, dec.n)
    prof = support(dec, x, cfg)
    if prof.kind == FIXED:
        raise FixedStateError("fixed states have no strongly cospectral partners")
    m = prof.size
    if m > MAX_PARTITION_SUPPORT:
        raise TooManyPartitionsError(f"support size {m} exceeds {MAX_PARTITION_SUPPORT}")
    partners = []
    for mask in range(1, 2 ** (m - 1)):
        flip = np.zeros(dec.n)
        for bit in range(m - 1):
            if mask >> bit & 1:
                flip += prof.components[1 + bit]
        partners.append(x - 2.0 * flip)
    return partners


def moment_check(
    dec: SpectralDecomposition,
    x,
    y,
    k_max: int,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> bool:
    """True iff x^T M^k x = y^T M^k y for k = 0..k_max within 1e-8 * scale**k.

    Moments are computed spectrally from the projector weights, states
    unit-normalized first.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    x = as_state(x, dec.n)
    y = as_state(y, dec.n)
    wx = np.linalg.norm(dec.projectors @ x, axis=1) ** 2 / np.dot(x, x)
    wy = np.linalg.norm(dec.projectors @ y, axis=1) ** 2 / np.dot(y, y)
    for k in range(k_max + 1):
        powers = dec.eigenvalues**k
        if abs(powers @ wx - powers @ wy) > 1e-8 * dec.scale**k:
            return False
    return True


def automorphism_fix_check(perm, dec: SpectralDecomposition, m, x, y,
                           cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """For an automorphism P of the Hamiltonian and a strongly cospectral pair,
    report whether (P y = y) implies (P x = x); the implication always holds
    for valid inputs.

    `perm` maps vertex u to perm[u]; `m` is the Hamiltonian matrix (or an
    object with a .matrix attribute).
    """
    mat = getattr(m, "matrix", None)
    mat = np.asarray(mat if mat is not None else m, dtype=float)
    n = mat.shape[0]
    perm = np.asarray(perm, dtype=int)
    if sorted(perm.tolist()) != list(range(n)):
        raise InvalidAutomorphismError("perm is not a permutation of the vertices")
    if np.max(np.abs(mat[np.ix_(perm, perm)] - mat)) > 1e-12 * max(1.0, float(np.abs(mat).max())):
        raise InvalidAutomorphismError("permutation does not preserve the Hamiltonian")
    check_strong_cospectrality(dec, x, y, cfg)  # validates the pair contract
    x = as_state(x, n)
    y = as_state(y, n)
    inv = np.empty(n, dtype=int)
    inv[perm] = np.arange(n)
    fixes_y = np.linalg.norm(y[inv] - y) <= 1e-10 * np.linalg.norm(y)
    fixes_x = np.linalg.norm(x[inv] - x) <= 1e-10 * np.linalg.norm(x)
    return (not fixes_y) or fixes_x


def involution_from_partition(
    dec: SpectralDecomposition, cert: CospectralityCertificate
) -> np.ndarray:
    """Orthogonal Q with Q^2 = I and Q x = y: flips the minus projectors and
    acts as the identity off the support."""
    q = np.eye(dec.n)
    for pos in cert.minus_positions:
        q = q - 2.0 * dec.projectors[cert.profile.indices[pos]]
    return q
