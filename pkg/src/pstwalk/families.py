"""Closed-form eigenbases and transfer catalogs for complete graphs, cycles,
paths (adjacency and Laplacian), and complete bipartite graphs.

Each family case records which eigenvalue groups a state may occupy and which
components flip sign in its partner; the engine re-verifies every emitted
pair, and on any disagreement the engine's decision wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import symbolic_pi_multiple, two_adic_valuation
from .errors import FixedStateError, InvalidSizeError
from .graphs import (
    ADJACENCY,
    LAPLACIAN,
    build_complete,
    build_complete_bipartite,
    build_cycle,
    build_path,
    hamiltonian,
)
from .spectral import DEFAULT_TOLERANCES, ToleranceConfig, as_state, decompose
from .transfer import pst_decide, pst_partner

CATALOG_GUARD = 30  # vertex limit for exhaustive s-pair sweeps


# ---------------------------------------------------------------------------
# closed-form eigenbases


def cycle_eigenbasis(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Adjacency eigenbasis of the n-cycle: eigenvalue 2*cos(2*pi*j'/n) with
    j' = min(j, n-j); cosine vectors for j <= n/2, sine vectors above.
    Returns (values, vectors) with vectors as orthonormal columns."""
    if n < 3:
        raise InvalidSizeError("cycle needs n >= 3")
    values = np.empty(n)
    vectors = np.empty((n, n))
    grid = np.arange(n)
    values[0] = 2.0
    vectors[:, 0] = 1.0 / math.sqrt(n)
    if n % 2 == 0:
        values[n // 2] = -2.0
        vectors[:, n // 2] = np.where(grid % 2 == 0, 1.0, -1.0) / math.sqrt(n)
    for j in range(1, (n + 1) // 2):
        if 2 * j == n:
            continue
        angle = 2.0 * j * np.pi / n
        values[j] = 2.0 * math.cos(angle)
        values[n - j] = values[j]
        vectors[:, j] = math.sqrt(2.0 / n) * np.cos(angle * grid)
        vectors[:, n - j] = math.sqrt(2.0 / n) * np.sin(angle * grid)
    return values, vectors


def path_adj_eigenbasis(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Adjacency eigenbasis of the n-path: eigenvalue 2*cos(j*pi/(n+1)) with
    sine eigenvector, j = 1..n (column j-1)."""
    if n < 1:
        raise InvalidSizeError("path needs n >= 1")
    js = np.arange(1, n + 1)
    values = 2.0 * np.cos(js * np.pi / (n + 1))
    grid = np.arange(1, n + 1)
    vectors = math.sqrt(2.0 / (n + 1)) * np.sin(np.outer(grid, js) * np.pi / (n + 1))
    return values, vectors


def path_lap_eigenbasis(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Laplacian eigenbasis of the n-path: eigenvalue 2*(1 - cos(j*pi/n)) with
    cosine eigenvector, j = 0..n-1."""
    if n < 1:
        raise InvalidSizeError("path needs n >= 1")
    js = np.arange(n)
    values = 2.0 * (1.0 - np.cos(js * np.pi / n))
    grid = 2.0 * np.arange(n) + 1.0
    vectors = math.sqrt(2.0 / n) * np.cos(np.outer(grid, js) * np.pi / (2 * n))
    vectors[:, 0] = 1.0 / math.sqrt(n)
    return values, vectors


# ---------------------------------------------------------------------------
# complete graphs


def complete_graph_pst(
    n: int, x, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> tuple[np.ndarray, float] | None:
    """Partner and time in the complete graph: y = x - (2/n)(1^T x) 1 at
    pi/n; None when x is fixed (a multiple of 1 or orthogonal to it)."""
    if n < 2:
        raise InvalidSizeError("need n >= 2")
    x = as_state(x, n)
    nrm = float(np.linalg.norm(x))
    total = float(x.sum())
    mean = total / n * np.ones(n)
    if np.linalg.norm(x - mean) <= cfg.tol_supp * nrm:
        return None
    if abs(total) <= cfg.tol_supp * math.sqrt(n) * nrm:
        return None
    return x - 2.0 * mean, math.pi / n


# ---------------------------------------------------------------------------
# parametrized cycle and path families


@dataclass(eq=False)
class EigenGroup:
    value: float
    vectors: np.ndarray  # (n, d) orthonormal columns spanning the eigenspace


@dataclass(eq=False)
class FamilyPair:
    x: np.ndarray
    y: np.ndarray
    tau: float
    tau_symbolic: str | None
    case: str


@dataclass(eq=False)
class FamilyCase:
    """One support shape admitting transfer; `kept`/`flipped` index `groups`
    and define the partner's sign pattern."""

    family: str
    kind: str
    case: str
    n: int
    tau: float
    tau_symbolic: str | None
    groups: list[EigenGroup]
    kept: tuple[int, ...]
    flipped: tuple[int, ...]
    required_all: tuple[int, ...] = ()
    required_any: tuple[int, ...] = ()

    def sample(self, rng: np.random.Generator, min_coef: float = 1e-3) -> FamilyPair:
        """Random valid instance; coefficients are drawn away from zero so
        required components cannot vanish."""
        chosen = set(self.required_all)
        anys = [g for g in self.required_any if g not in chosen]
        if anys:
            picked = [g for g in anys if rng.random() < 0.5]
            chosen.update(picked if picked else [anys[int(rng.integers(len(anys)))]])
        optional = [g for g in range(len(self.groups)) if g not in chosen]
        chosen.update(g for g in optional if rng.random() < 0.5)
        pool = [g for g in range(len(self.groups)) if g not in chosen]
        while len(chosen) < 3 and pool:
            chosen.add(pool.pop(int(rng.integers(len(pool)))))
        x = np.zeros(self.groups[0].vectors.shape[0])
        y = np.zeros_like(x)
        for g in sorted(chosen):
            grp = self.groups[g]
            direction = rng.normal(size=grp.vectors.shape[1])
            direction /= np.linalg.norm(direction)
            coef = float(rng.uniform(min_coef, 1.0)) * (1.0 if rng.random() < 0.5 else -1.0)
            comp = coef * (grp.vectors @ direction)
            x += comp
            y += comp if g in self.kept else -comp
        scale = 1.0 / np.linalg.norm(x)
        return FamilyPair(x * scale, y * scale, self.tau, self.tau_symbolic, self.case)

    def match(self, x, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> FamilyPair | None:
        """Classify x against this case; returns the partner pair when the
        support fits the case's shape and constraints."""
        x = as_state(x, self.groups[0].vectors.shape[0])
        nrm = float(np.linalg.norm(x))
        comps = []
        present = set()
        for g, grp in enumerate(self.groups):
            comp = grp.vectors @ (grp.vectors.T @ x)
            comps.append(comp)
            if np.linalg.norm(comp) > cfg.tol_supp * nrm:
                present.add(g)
        residual = x - sum(comps)
        if np.linalg.norm(residual) > cfg.tol_supp * nrm:
            return None  # support leaks outside the allowed eigenvalues
        if len(present) < 3:
            return None
        if not set(self.required_all) <= present:
            return None
        if self.required_any and not (set(self.required_any) & present):
            return None
        y = np.zeros_like(x)
        for g in present:
            y += comps[g] if g in self.kept else -comps[g]
        return FamilyPair(x, y, self.tau, self.tau_symbolic, self.case)


def _groups_for(values: np.ndarray, vectors: np.ndarray, wanted: list[float]) -> list[EigenGroup] | None:
    groups = []
    for v in wanted:
        cols = np.nonzero(np.abs(values - v) <= 1e-9)[0]
        if len(cols) == 0:
            return None
        groups.append(EigenGroup(value=v, vectors=vectors[:, cols]))
    return groups


def cycle_pst_families(n: int) -> list[FamilyCase]:
    """All transfer-supporting support shapes of the n-cycle with at least
    three eigenvalues; empty when no case divides n."""
    if n < 3:
        raise InvalidSizeError("cycle needs n >= 3")
    values, vectors = cycle_eigenbasis(n)
    cases: list[FamilyCase] = []
    r2, r3 = math.sqrt(2.0), math.sqrt(3.0)

    def add(case, tau, wanted, kept, flipped, req_all=(), req_any=()):
        groups = _groups_for(values, vectors, wanted)
        if groups is not None:
            cases.append(
                FamilyCase(
                    family="cycle", kind=ADJACENCY, case=case, n=n,
                    tau=tau, tau_symbolic=symbolic_pi_multiple(tau),
                    groups=groups, kept=kept, flipped=flipped,
                    required_all=req_all, required_any=req_any,
                )
            )

    if n % 2 == 0 and (n // 2) % 3 == 0:
        # integer support avoiding 0: subset of {+-1, +-2} with a +-1 component
        add("int-pm1", math.pi, [2.0, 1.0, -1.0, -2.0],
            kept=(0, 3), flipped=(1, 2), req_any=(1, 2))
    if n % 2 == 0 and (n // 2) % 6 == 0:
        # integer support containing 0 and a +-1 component
        add("int-with0", math.pi, [2.0, 1.0, 0.0, -1.0, -2.0],
            kept=(0, 2, 4), flipped=(1, 3), req_all=(2,), req_any=(1, 3))
    if n % 4 == 0:
        add("int-0pm2", math.pi / 2.0, [2.0, 0.0, -2.0],
            kept=(1,), flipped=(0, 2), req_all=(0, 1, 2))
    if n % 12 == 0:
        add("surd3", math.pi / r3, [r3, 0.0, -r3],
            kept=(1,), flipped=(0, 2), req_all=(0, 1, 2))
    if n % 8 == 0:
        add("surd2", math.pi / r2, [r2, 0.0, -r2],
            kept=(1,), flipped=(0, 2), req_all=(0, 1, 2))
    return cases


def path_pst_families(n: int, kind: str) -> list[FamilyCase]:
    """Transfer-supporting support shapes of the n-path (three eigenvalues or
    more); empty when no case divides n (adjacency keys on n+1)."""
    if n < 3:
        raise InvalidSizeError("path families need n >= 3")
    r2, r3 = math.sqrt(2.0), math.sqrt(3.0)
    cases: list[FamilyCase] = []
    if kind == ADJACENCY:
        values, vectors = path_adj_eigenbasis(n)

        def add(case, tau, wanted, kept, flipped):
            groups = _groups_for(values, vectors, wanted)
            if groups is not None:
                cases.append(
                    FamilyCase(
                        family="path", kind=kind, case=case, n=n,
                        tau=tau, tau_symbolic=symbolic_pi_multiple(tau),
                        groups=groups, kept=kept, flipped=flipped,
                        required_all=tuple(range(len(wanted))),
                    )
                )

        if (n + 1) % 6 == 0:
            # NOTE: with support {0, +-1} the phases only align at pi, not pi/2
            add("int-pm1", math.pi, [1.0, 0.0, -1.0], kept=(1,), flipped=(0, 2))
            add("surd3", math.pi / r3, [r3, 0.0, -r3], kept=(1,), flipped=(0, 2))
        if (n + 1) % 4 == 0:
            add("surd2", math.pi / r2, [r2, 0.0, -r2], kept=(1,), flipped=(0, 2))
        return cases

    if kind != LAPLACIAN:
        raise ValueError(f"unknown kind {kind!r}")
    values, vectors = path_lap_eigenbasis(n)

    def addl(case, tau, wanted, kept, flipped, req_all=()):
        groups = _groups_for(values, vectors, wanted)
        if groups is not None:
            cases.append(
                FamilyCase(
                    family="path", kind=kind, case=case, n=n,
                    tau=tau, tau_symbolic=symbolic_pi_multiple(tau),
                    groups=groups, kept=kept, flipped=flipped,
                    required_all=req_all,
                )
            )

    if n % 6 == 0:
        addl("int-0123", math.pi, [3.0, 2.0, 1.0, 0.0], kept=(1, 3), flipped=(0, 2))
        addl("surd3", math.pi / r3, [2.0 + r3, 2.0, 2.0 - r3],
             kept=(1,), flipped=(0, 2), req_all=(0, 1, 2))
    elif n % 3 == 0:
        addl("int-013", math.pi, [3.0, 1.0, 0.0], kept=(2,), flipped=(0, 1),
             req_all=(0, 1, 2))
    if n % 4 == 0:
        addl("surd2", math.pi / r2, [2.0 + r2, 2.0, 2.0 - r2],
             kept=(1,), flipped=(0, 2), req_all=(0, 1, 2))
    return cases


def cycle_family_match(n: int, x, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> FamilyPair | None:
    for case in cycle_pst_families(n):
        pair = case.match(x, cfg)
        if pair is not None:
            return pair
    return None


def path_family_match(
    n: int, kind: str, x, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> FamilyPair | None:
    for case in path_pst_families(n, kind):
        pair = case.match(x, cfg)
        if pair is not None:
            return pair
    return None


def path_least_pst_time(n: int, kind: str) -> tuple[float, np.ndarray, np.ndarray]:
    """Least minimum transfer time over the n-path and an attaining pair:
    a two-eigenvalue combination of the extreme eigenvectors. Tends to pi/4
    as n grows, for both Hamiltonians."""
    if n < 2:
        raise InvalidSizeError("need n >= 2")
    if kind == ADJACENCY:
        values, vectors = path_adj_eigenbasis(n)
        tau = math.pi / (4.0 * math.cos(math.pi / (n + 1)))
        u, v = vectors[:, 0], vectors[:, n - 1]
    elif kind == LAPLACIAN:
        values, vectors = path_lap_eigenbasis(n)
        tau = math.pi / (2.0 * (1.0 - math.cos((n - 1) * math.pi / n)))
        u, v = vectors[:, 0], vectors[:, n - 1]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return tau, u + v, u - v


# ---------------------------------------------------------------------------
# complete bipartite graphs


def complete_bipartite_pst(
    m: int, n: int, kind: str, x, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> tuple[np.ndarray, float] | None:
    """Closed-form partner in the complete bipartite graph for supports of
    size at least three; None when the state sits in a two-eigenvalue span
    (those pairs are handled by the generic size-two route) or is fixed.

    Adjacency: y negates the per-part means, at pi/sqrt(m*n). Laplacian: the
    partner formula is keyed on comparing the 2-adic valuations of the part
    sizes, at pi/gcd(m, n)."""
    if m < 1 or n < 1:
        raise InvalidSizeError("need part sizes >= 1")
    x = as_state(x, m + n)
    nrm = float(np.linalg.norm(x))
    x1, x2 = x[:m], x[m:]
    s1, s2 = float(x1.sum()), float(x2.sum())
    tol = cfg.tol_supp * nrm
    if kind == ADJACENCY:
        vplus = np.concatenate([math.sqrt(n) * np.ones(m), math.sqrt(m) * np.ones(n)])
        vminus = np.concatenate([math.sqrt(n) * np.ones(m), -math.sqrt(m) * np.ones(n)])
        vplus /= np.linalg.norm(vplus)
        vminus /= np.linalg.norm(vminus)
        cp, cm = float(vplus @ x), float(vminus @ x)
        kernel = x - cp * vplus - cm * vminus
        if abs(cp) <= tol or abs(cm) <= tol or np.linalg.norm(kernel) <= tol:
            return None
        y = x - 2.0 * np.concatenate([s1 / m * np.ones(m), s2 / n * np.ones(n)])
        return y, math.pi / math.sqrt(m * n)
    if kind != LAPLACIAN:
        raise ValueError(f"unknown kind {kind!r}")
    ones = np.ones(m + n)
    c0 = float(x @ ones) / math.sqrt(m + n)
    w = np.concatenate([n * np.ones(m), -m * np.ones(n)])
    w /= np.linalg.norm(w)
    cw = float(w @ x)
    d1 = x1 - s1 / m * np.ones(m)   # eigenvalue n component (first part deviations)
    d2 = x2 - s2 / n * np.ones(n)   # eigenvalue m component
    if m == n:
        mids = 1 if (np.linalg.norm(d1) > tol or np.linalg.norm(d2) > tol) else 0
    else:
        mids = int(np.linalg.norm(d1) > tol) + int(np.linalg.norm(d2) > tol)
    count = int(abs(c0) > tol) + int(abs(cw) > tol) + mids
    if count < 3:
        return None
    v2m, v2n = two_adic_valuation(m), two_adic_valuation(n)
    if v2m == v2n:
        y = np.concatenate(
            [-x1 + 2.0 * s1 / m * np.ones(m), -x2 + 2.0 * s2 / n * np.ones(n)]
        )
    elif v2m > v2n:
        y = np.concatenate(
            [
                -x1 + 2.0 / (m + n) * (s2 + s1) * np.ones(m),
                x2 + 2.0 / (m + n) * (s1 - m / n * s2) * np.ones(n),
            ]
        )
    else:
        y = np.concatenate(
            [
                x1 + 2.0 / (m + n) * (s2 - n / m * s1) * np.ones(m),
                -x2 + 2.0 / (m + n) * (s1 + s2) * np.ones(n),
            ]
        )
    return y, math.pi / math.gcd(m, n)


# ---------------------------------------------------------------------------
# exhaustive s-pair catalogs


@dataclass(frozen=True)
class CatalogEntry:
    """One s-pair transfer: e_u + s e_v goes to (a sign of) e_a + t e_b."""

    s: int
    u: int
    v: int
    partner_s: int
    partner_u: int
    partner_v: int
    tau: float
    tau_symbolic: str | None


def _as_pair_state(y: np.ndarray) -> tuple[int, int, int] | None:
    """Recognize +-(e_a + s e_b) with s in {-1, +1}; canonical a < b and
    positive leading entry."""
    order = np.argsort(-np.abs(y))
    a, b = int(order[0]), int(order[1])
    rest = np.abs(y[[i for i in range(len(y)) if i not in (a, b)]])
    if abs(abs(y[a]) - 1.0) > 1e-7 or abs(abs(y[b]) - 1.0) > 1e-7:
        return None
    if rest.size and float(rest.max()) > 1e-8:
        return None
    if a > b:
        a, b = b, a
    sign = 1.0 if y[a] > 0 else -1.0
    s = int(round(sign * y[b]))
    if s not in (-1, 1):
        return None
    return s, a, b


def pair_plus_catalog(
    family: str, kind: str, *sizes: int, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> list[CatalogEntry]:
    """Run the transfer engine over every pair state (s = -1) and plus state
    (s = +1); entries are recorded exactly when the unique partner is itself
    an s-pair state."""
    if family == "path":
        g = build_path(sizes[0])
    elif family == "cycle":
        g = build_cycle(sizes[0])
    elif family == "complete":
        g = build_complete(sizes[0])
    elif family == "complete-bipartite":
        g = build_complete_bipartite(sizes[0], sizes[1])
    else:
        raise ValueError(f"unknown family {family!r}")
    if g.n > CATALOG_GUARD:
        raise InvalidSizeError(f"catalog sweep guarded to {CATALOG_GUARD} vertices")
    dec = decompose(hamiltonian(g, kind), cfg)
    entries: list[CatalogEntry] = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            for s in (-1, 1):
                x = np.zeros(g.n)
                x[u] = 1.0
                x[v] = float(s)
                try:
                    partner = pst_partner(dec, x, cfg)
                except FixedStateError:
                    continue
                if partner is None:
                    continue
                shape = _as_pair_state(partner)
                if shape is None:
                    continue
                verdict = pst_decide(dec, x, partner, cfg)
                if not verdict.decision:
                    continue
                entries.append(
                    CatalogEntry(
                        s=s, u=u, v=v,
                        partner_s=shape[0], partner_u=shape[1], partner_v=shape[2],
                        tau=verdict.tau_min,
                        tau_symbolic=verdict.tau_symbolic,
                    )
                )
    return entries
