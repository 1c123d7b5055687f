"""The perfect-state-transfer engine: full decision procedure, constructive
partner computation, numerical verification, universal pairs, extremal
minimum-time search, and fidelity scans."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .arith import symbolic_pi_multiple
from .errors import (
    FixedStateError,
    InvalidSizeError,
    InvalidStateError,
    NotCospectralError,
)
from .graphs import (
    ADJACENCY,
    LAPLACIAN,
    Graph,
    build_complete,
    build_empty,
    hamiltonian,
    join,
)
from .periodicity import (
    NonPeriodic,
    RatioTable,
    SpectralForm,
    classify_form,
    minimum_period,
    ratio_condition,
)
from .spectral import (
    DEFAULT_TOLERANCES,
    SpectralDecomposition,
    ToleranceConfig,
    as_state,
    decompose,
    evolve,
    fidelity,
)
from .states import FIXED, check_strong_cospectrality, support


@dataclass(eq=False)
class PstVerdict:
    """Decision object: either a transfer time with its phase and partition,
    or a structured refusal reason."""

    decision: bool
    tau_min: float | None = None
    tau_symbolic: str | None = None
    phase: complex | None = None
    sigma_plus: np.ndarray | None = None    # partition for the pair as given
    sigma_minus: np.ndarray | None = None
    ratio_table: RatioTable | None = None
    spectral_form: SpectralForm | None = None
    case: str | None = None                 # size2 | 2a | 2b
    reason: str | None = None
    detail: float | None = None

    def to_dict(self) -> dict:
        doc = {
            "decision": "yes" if self.decision else "no",
            "tau_min": self.tau_min,
            "tau_symbolic": self.tau_symbolic,
            "phase_re": None if self.phase is None else float(self.phase.real),
            "phase_im": None if self.phase is None else float(self.phase.imag),
            "sigma_plus": None if self.sigma_plus is None else [float(v) for v in self.sigma_plus],
            "sigma_minus": None if self.sigma_minus is None else [float(v) for v in self.sigma_minus],
            "ratio_table": None,
            "reason": self.reason,
            "case": self.case,
        }
        if self.ratio_table is not None:
            doc["ratio_table"] = {
                "lambda1": self.ratio_table.lambda1,
                "lambda2": self.ratio_table.lambda2,
                "p": list(self.ratio_table.p),
                "q": list(self.ratio_table.q),
            }
        return doc


@dataclass(eq=False)
class PstVerification:
    fidelity: float
    phase: complex
    residual: float
    passed: bool


@dataclass(eq=False)
class ScanResult:
    times: np.ndarray
    values: np.ndarray
    peak_time: float
    peak_value: float


@dataclass(eq=False)
class ExtremalReport:
    kind: str
    n: int
    graph: Graph
    x: np.ndarray
    y: np.ndarray
    tau: float
    tau_symbolic: str | None
    optimality: str
    verdict: PstVerdict
    oracle: dict | None = None


def _refusal(reason: str, detail: float | None = None, **kw) -> PstVerdict:
    return PstVerdict(decision=False, reason=reason, detail=detail, **kw)


def pst_decide(
    dec: SpectralDecomposition, x, y, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> PstVerdict:
    """Decide perfect state transfer between x and y.

    Decision tree: strong cospectrality, then the ratio condition on the
    support, then (for supports of size >= 3) the parity conditions on the
    reconstructed integers, dispatched on whether the second-largest support
    eigenvalue sits in the plus or minus class. Valuations are taken on exact
    reconstructed integers, never on floats.
    """
    x = as_state(x, dec.n)
    y = as_state(y, dec.n)
    prof = support(dec, x, cfg)
    if prof.kind == FIXED:
        return _refusal("fixed-state")
    try:
        cert = check_strong_cospectrality(dec, x, y, cfg, profile=prof)
    except FixedStateError:
        return _refusal("fixed-state")
    except NotCospectralError as exc:
        return _refusal("not-cospectral", detail=float(exc.eigenvalue))

    sup = prof.eigenvalues
    table = ratio_condition(sup, cfg)
    if isinstance(table, NonPeriodic):
        return _refusal(
            "not-periodic",
            detail=float(sup[table.offending_index]),
            sigma_plus=cert.sigma_plus,
            sigma_minus=cert.sigma_minus,
        )
    rho = minimum_period(sup, table, cfg)
    tau = rho / 2.0
    m = prof.size
    form = classify_form(sup, cfg)

    if m == 2:
        case = "size2"
        ok = True
    else:
        plus = set(cert.plus_positions)
        minus = set(cert.minus_positions)
        if 0 in minus:  # canonicalize: largest support eigenvalue kept positive
            plus, minus = minus, plus
        case = "2a" if 1 in plus else "2b"
        q = table.lcm
        ok = True
        for pos in range(1, m):
            p_j, q_j = (1, 1) if pos == 1 else (table.p[pos - 2], table.q[pos - 2])
            r_j = (q // q_j) * p_j  # exact: q is the lcm of the q_j
            if (r_j % 2 == 0) != (pos in plus):
                ok = False
                break
    if not ok:
        return _refusal(
            f"parity-condition-failed({case})",
            sigma_plus=cert.sigma_plus,
            sigma_minus=cert.sigma_minus,
            ratio_table=table,
            spectral_form=form,
            case=case,
        )
    # phase is shared by every plus eigenvalue of the pair as given
    gamma = complex(np.exp(1j * tau * float(cert.sigma_plus[0])))
    return PstVerdict(
        decision=True,
        tau_min=tau,
        tau_symbolic=symbolic_pi_multiple(tau),
        phase=gamma,
        sigma_plus=cert.sigma_plus,
        sigma_minus=cert.sigma_minus,
        ratio_table=table,
        spectral_form=form,
        case=case,
    )


def pst_partner(
    dec: SpectralDecomposition, x, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> np.ndarray | None:
    """The unique state admitting transfer from x, or None when x is not
    periodic. Constructed by flipping the support components selected by the
    parity pattern of the reconstructed ratio integers."""
    x = as_state(x, dec.n)
    prof = support(dec, x, cfg)
    if prof.kind == FIXED:
        raise FixedStateError("fixed states admit no transfer")
    if prof.size == 2:
        return x - 2.0 * prof.components[1]
    table = ratio_condition(prof.eigenvalues, cfg)
    if isinstance(table, NonPeriodic):
        return None
    ps = (0, 1) + table.p
    qs = (1, 1) + table.q
    if any(q % 2 == 0 for q in qs):
        vals = [math.inf if q == 0 else (q & -q).bit_length() - 1 for q in qs]
        eta = max(vals)
        flips = [pos for pos, v in enumerate(vals) if v == eta]
    else:
        flips = [pos for pos, p in enumerate(ps) if p % 2 == 1]
    y = x - 2.0 * prof.components[flips].sum(axis=0)
    return y


def verify_pst_numeric(
    dec: SpectralDecomposition, x, y, tau: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> PstVerification:
    """Evolve x to time tau, extract the best unit phase against y, and pass
    iff the residual ||U(tau) x - gamma y|| is within tol_phase * ||x||."""
    if not tau > 0:
        raise InvalidStateError("tau must be positive")
    x = as_state(x, dec.n)
    y = as_state(y, dec.n)
    z = evolve(dec, tau, x)
    inner = complex(y @ z)
    gamma = inner / abs(inner) if abs(inner) > 0 else complex(1.0)
    residual = float(np.linalg.norm(z - gamma * y))
    fid = float(abs(inner) ** 2 / (np.dot(x, x) * np.dot(y, y)))
    return PstVerification(
        fidelity=min(fid, 1.0),
        phase=gamma,
        residual=residual,
        passed=residual <= cfg.tol_phase * float(np.linalg.norm(x)),
    )


def universal_pst_pair(
    dec: SpectralDecomposition,
) -> tuple[np.ndarray, np.ndarray, float]:
    """A transfer pair every matrix with two distinct eigenvalues admits:
    sums and differences of extreme-eigenvalue eigenvectors, at
    pi/(lambda_max - lambda_min)."""
    if dec.k < 2:
        raise InvalidStateError("matrix has a single eigenvalue; no pair exists")
    u = dec.eigenvector(0)
    v = dec.eigenvector(dec.k - 1)
    tau = math.pi / float(dec.eigenvalues[0] - dec.eigenvalues[-1])
    return u + v, u - v, tau


def fidelity_scan(
    dec: SpectralDecomposition,
    x,
    y,
    t_max: float,
    steps: int,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> ScanResult:
    """Uniformly sampled fidelity with a golden-section refinement of the peak."""
    if steps < 2:
        raise InvalidStateError("steps must be at least 2")
    x = as_state(x, dec.n)
    y = as_state(y, dec.n)
    amps = dec.projectors @ x @ y  # c_j = y^T E_j x
    denom = float(np.dot(x, x) * np.dot(y, y))

    def f(t: float) -> float:
        return float(abs(np.exp(1j * t * dec.eigenvalues) @ amps) ** 2 / denom)

    times = np.linspace(0.0, t_max, steps)
    values = np.array([f(t) for t in times])
    best = int(np.argmax(values))
    lo = times[max(best - 1, 0)]
    hi = times[min(best + 1, steps - 1)]
    golden = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - golden * (b - a)
    d = a + golden * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(80):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - golden * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + golden * (b - a)
            fd = f(d)
    peak_t = (a + b) / 2.0
    peak_v = f(peak_t)
    if values[best] > peak_v:
        peak_t, peak_v = float(times[best]), float(values[best])
    return ScanResult(times=times, values=values, peak_time=float(peak_t), peak_value=float(peak_v))


def _laplacian_spread_oracle(n: int) -> dict:
    """Exhaustive maximum Laplacian spread over connected unweighted graphs.

    The minimum period of any state is at least 2*pi/spread, so the maximum
    spread certifies the least achievable period. Guarded to n <= 6.
    """
    if n > 6:
        raise InvalidSizeError("exhaustive search is guarded to n <= 6")
    pairs = list(combinations(range(n), 2))
    iu = np.array([p[0] for p in pairs]), np.array([p[1] for p in pairs])
    best = 0.0
    attained = 0
    checked = 0
    for mask in range(2 ** len(pairs)):
        bits = np.array([(mask >> k) & 1 for k in range(len(pairs))], dtype=float)
        a = np.zeros((n, n))
        a[iu] = bits
        a += a.T
        reach = np.linalg.matrix_power(np.eye(n) + a, n - 1)
        if np.min(reach[0]) <= 0:
            continue
        checked += 1
        w = np.linalg.eigvalsh(np.diag(a.sum(axis=1)) - a)
        spread = float(w[-1] - w[0])
        if spread > best + 1e-9:
            best = spread
            attained = 1
        elif spread > best - 1e-9:
            attained += 1
    return {"n": n, "connected_graphs": checked, "max_spread": best, "attained_count": attained}


def extremal_min_pst_search(
    n: int,
    kind: str,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    exhaustive: bool = False,
) -> ExtremalReport:
    """Graph and state pair attaining the least minimum transfer time among
    n-vertex unweighted graphs.

    Laplacian: any join graph works (spread exactly n); a star is emitted and
    the claim is exact. Adjacency: the split graph of an empty part of size
    ceil(n/3) with a complete part; the optimality of that shape is an
    asymptotic fact, so for finite n the report labels it as unverified.
    """
    if n < 2:
        raise InvalidSizeError("need n >= 2")
    if kind == LAPLACIAN:
        g = join(build_empty(1), build_empty(n - 1))  # star: simplest join
        w = np.concatenate([[float(n - 1)], -np.ones(n - 1)])
        w /= np.linalg.norm(w)
        ones = np.ones(n) / math.sqrt(n)
        x, y = ones + w, ones - w
        tau = math.pi / n
        optimality = "exact: the Laplacian spread of an n-vertex graph is at most n, attained exactly by join graphs"
        oracle = _laplacian_spread_oracle(n) if exhaustive else None
    elif kind == ADJACENCY:
        a = math.ceil(n / 3)
        g = join(build_empty(a), build_complete(n - a))
        k_reg = float(n - a - 1)
        disc = math.sqrt(k_reg**2 + 4.0 * a * (n - a))
        lam_plus = (k_reg + disc) / 2.0
        lam_minus = (k_reg - disc) / 2.0
        u = np.concatenate([-lam_minus * np.ones(a), a * np.ones(n - a)])
        v = np.concatenate([-lam_plus * np.ones(a), a * np.ones(n - a)])
        u /= np.linalg.norm(u)
        v /= np.linalg.norm(v)
        x, y = u + v, u - v
        tau = math.pi / disc
        optimality = "asymptotic: maximal adjacency spread by this split graph is guaranteed only for sufficiently large n; unverified at this n"
        oracle = None
    else:
        raise ValueError(f"unknown kind {kind!r}")
    dec = decompose(hamiltonian(g, kind), cfg)
    verdict = pst_decide(dec, x, y, cfg)
    return ExtremalReport(
        kind=kind,
        n=n,
        graph=g,
        x=x,
        y=y,
        tau=tau,
        tau_symbolic=symbolic_pi_multiple(tau),
        optimality=optimality,
        verdict=verdict,
        oracle=oracle,
    )
