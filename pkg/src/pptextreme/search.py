"""Random walk over faces of the Peres set towards an extreme point.

Each iteration takes a random traceless direction inside the current face,
moves along it to the first point where the state or its partial transpose
loses rank, and repeats until the face is a single point.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bipartite import BipartiteDims, DensityMatrix, _as_dims, partial_transpose
from .extremality import ExtremalityReport, InternalError, test_extremality
from .linalg import DEFAULT_TOL, Tolerances, hermitian, image_basis, numerical_rank
from .mspace import devectorize

log = logging.getLogger(__name__)

X_MAX = 1e6


class SearchError(RuntimeError):
    """The search could not make progress; carries the partial trace."""

    def __init__(self, message: str, trace: SearchTrace | None = None):
        super().__init__(message)
        self.trace = trace


class BorderlineSpectrumError(SearchError):
    """An extremality test along the way returned a borderline spectrum."""


@dataclass
class SearchTrace:
    """Record of one search: states, their rank pairs and the step sizes taken."""

    seed: object
    states: list[DensityMatrix] = field(default_factory=list)
    rank_pairs: list[tuple[int, int]] = field(default_factory=list)
    step_sizes: list[float] = field(default_factory=list)
    reports: list[ExtremalityReport] = field(default_factory=list, repr=False)
    final_report: ExtremalityReport | None = None

    @property
    def terminal(self) -> DensityMatrix:
        return self.states[-1]

    def __len__(self) -> int:
        return len(self.states)


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def traceless_direction(sigma, rho: DensityMatrix) -> np.ndarray:
    """``sigma - Tr(sigma) rho``; keeps ``sigma`` inside the face of ``rho``."""
    sigma = hermitian(sigma)
    return hermitian(sigma - np.trace(sigma).real * rho.mat)


def random_face_direction(report: ExtremalityReport, rho: DensityMatrix, rng_seed) -> np.ndarray:
    """Unit-norm random traceless Hermitian direction inside the face of ``rho``.

    Standard normal coefficients on ``report.face_basis`` are normalized,
    devectorized, made traceless and renormalized in Frobenius norm.
    """
    if report.b_rank < 2:
        raise ValueError("face is a single point; no direction exists")
    rng = make_rng(rng_seed)
    for _ in range(16):
        coef = rng.standard_normal(report.b_rank)
        coef /= np.linalg.norm(coef)
        sigma = traceless_direction(devectorize(coef @ report.face_basis, rho.dims), rho)
        norm = np.linalg.norm(sigma)
        if norm > 1e-8:
            return sigma / norm
    raise InternalError("could not draw a non-zero traceless face direction")


class _RestrictedSpectrum:
    """Smallest eigenvalue of ``rho + x sigma`` and of its partial transpose,
    each compressed to the image of the corresponding matrix at ``x = 0``.

    Kernel directions stay exact zeros along the whole line, so only the image
    blocks can produce the next zero eigenvalue.
    """

    def __init__(self, rho: DensityMatrix, sigma: np.ndarray, tol: Tolerances):
        dims = rho.dims
        v = image_basis(rho.mat, tol)
        w = image_basis(rho.pt(), tol)
        vh, wh = v.conj().T, w.conj().T
        self.r0 = vh @ rho.mat @ v
        self.r1 = vh @ sigma @ v
        self.s0 = wh @ rho.pt() @ w
        self.s1 = wh @ partial_transpose(sigma, dims) @ w

    def __call__(self, x: float) -> float:
        a = np.linalg.eigvalsh(self.r0 + x * self.r1)[0]
        b = np.linalg.eigvalsh(self.s0 + x * self.s1)[0]
        return float(min(a, b))


def _cleanup(tau: np.ndarray, dims: BipartiteDims, tol: Tolerances) -> DensityMatrix:
    """Symmetrize, clip tiny negative eigenvalues to zero, renormalize the trace."""
    tau = hermitian(tau)
    vals, vecs = np.linalg.eigh(tau)
    scale = np.max(np.abs(vals))
    if vals[0] < -tol.zero_eig * max(scale, 1.0):
        raise InternalError(f"stepped state has eigenvalue {vals[0]:.3e}")
    vals = np.clip(vals, 0.0, None)
    tau = hermitian((vecs * vals) @ vecs.conj().T)
    tau = tau / np.trace(tau).real
    tau.setflags(write=False)
    return DensityMatrix(tau, dims)


def boundary_distance(rho: DensityMatrix, sigma, direction: int = 1, tol: Tolerances = DEFAULT_TOL) -> float:
    """Largest ``|x|`` with ``rho + x sigma`` still PPT, ``x`` signed by ``direction``.

    Brackets by doubling, then bisects the sign change of the restricted
    minimal eigenvalue down to ``tol.bisect``.  Returns the feasible end of the
    final bracket.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    sigma = hermitian(sigma) * direction
    f = _RestrictedSpectrum(rho, sigma, tol)
    lo, hi = 0.0, 1e-3
    while f(hi) >= 0:
        lo, hi = hi, 2 * hi
        if hi > X_MAX:
            raise InternalError("line search unbounded; the Peres set is compact")
    while hi - lo > tol.bisect:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return direction * lo


def line_search_to_boundary(
    rho: DensityMatrix, sigma, direction: int = 1, tol: Tolerances = DEFAULT_TOL
) -> tuple[DensityMatrix, float]:
    """Step from ``rho`` along ``direction * sigma`` to the boundary of the current face.

    Returns the cleaned-up boundary state and the signed step ``x*``.
    """
    x = boundary_distance(rho, sigma, direction, tol)
    tau = rho.mat + x * hermitian(sigma)
    return _cleanup(tau, rho.dims, tol), x


def find_extreme(
    rho_start: DensityMatrix, rng_seed=0, tol: Tolerances = DEFAULT_TOL, strict: bool = True
) -> SearchTrace:
    """Walk from ``rho_start`` to an extreme point of the Peres set.

    The seed is anything accepted by :func:`numpy.random.default_rng`; it is
    stored on the trace for replay.
    """
    rng = make_rng(rng_seed)
    dims = rho_start.dims
    trace = SearchTrace(seed=rng_seed)
    rho = rho_start
    max_iter = 4 * dims.n
    for _ in range(max_iter):
        try:
            report = test_extremality(rho, tol)
        except InternalError as exc:
            raise SearchError(f"at state {len(trace)}: {exc}", trace) from exc
        trace.states.append(rho)
        trace.rank_pairs.append(report.rank_pair)
        trace.reports.append(report)
        if report.borderline and strict:
            raise BorderlineSpectrumError(
                f"borderline spectrum at ranks {report.rank_pair}: next eigenvalue {report.next_eigenvalue!r}",
                trace,
            )
        if report.is_extreme:
            trace.final_report = report
            return trace
        n, m = report.rank_pair
        for attempt in range(2):
            sigma = random_face_direction(report, rho, rng)
            direction = 1 if rng.random() < 0.5 else -1
            try:
                new_rho, x = line_search_to_boundary(rho, sigma, direction, tol)
            except InternalError as exc:
                raise SearchError(f"line search from ranks {(n, m)}: {exc}", trace) from exc
            n2, m2 = numerical_rank(new_rho.mat, tol), numerical_rank(new_rho.pt(), tol)
            if n2 <= n and m2 <= m and (n2 < n or m2 < m):
                break
            log.debug("step at ranks %s gave %s; retrying", (n, m), (n2, m2))
        else:
            raise SearchError(f"no rank drop from ranks {(n, m)} after retry", trace)
        trace.step_sizes.append(x)
        rho = new_rho
    raise SearchError(f"iteration cap {max_iter} exceeded", trace)


def convex_split(rho: DensityMatrix, rng_seed=0, tol: Tolerances = DEFAULT_TOL, max_tries: int = 32):
    """Write a non-extreme ``rho`` as ``w rho1 + (1 - w) rho2`` with both ends extreme.

    Draws face directions until the line through ``rho`` meets the face boundary
    at an extreme point on both sides.  Returns ``(rho1, rho2, w)``.
    """
    rng = make_rng(rng_seed)
    report = test_extremality(rho, tol)
    if report.is_extreme:
        raise ValueError("state is already extreme")
    for _ in range(max_tries):
        sigma = random_face_direction(report, rho, rng)
        end1, x1 = line_search_to_boundary(rho, sigma, 1, tol)
        end2, x2 = line_search_to_boundary(rho, sigma, -1, tol)
        if test_extremality(end1, tol).is_extreme and test_extremality(end2, tol).is_extreme:
            return end1, end2, -x2 / (x1 - x2)
    raise SearchError(f"no face line with two extreme ends in {max_tries} tries")


def maximally_mixed_state(dims) -> DensityMatrix:
    dims = _as_dims(dims)
    mat = np.eye(dims.n, dtype=complex) / dims.n
    mat.setflags(write=False)
    return DensityMatrix(mat, dims)


def canonical_pair(pair) -> tuple[int, int]:
    n, m = pair
    return (n, m) if n <= m else (m, n)


def _survey_run(args):
    dims, seed, tol = args
    trace = find_extreme(maximally_mixed_state(dims), seed, tol)
    return trace.final_report.rank_pair


def run_seed(seed: int, index: int) -> list[int]:
    """Seed of the ``index``-th run derived from one survey seed."""
    return [int(seed), int(index)]


def rank_survey(dims, num_runs: int, rng_seed: int = 0, tol: Tolerances = DEFAULT_TOL, workers: int = 1) -> Counter:
    """Histogram of unordered terminal rank pairs from searches started at ``1/N``.

    Run ``i`` uses the seed ``[rng_seed, i]``, so results do not depend on
    ``workers``.
    """
    if num_runs < 1:
        raise ValueError("num_runs must be >= 1")
    dims = _as_dims(dims)
    jobs = [(dims, run_seed(rng_seed, i), tol) for i in range(num_runs)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pairs = list(pool.map(_survey_run, jobs))
    else:
        pairs = [_survey_run(job) for job in jobs]
    return Counter(canonical_pair(p) for p in pairs)
