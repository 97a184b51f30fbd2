"""Two-dimensional affine sections through the state space.

A section is ``rho(x, y) = origin + x dir1 + y dir2`` with traceless,
orthonormal directions.  Every grid point records the smallest eigenvalue of
``rho(x, y)`` and of its partial transpose; the boundary curves
``det rho = 0`` and ``det rho^P = 0`` are the zero level sets of these fields.
Separable and entangled PPT points are not distinguished.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field

import numpy as np

from .bipartite import DensityMatrix, partial_transpose
from .extremality import ExtremalityReport, test_extremality
from .linalg import DEFAULT_TOL, Tolerances, hermitian
from .search import line_search_to_boundary, make_rng, random_face_direction


class Region(enum.Enum):
    NOT_PSD = "NOT_PSD"
    PPT = "PPT"
    NOT_PPT = "NOT_PPT"


@dataclass(frozen=True, eq=False)
class SectionSpec:
    origin: DensityMatrix
    dir1: np.ndarray
    dir2: np.ndarray
    grid: tuple[int, int] = (41, 41)
    extent: tuple[float, float, float, float] = (-1.0, 1.0, -1.0, 1.0)

    def __post_init__(self):
        d1, d2 = hermitian(self.dir1), hermitian(self.dir2)
        if abs(np.trace(d1)) > 1e-12 or abs(np.trace(d2)) > 1e-12:
            raise ValueError("section directions must be traceless")
        if abs(np.trace(d1 @ d2)) > 1e-10:
            raise ValueError("section directions must be orthogonal under Tr(AB)")
        nx, ny = self.grid
        if nx < 1 or ny < 1:
            raise ValueError("grid must have at least one point per axis")
        object.__setattr__(self, "dir1", d1)
        object.__setattr__(self, "dir2", d2)

    def point(self, x: float, y: float) -> np.ndarray:
        return self.origin.mat + x * self.dir1 + y * self.dir2

    def coordinates(self):
        nx, ny = self.grid
        x0, x1, y0, y1 = self.extent
        return np.linspace(x0, x1, nx), np.linspace(y0, y1, ny)


@dataclass(frozen=True)
class SectionSample:
    x: float
    y: float
    min_eig_rho: float
    min_eig_rho_pt: float
    region: Region


def classify(min_eig_rho: float, min_eig_rho_pt: float, tol: Tolerances = DEFAULT_TOL) -> Region:
    if min_eig_rho <= -tol.zero_eig:
        return Region.NOT_PSD
    if min_eig_rho_pt <= -tol.zero_eig:
        return Region.NOT_PPT
    return Region.PPT


def sample_point(mat: np.ndarray, dims, x: float, y: float, tol: Tolerances = DEFAULT_TOL) -> SectionSample:
    a = float(np.linalg.eigvalsh(mat)[0])
    b = float(np.linalg.eigvalsh(partial_transpose(mat, dims))[0])
    return SectionSample(float(x), float(y), a, b, classify(a, b, tol))


def sample_section(spec: SectionSpec, tol: Tolerances = DEFAULT_TOL) -> list[SectionSample]:
    """Evaluate the section on its grid, ordered by row (``y``) then column (``x``)."""
    xs, ys = spec.coordinates()
    dims = spec.origin.dims
    return [sample_point(spec.point(x, y), dims, x, y, tol) for y in ys for x in xs]


def orthonormal_traceless(d1, d2=None, rng=None) -> tuple[np.ndarray, np.ndarray]:
    """Normalize ``d1`` and Gram-Schmidt ``d2`` against it (random traceless if ``None``).

    Both inputs must already be traceless.
    """
    d1 = hermitian(d1)
    d1 = d1 / np.linalg.norm(d1)
    rng = make_rng(rng)
    for _ in range(16):
        cand = d2
        if cand is None:
            z = rng.standard_normal(d1.shape) + 1j * rng.standard_normal(d1.shape)
            cand = hermitian(z)
            cand = cand - np.trace(cand).real / cand.shape[0] * np.eye(cand.shape[0])
        cand = hermitian(cand)
        cand = cand - np.trace(d1 @ cand).real * d1
        norm = np.linalg.norm(cand)
        if norm > 1e-9:
            return d1, cand / norm
        d2 = None
    raise ValueError("could not build a second direction orthogonal to the first")


def section_through(state_a: DensityMatrix, state_b: DensityMatrix, grid=(41, 41), extent=None, rng=None) -> SectionSpec:
    """Plane through two states, also containing ``1/N`` when that is not collinear.

    The origin is ``state_a``; ``dir1`` points to ``state_b`` so ``state_b`` sits at
    ``(|b - a|, 0)``.
    """
    if state_a.dims != state_b.dims:
        raise ValueError("states live on different dimensions")
    diff = state_b.mat - state_a.mat
    dist = np.linalg.norm(diff)
    if dist < 1e-12:
        raise ValueError("degenerate direction: the two states coincide")
    n = state_a.n
    toward_mixed = np.eye(n) / n - state_a.mat
    d1 = diff / dist
    resid = toward_mixed - np.trace(d1 @ toward_mixed).real * d1
    d2 = resid if np.linalg.norm(resid) > 1e-9 else None
    d1, d2 = orthonormal_traceless(d1, d2, rng)
    if extent is None:
        r = 1.5 * dist
        extent = (-r, r, -r, r)
    return SectionSpec(state_a, d1, d2, tuple(grid), tuple(extent))


@dataclass(frozen=True)
class BoundaryPoint:
    angle: float
    radius: float
    rank_pair: tuple[int, int]
    b_rank: int
    is_extreme: bool


@dataclass(eq=False)
class FaceSection:
    spec: SectionSpec
    samples: list[SectionSample]
    boundary: list[BoundaryPoint] = field(default_factory=list)

    def boundary_pairs(self):
        from collections import Counter

        return Counter(p.rank_pair for p in self.boundary)


def face_section(
    rho_interior: DensityMatrix,
    report: ExtremalityReport,
    rng_seed=0,
    grid=(41, 41),
    tol: Tolerances = DEFAULT_TOL,
    num_rays: int = 180,
    extent=None,
    directions=None,
) -> FaceSection:
    """Planar section through the face of ``rho_interior`` (needs ``b_rank >= 3``).

    The plane is spanned by two random face directions unless ``directions``
    gives a pair of traceless face directions explicitly.  Besides the grid,
    ``num_rays`` equally spaced rays from the origin are followed to the face
    boundary by bisection; each boundary point is run through
    :func:`test_extremality` and its rank pair recorded.
    """
    if report.b_rank < 3:
        raise ValueError(f"face of dimension {report.b_rank - 1} has no planar section")
    rng = make_rng(rng_seed)
    if directions is None:
        d1 = random_face_direction(report, rho_interior, rng)
        d2 = random_face_direction(report, rho_interior, rng)
    else:
        d1, d2 = directions
    d1, d2 = orthonormal_traceless(d1, d2, rng)

    boundary = []
    for theta in np.linspace(0, 2 * np.pi, num_rays, endpoint=False):
        u = np.cos(theta) * d1 + np.sin(theta) * d2
        state, r = line_search_to_boundary(rho_interior, u, 1, tol)
        rep = test_extremality(state, tol)
        boundary.append(BoundaryPoint(float(theta), float(r), rep.rank_pair, rep.b_rank, rep.is_extreme))

    if extent is None:
        r = 1.1 * max(p.radius for p in boundary)
        extent = (-r, r, -r, r)
    spec = SectionSpec(rho_interior, d1, d2, tuple(grid), tuple(extent))
    return FaceSection(spec, sample_section(spec, tol), boundary)


def trace_face_section(trace, rng_seed=0, grid=(41, 41), tol: Tolerances = DEFAULT_TOL, num_rays: int = 180, extent=None):
    """Section through the face of the penultimate state of a recorded search.

    The plane contains the recorded last step, so the terminal extreme point
    lies on the section; the second direction is a random face direction.
    """
    if len(trace.states) < 2:
        raise ValueError("trace has no penultimate state")
    rho, report = trace.states[-2], trace.reports[-2]
    rng = make_rng(rng_seed)
    step = trace.states[-1].mat - rho.mat
    other = random_face_direction(report, rho, rng)
    return face_section(rho, report, rng, grid, tol, num_rays, extent, directions=(step, other))


def _boundary_at(section: FaceSection, theta: float, tol: Tolerances):
    spec = section.spec
    u = np.cos(theta) * spec.dir1 + np.sin(theta) * spec.dir2
    state, r = line_search_to_boundary(spec.origin, u, 1, tol)
    rep = test_extremality(state, tol)
    return BoundaryPoint(float(theta), float(r), rep.rank_pair, rep.b_rank, rep.is_extreme)


def locate_joins(section: FaceSection, tol: Tolerances = DEFAULT_TOL, resolution: float = 1e-13) -> list[BoundaryPoint]:
    """Bisect in angle between neighbouring rays whose boundary rank pairs differ.

    Returns the boundary point at each located change of rank type; where two
    boundary parts meet this is typically a point of lower rank in both.
    """
    pts = section.boundary
    joins = []
    for i, left in enumerate(pts):
        right = pts[(i + 1) % len(pts)]
        if left.rank_pair == right.rank_pair:
            continue
        lo = left.angle
        hi = right.angle if right.angle > lo else right.angle + 2 * np.pi
        found = None
        while hi - lo > resolution:
            mid = 0.5 * (lo + hi)
            pt = _boundary_at(section, mid, tol)
            if pt.rank_pair == left.rank_pair:
                lo = mid
            elif pt.rank_pair == right.rank_pair:
                hi = mid
            else:
                found = pt
                break
        joins.append(found or _boundary_at(section, 0.5 * (lo + hi), tol))
    return joins


def probe_face_boundary(
    rho_interior: DensityMatrix, report: ExtremalityReport, num: int, rng_seed=0, tol: Tolerances = DEFAULT_TOL
) -> list[tuple[np.ndarray, tuple[int, int]]]:
    """Random face directions paired with the rank pair of the boundary point they reach."""
    rng = make_rng(rng_seed)
    out = []
    for _ in range(num):
        u = random_face_direction(report, rho_interior, rng)
        state, _ = line_search_to_boundary(rho_interior, u, 1, tol)
        out.append((u, test_extremality(state, tol).rank_pair))
    return out


CSV_HEADER = ("x", "y", "min_eig_rho", "min_eig_rho_pt", "region")


def _fmt(v: float) -> str:
    return format(v, ".17g")


def samples_to_csv(samples, fh=None) -> str | None:
    """Write samples as CSV (17 significant digits); returns the text if ``fh`` is None."""
    out = io.StringIO() if fh is None else fh
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for s in samples:
        w.writerow([_fmt(s.x), _fmt(s.y), _fmt(s.min_eig_rho), _fmt(s.min_eig_rho_pt), s.region.value])
    return out.getvalue() if fh is None else None


def samples_from_csv(text: str) -> list[SectionSample]:
    rows = list(csv.reader(io.StringIO(text)))
    if tuple(rows[0]) != CSV_HEADER:
        raise ValueError(f"unexpected header {rows[0]}")
    return [SectionSample(float(x), float(y), float(a), float(b), Region(r)) for x, y, a, b, r in rows[1:]]
