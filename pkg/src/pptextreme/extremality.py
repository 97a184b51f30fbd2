"""Extremality test for points of the Peres set (states with positive partial transpose).

A PPT state is extreme exactly when the eigenvalue-1 eigenspace of
``P Qbar P`` is one-dimensional, ``P`` and ``Q`` being the projectors onto the
images of the state and of its partial transpose.  That eigenspace always
contains the state itself.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .bipartite import BipartiteDims, DensityMatrix, NotPPTError, _as_dims, is_ppt
from .linalg import DEFAULT_TOL, EigensolverError, Tolerances, image_basis, numerical_rank
from .mspace import _basis_array, combined_operator, vectorize


class Verdict(enum.Enum):
    EXTREME = "extreme"
    NOT_EXTREME = "not-extreme"
    BORDERLINE = "borderline"


class InternalError(RuntimeError):
    """A condition that exact arithmetic rules out was detected numerically."""


@dataclass(frozen=True, eq=False)
class ExtremalityReport:
    """Outcome of :func:`test_extremality`.

    ``next_eigenvalue`` is the largest eigenvalue of ``P Qbar P`` below the
    eigenvalue-1 cluster (0 when the cluster fills the whole space) and
    ``spectrum_gap`` is its distance from 1.  ``face_basis`` holds the
    ``b_rank`` orthonormal coordinate vectors spanning the cluster.
    """

    n: int
    m: int
    b_rank: int
    next_eigenvalue: float
    spectrum_gap: float
    face_basis: np.ndarray = field(repr=False)
    dims: BipartiteDims
    borderline: bool = False

    @property
    def is_extreme(self) -> bool:
        return self.b_rank == 1

    @property
    def verdict(self) -> Verdict:
        if self.borderline:
            return Verdict.BORDERLINE
        return Verdict.EXTREME if self.is_extreme else Verdict.NOT_EXTREME

    @property
    def rank_pair(self) -> tuple[int, int]:
        return self.n, self.m


def check_rank_bound(n: int, m: int, dims) -> bool:
    """Whether ranks ``(n, m)`` are compatible with extremality: ``n^2 + m^2 <= N^2 + 1``."""
    if n < 0 or m < 0:
        raise ValueError("ranks must be non-negative")
    big_n = _as_dims(dims).n
    return n * n + m * m <= big_n * big_n + 1


def _projector(vecs: np.ndarray) -> np.ndarray:
    p = vecs @ vecs.conj().T
    return (p + p.conj().T) / 2


def face_eigensystem(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL):
    """Eigenvalues (ascending) and eigenvectors of ``P Qbar P`` for ``rho``."""
    p = _projector(image_basis(rho.mat, tol))
    q = _projector(image_basis(rho.pt(), tol))
    op = combined_operator(p, q, rho.dims, tol)
    try:
        return np.linalg.eigh(op)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(str(exc)) from exc


def face_null_space(rho: DensityMatrix, dim: int | None = None, tol: Tolerances = DEFAULT_TOL):
    """Face basis and the spectrum of ``P Qbar P`` near 1, from one singular value decomposition.

    Writes ``sigma = V X V^dagger`` with ``V`` spanning the image of ``rho`` and
    maps ``X`` to the blocks ``K^dagger sigma^P K`` and ``sqrt 2 K^dagger sigma^P W``,
    with ``K`` and ``W`` spanning kernel and image of the partial transpose.
    The squared norm of the result is ``|Y - Q Y Q|^2`` for ``Y = sigma^P``, so
    the squared singular values are ``1 - lambda`` for the eigenvalues
    ``lambda`` of ``P Qbar P`` on the face ``P M P``.  They are returned ascending (padded with
    zeros), together with the ``dim`` right singular vectors of smallest
    singular value as coordinate vectors.  With ``dim=None`` the face dimension
    is the number of values below ``tol.one_eig``.

    Working with ``sqrt(1 - lambda)`` instead of ``lambda`` resolves gaps down
    to about ``eps^2``, and the face basis is contaminated only at the level
    ``eps / sqrt(1 - lambda_next)``.
    """
    dims = rho.dims
    big_n = dims.n
    v = image_basis(rho.mat, tol)
    n = v.shape[1]
    dec = np.linalg.eigh(rho.pt())
    m = numerical_rank(rho.pt(), tol)
    k = dec[1][:, : big_n - m]  # ascending order: kernel first
    herm = _basis_array(n)
    if k.shape[1] == 0:
        coeffs = np.eye(n * n)
        gaps = np.zeros(n * n)
    else:
        sig = np.einsum("ia,jab,kb->jik", v, herm, v.conj(), optimize=True)
        sig_pt = sig.reshape(-1, dims.n_a, dims.n_b, dims.n_a, dims.n_b).transpose(0, 1, 4, 3, 2)
        sig_pt = sig_pt.reshape(-1, big_n, big_n)
        w = dec[1][:, big_n - m :]
        kk = np.einsum("ia,jib,bc->jac", k.conj(), sig_pt, k, optimize=True).reshape(n * n, -1)
        kw = np.einsum("ia,jib,bc->jac", k.conj(), sig_pt, w, optimize=True).reshape(n * n, -1)
        cons = np.concatenate([kk.real, kk.imag, np.sqrt(2) * kw.real, np.sqrt(2) * kw.imag], axis=1).T
        _, svals, vt = np.linalg.svd(cons, full_matrices=True)
        coeffs = vt[::-1]
        gaps = np.zeros(n * n)
        gaps[n * n - svals.size :] = svals[::-1] ** 2
    if dim is None:
        dim = int(np.count_nonzero(gaps < tol.one_eig))
    coeffs = coeffs[:dim]
    mats = np.einsum("ia,jab,kb->jik", v, np.tensordot(coeffs, herm, axes=1), v.conj(), optimize=True)
    face = np.stack([vectorize(a, dims) for a in mats]) if dim else np.zeros((0, big_n * big_n))
    return face, gaps


def test_extremality(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> ExtremalityReport:
    """Decide whether ``rho`` is an extreme point of the Peres set.

    ``b_rank`` counts the eigenvalues of ``P Qbar P`` above ``1 - tol.one_eig``;
    the spectrum is taken from :func:`face_null_space`.

    Raises
    ------
    NotPPTError
        If the partial transpose of ``rho`` has a negative eigenvalue.
    InternalError
        If no eigenvalue reaches 1 or ``rho`` falls outside the computed face;
        both are impossible in exact arithmetic.

    A spectrum with an eigenvalue in ``(1 - 11*one_eig, 1 - one_eig]`` is
    flagged ``borderline`` instead of being classified silently.
    """
    if not is_ppt(rho, tol):
        raise NotPPTError("state is not PPT")
    n = numerical_rank(rho.mat, tol)
    m = numerical_rank(rho.pt(), tol)
    face, gaps = face_null_space(rho, None, tol)
    b_rank = face.shape[0]
    if b_rank == 0:
        raise InternalError(f"no eigenvalue of P Qbar P reaches 1 (largest {1 - gaps[0]!r})")
    next_eig = float(1 - gaps[b_rank]) if b_rank < gaps.size else 0.0

    # rho sits on its face up to its own kernel defect, amplified by the softest
    # direction outside the face
    v = vectorize(rho.mat, rho.dims)
    residual = np.linalg.norm(v - face.T @ (face @ v))
    q = _projector(image_basis(rho.pt(), tol))
    defect = np.linalg.norm(rho.pt() - q @ rho.pt() @ q)
    allowed = 1e-8 + 10 * defect / np.sqrt(max(1 - next_eig, tol.one_eig))
    if residual > allowed:
        raise InternalError(f"state lies {residual:.2e} away from its own face (allowed {allowed:.2e})")

    return ExtremalityReport(
        n=n,
        m=m,
        b_rank=b_rank,
        next_eigenvalue=next_eig,
        spectrum_gap=1.0 - next_eig,
        face_basis=face,
        dims=rho.dims,
        borderline=next_eig > 1 - 11 * tol.one_eig,
    )


def is_pure_product(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Rank-one state whose vector has a single non-zero Schmidt coefficient."""
    if numerical_rank(rho.mat, tol) != 1:
        return False
    vals, vecs = np.linalg.eigh(rho.mat)
    psi = vecs[:, -1].reshape(rho.dims.n_a, rho.dims.n_b)
    s = np.linalg.svd(psi, compute_uv=False)
    return bool(s[0] > 1 - 1e-8)


# keep pytest from collecting the function when it is imported into test modules
test_extremality.__test__ = False
