"""Dense Hermitian matrix algebra: spectral decomposition, ranks, PSD tests, image projectors.

Hermitian matrices are plain complex ``numpy`` arrays throughout the package.
Every entry point that accepts one passes it through :func:`hermitian`, which
symmetrizes ``A <- (A + A^dagger)/2`` so that rounding drift never propagates
non-Hermiticity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class EigensolverError(RuntimeError):
    """The dense Hermitian eigensolver failed to converge."""


class NotPSDError(ValueError):
    """A matrix required to be positive semidefinite is not."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every operation.

    ``zero_eig`` is relative to the largest eigenvalue magnitude. ``recon`` is
    per unit dimension: the reconstruction tolerance for an ``N x N`` matrix is
    ``recon * N``.  ``one_eig`` bounds ``1 - lambda`` for eigenvalues of the
    face operator counted as 1; those are computed as squared singular values,
    so genuine zeros sit near ``eps^2``.
    """

    zero_eig: float = 1e-9
    one_eig: float = 1e-14
    recon: float = 1e-10
    orth: float = 1e-10
    bisect: float = 1e-12

    def __post_init__(self):
        for name in ("zero_eig", "one_eig", "recon", "orth", "bisect"):
            value = getattr(self, name)
            if not 0 < value < 1e-3:
                raise ValueError(f"tolerance {name}={value!r} must lie in (0, 1e-3)")

    def recon_for(self, dim: int) -> float:
        return self.recon * dim


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues sorted descending, with eigenvectors as the matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        vecs = self.eigenvectors
        return (vecs * self.eigenvalues) @ vecs.conj().T


def hermitian(a) -> np.ndarray:
    """Return ``(a + a^dagger)/2`` as a complex square array."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    return (a + a.conj().T) / 2


def spectral_decompose(a) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix.

    LAPACK's Hermitian driver (``zheevd``) does the work; its iteration count is
    bounded internally and a failure surfaces as :class:`EigensolverError`.
    """
    a = hermitian(a)
    try:
        vals, vecs = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(str(exc)) from exc
    return SpectralDecomposition(vals[::-1].copy(), vecs[:, ::-1].copy())


def eigvalsh(a) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending."""
    try:
        return np.linalg.eigvalsh(hermitian(a))
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(str(exc)) from exc


def _rank_of_spectrum(vals: np.ndarray, tol: Tolerances) -> int:
    scale = np.max(np.abs(vals))
    if scale == 0:
        return 0
    return int(np.count_nonzero(np.abs(vals) > tol.zero_eig * scale))


def numerical_rank(a, tol: Tolerances = DEFAULT_TOL) -> int:
    """Number of eigenvalues with ``|lambda| > zero_eig * max|lambda|``."""
    return _rank_of_spectrum(eigvalsh(a), tol)


def _psd_spectrum(vals: np.ndarray, tol: Tolerances) -> bool:
    return bool(vals.min() > -tol.zero_eig * max(np.max(np.abs(vals)), 1.0))


def is_psd(a, tol: Tolerances = DEFAULT_TOL) -> bool:
    return _psd_spectrum(eigvalsh(a), tol)


def image_basis(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal columns spanning the image of a PSD matrix."""
    dec = spectral_decompose(a)
    if not _psd_spectrum(dec.eigenvalues, tol):
        raise NotPSDError(f"matrix has eigenvalue {dec.eigenvalues[-1]:.3e} < 0")
    rank = _rank_of_spectrum(dec.eigenvalues, tol)
    # descending order puts the image eigenvectors first
    return dec.eigenvectors[:, :rank]


def image_projector(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the image (range) of a PSD matrix."""
    vecs = image_basis(a, tol)
    return hermitian(vecs @ vecs.conj().T)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return hermitian(z)
