"""The real Hilbert space of N x N Hermitian matrices with scalar product Tr(AB).

Coordinates are taken in a fixed orthonormal basis (see :func:`basis`).
Superoperators are dense ``N^2 x N^2`` real arrays acting on those
coordinates.  Internally every linear map ``L`` on matrices is first written
on row-major flattened matrices and then conjugated by the unitary
``T[k, :] = conj(B_k).ravel()``, which sends a flattened Hermitian matrix to
its (real) coordinate vector.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .bipartite import BipartiteDims, _as_dims
from .linalg import DEFAULT_TOL, Tolerances, hermitian

_SQRT_HALF = np.sqrt(0.5)


@lru_cache(maxsize=32)
def _basis_array(n: int) -> np.ndarray:
    out = np.zeros((n * n, n, n), dtype=complex)
    for i in range(n):
        out[i, i, i] = 1.0
    k = n
    for i in range(n):
        for j in range(i + 1, n):
            out[k, i, j] = out[k, j, i] = _SQRT_HALF
            out[k + 1, i, j] = -1j * _SQRT_HALF
            out[k + 1, j, i] = 1j * _SQRT_HALF
            k += 2
    out.setflags(write=False)
    return out


@lru_cache(maxsize=32)
def _coord_map(n: int) -> np.ndarray:
    t = _basis_array(n).reshape(n * n, n * n).conj().copy()
    t.setflags(write=False)
    return t


def basis(dims) -> list[np.ndarray]:
    """Orthonormal basis of Hermitian matrices.

    Order: the N diagonal units ``E_ii``, then for each ``i < j`` (row-major)
    the pair ``(E_ij + E_ji)/sqrt 2`` and ``-i(E_ij - E_ji)/sqrt 2``.  For
    N = 2 this is ``diag(1,0), diag(0,1), X/sqrt 2, Y/sqrt 2``.
    """
    n = _as_dims(dims).n
    return [b.copy() for b in _basis_array(n)]


def vectorize(a, dims) -> np.ndarray:
    """Real coordinates ``Tr(B_k A)`` of a Hermitian matrix."""
    n = _as_dims(dims).n
    a = np.asarray(a)
    if a.shape != (n, n):
        raise ValueError(f"matrix shape {a.shape} does not match dimension {n}")
    return (_coord_map(n) @ hermitian(a).ravel()).real


def devectorize(v, dims) -> np.ndarray:
    n = _as_dims(dims).n
    v = np.asarray(v, dtype=float)
    if v.shape != (n * n,):
        raise ValueError(f"coordinate vector has shape {v.shape}, expected ({n * n},)")
    return hermitian((_coord_map(n).conj().T @ v).reshape(n, n))


@lru_cache(maxsize=32)
def _coord_rows(n: int):
    """Sparse form of the coordinate map: row k of T is ``c1[k] e_{i1[k]} + c2[k] e_{i2[k]}``."""
    t = _coord_map(n)
    i1 = np.empty(n * n, dtype=np.intp)
    i2 = np.empty(n * n, dtype=np.intp)
    c1 = np.zeros(n * n, dtype=complex)
    c2 = np.zeros(n * n, dtype=complex)
    for k, row in enumerate(t):
        nz = np.flatnonzero(row)
        i1[k], c1[k] = nz[0], row[nz[0]]
        if nz.size > 1:
            i2[k], c2[k] = nz[1], row[nz[1]]
        else:
            i2[k] = nz[0]
    return i1, i2, c1, c2


def _to_real(flat_map: np.ndarray, n: int) -> np.ndarray:
    """``Re(T L T^dagger)`` using the two-term rows of ``T``."""
    i1, i2, c1, c2 = _coord_rows(n)
    tl = c1[:, None] * flat_map[i1, :] + c2[:, None] * flat_map[i2, :]
    return (tl[:, i1] * c1.conj() + tl[:, i2] * c2.conj()).real


def conjugation_superop(p, dims, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Superoperator ``A -> P A P`` for an orthogonal projector ``P``.

    The result is an orthogonal projection on coordinate space of rank
    ``(rank P)^2``.
    """
    dims = _as_dims(dims)
    p = hermitian(p)
    if p.shape != (dims.n, dims.n):
        raise ValueError(f"projector shape {p.shape} does not match dims {dims}")
    if np.linalg.norm(p @ p - p) > tol.recon_for(dims.n) * 100:
        raise ValueError("input is not an orthogonal projector (P^2 != P)")
    s = _to_real(np.kron(p, p.T), dims.n)
    return (s + s.T) / 2


@lru_cache(maxsize=32)
def _pt_permutation(n_a: int, n_b: int) -> np.ndarray:
    n = n_a * n_b
    idx = np.arange(n * n).reshape(n_a, n_b, n_a, n_b)
    return idx.transpose(0, 3, 2, 1).ravel()


@lru_cache(maxsize=32)
def _pt_superop_cached(n_a: int, n_b: int) -> np.ndarray:
    n = n_a * n_b
    # flattened partial transposition is a permutation matrix
    flat = np.eye(n * n)[_pt_permutation(n_a, n_b)]
    pi = _to_real(flat, n)
    # a signed permutation in this basis; snap rounding so that Pi^2 = I exactly
    pi = np.round(pi)
    pi.setflags(write=False)
    return pi


@lru_cache(maxsize=32)
def _pt_signed_perm(n_a: int, n_b: int):
    pi = _pt_superop_cached(n_a, n_b)
    idx = np.argmax(np.abs(pi), axis=1)
    return idx, pi[np.arange(pi.shape[0]), idx]


def pt_superop(dims) -> np.ndarray:
    """Partial transposition as an orthogonal involution on coordinate space."""
    dims = _as_dims(dims)
    return _pt_superop_cached(dims.n_a, dims.n_b).copy()


def combined_operator(p, q, dims, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """The symmetric operator ``P Qbar P`` with ``Qbar = Pi Q Pi``.

    ``P`` and ``Q`` are Hilbert-space projectors; the returned superoperator has
    spectrum in [0, 1], and its eigenvalue-1 eigenspace is the intersection of
    the two faces ``P M P`` and ``Pi(Q M Q)``.
    """
    dims = _as_dims(dims)
    sp = conjugation_superop(p, dims, tol)
    sq = conjugation_superop(q, dims, tol)
    idx, sign = _pt_signed_perm(dims.n_a, dims.n_b)
    qbar = (sign[:, None] * sq[idx, :])[:, idx] * sign
    out = sp @ qbar @ sp
    return (out + out.T) / 2


def pt_conjugated(superop: np.ndarray, dims) -> np.ndarray:
    """``Pi S Pi`` for a superoperator ``S``."""
    dims = _as_dims(dims)
    pi = _pt_superop_cached(dims.n_a, dims.n_b)
    return pi @ superop @ pi


__all__ = [
    "BipartiteDims",
    "basis",
    "vectorize",
    "devectorize",
    "conjugation_superop",
    "pt_superop",
    "combined_operator",
    "pt_conjugated",
]
