"""Bipartite bookkeeping: dimensions, density matrices, partial transposition.

Composite indices are subsystem-A-major: ``i = a * n_b + b``. The partial
transpose always acts on subsystem B. Transposition on A is obtained as
``partial_transpose(rho, dims).T``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, Tolerances, eigvalsh, hermitian, numerical_rank


@dataclass(frozen=True)
class BipartiteDims:
    n_a: int
    n_b: int

    def __post_init__(self):
        if int(self.n_a) != self.n_a or int(self.n_b) != self.n_b:
            raise ValueError("subsystem dimensions must be integers")
        if self.n_a < 1 or self.n_b < 1:
            raise ValueError(f"subsystem dimensions must be >= 1, got {self.n_a}x{self.n_b}")
        object.__setattr__(self, "n_a", int(self.n_a))
        object.__setattr__(self, "n_b", int(self.n_b))

    @property
    def n(self) -> int:
        return self.n_a * self.n_b

    @classmethod
    def parse(cls, text: str) -> BipartiteDims:
        """Parse ``"3x3"`` style strings."""
        m = re.fullmatch(r"\s*(\d+)\s*[xX*]\s*(\d+)\s*", text)
        if m is None:
            raise ValueError(f"cannot parse dimensions {text!r}; expected e.g. '3x3'")
        return cls(int(m.group(1)), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.n_a}x{self.n_b}"


def _as_dims(dims) -> BipartiteDims:
    if isinstance(dims, BipartiteDims):
        return dims
    if isinstance(dims, str):
        return BipartiteDims.parse(dims)
    n_a, n_b = dims
    return BipartiteDims(n_a, n_b)


class NotDensityMatrixError(ValueError):
    """Input violates Hermiticity, positivity or unit trace."""


class NotPPTError(ValueError):
    """The partial transpose of the state is not positive semidefinite."""


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated bipartite density matrix.

    Construct through :func:`density_matrix`, which checks positivity and
    unit trace, or directly when the invariants are already guaranteed.
    """

    mat: np.ndarray
    dims: BipartiteDims

    @property
    def n(self) -> int:
        return self.dims.n

    def pt(self) -> np.ndarray:
        return partial_transpose(self.mat, self.dims)


def density_matrix(mat, dims, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    dims = _as_dims(dims)
    raw = np.asarray(mat, dtype=complex)
    if raw.shape != (dims.n, dims.n):
        raise NotDensityMatrixError(f"matrix shape {raw.shape} does not match dims {dims}")
    if np.max(np.abs(raw - raw.conj().T), initial=0.0) > 1e-10 * max(1.0, np.max(np.abs(raw))):
        raise NotDensityMatrixError("matrix is not Hermitian")
    a = hermitian(raw)
    tr = np.trace(a).real
    if abs(tr - 1) > 1e-12:
        raise NotDensityMatrixError(f"trace is {tr!r}, expected 1")
    vals = eigvalsh(a)
    if vals[0] < -tol.zero_eig * max(vals[-1], 1.0):
        raise NotDensityMatrixError(f"matrix has negative eigenvalue {vals[0]:.3e}")
    a.setflags(write=False)
    return DensityMatrix(a, dims)


def partial_transpose(rho, dims) -> np.ndarray:
    """Transpose on subsystem B: ``rho[(a,b),(a',b')] -> rho[(a,b'),(a',b)]``.

    Pure index permutation, so applying it twice returns the input bit for bit.
    """
    dims = _as_dims(dims)
    rho = np.asarray(rho)
    if rho.shape != (dims.n, dims.n):
        raise ValueError(f"matrix shape {rho.shape} does not match dims {dims}")
    t = rho.reshape(dims.n_a, dims.n_b, dims.n_a, dims.n_b)
    return t.transpose(0, 3, 2, 1).reshape(dims.n, dims.n).copy()


def product_state(rho_a, rho_b, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    """Kronecker product of two single-party density matrices."""
    parts = []
    for name, r in (("rho_a", rho_a), ("rho_b", rho_b)):
        r = hermitian(r)
        vals = eigvalsh(r)
        if abs(np.trace(r).real - 1) > 1e-12 or vals[0] < -tol.zero_eig * max(vals[-1], 1.0):
            raise NotDensityMatrixError(f"{name} is not a density matrix")
        parts.append(r)
    a, b = parts
    return density_matrix(np.kron(a, b), BipartiteDims(a.shape[0], b.shape[0]), tol)


def is_ppt(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    vals = eigvalsh(rho.pt())
    return bool(vals[0] > -tol.zero_eig * max(np.max(np.abs(vals)), 1.0))


def rank_pair(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> tuple[int, int]:
    """Ranks ``(n, m)`` of the state and of its partial transpose."""
    return numerical_rank(rho.mat, tol), numerical_rank(rho.pt(), tol)


def local_unitary(rho: DensityMatrix, u_a: np.ndarray, u_b: np.ndarray) -> DensityMatrix:
    u = np.kron(u_a, u_b)
    return DensityMatrix(hermitian(u @ rho.mat @ u.conj().T), rho.dims)


def schmidt_coefficients(psi, dims) -> np.ndarray:
    """Schmidt coefficients (singular values, descending) of a bipartite pure state."""
    dims = _as_dims(dims)
    return np.linalg.svd(np.asarray(psi).reshape(dims.n_a, dims.n_b), compute_uv=False)
