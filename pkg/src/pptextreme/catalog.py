"""Reference states: maximally mixed, pure product, Bell, UPB Tiles and the 3x3 Horodecki family."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .bipartite import BipartiteDims, DensityMatrix, _as_dims, density_matrix, is_ppt, rank_pair
from .linalg import DEFAULT_TOL


@dataclass(frozen=True, eq=False)
class NamedState:
    name: str
    rho: DensityMatrix
    expected_rank_pair: tuple[int, int] | None = None
    expected_extreme: bool | None = None
    source: str = ""


def _self_check(state: NamedState, ppt: bool = True) -> NamedState:
    if ppt and not is_ppt(state.rho):
        raise AssertionError(f"{state.name}: constructed state is not PPT")
    if state.expected_rank_pair is not None and rank_pair(state.rho) != state.expected_rank_pair:
        raise AssertionError(f"{state.name}: rank pair {rank_pair(state.rho)} != {state.expected_rank_pair}")
    return state


def maximally_mixed(dims) -> NamedState:
    dims = _as_dims(dims)
    rho = density_matrix(np.eye(dims.n) / dims.n, dims)
    return NamedState(
        name=f"mixed:{dims}",
        rho=rho,
        expected_rank_pair=(dims.n, dims.n),
        expected_extreme=dims.n == 1,
        source="1/N",
    )


def pure_product(psi_a, psi_b) -> NamedState:
    psi_a = np.asarray(psi_a, dtype=complex)
    psi_b = np.asarray(psi_b, dtype=complex)
    psi_a = psi_a / np.linalg.norm(psi_a)
    psi_b = psi_b / np.linalg.norm(psi_b)
    psi = np.kron(psi_a, psi_b)
    rho = density_matrix(np.outer(psi, psi.conj()), BipartiteDims(psi_a.size, psi_b.size))
    return NamedState("product", rho, expected_rank_pair=(1, 1), expected_extreme=True, source="pure product")


def bell_state() -> NamedState:
    """``|phi+><phi+|`` with ``|phi+> = (|00> + |11>)/sqrt 2``; rank (1, 4) after transposition."""
    psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    rho = density_matrix(np.outer(psi, psi), (2, 2))
    return NamedState("bell", rho, expected_rank_pair=None, expected_extreme=None, source="Bell state")


# Bennett, DiVincenzo, Mor, Shor, Smolin, Terhal, PRL 82, 5385 (1999):
# Tiles UPB on 3x3, |psi_i> = |a_i> (x) |b_i>.
_S2 = 1 / np.sqrt(2)
_S3 = 1 / np.sqrt(3)
TILES_A = np.array([[1, 0, 0], [_S2, -_S2, 0], [0, 0, 1], [0, _S2, -_S2], [_S3, _S3, _S3]])
TILES_B = np.array([[_S2, -_S2, 0], [0, 0, 1], [0, _S2, -_S2], [1, 0, 0], [_S3, _S3, _S3]])


def upb_tiles_state() -> NamedState:
    """Bound entangled state ``(I - sum_i |psi_i><psi_i|)/4`` built from the Tiles UPB."""
    vecs = np.stack([np.kron(a, b) for a, b in zip(TILES_A, TILES_B)])
    gram = vecs @ vecs.T
    if not np.allclose(gram, np.eye(5), atol=1e-14):
        raise AssertionError("Tiles vectors are not orthonormal")
    rho = (np.eye(9) - vecs.T @ vecs) / 4
    state = NamedState(
        "upb-tiles",
        density_matrix(rho, (3, 3)),
        expected_rank_pair=(4, 4),
        expected_extreme=True,
        source="Bennett et al., PRL 82, 5385 (1999)",
    )
    return _self_check(state)


def horodecki_state(a: float) -> NamedState:
    """P. Horodecki, Phys. Lett. A 232, 333 (1997): PPT entangled 3x3 family, ``0 < a < 1``.

    ``rho_a = 1/(8a+1) [[a,0,0,0,a,0,0,0,a], ..., [a,0,0,0,a,0,c,0,b]]`` with
    ``b = (1+a)/2`` and ``c = sqrt(1-a^2)/2``.
    """
    if not 0 < a < 1:
        raise ValueError(f"parameter a={a!r} must lie in (0, 1)")
    b = (1 + a) / 2
    c = np.sqrt(1 - a * a) / 2
    m = np.diag([a, a, a, a, a, a, b, a, b]).astype(float)
    for i, j in ((0, 4), (0, 8), (4, 8)):
        m[i, j] = m[j, i] = a
    m[6, 8] = m[8, 6] = c
    state = NamedState(
        f"horodecki:{a:g}",
        density_matrix(m / (8 * a + 1), (3, 3)),
        expected_rank_pair=None,
        expected_extreme=False,
        source="P. Horodecki, Phys. Lett. A 232, 333 (1997)",
    )
    return _self_check(state)


def by_name(name: str) -> NamedState:
    """Resolve ``mixed:3x3``, ``upb-tiles``, ``horodecki:0.42`` or ``bell``."""
    key = name.strip().lower()
    if key == "upb-tiles":
        return upb_tiles_state()
    if key == "bell":
        return bell_state()
    m = re.fullmatch(r"mixed:(.+)", key)
    if m:
        return maximally_mixed(m.group(1))
    m = re.fullmatch(r"horodecki:(.+)", key)
    if m:
        return horodecki_state(float(m.group(1)))
    raise KeyError(f"unknown catalog state {name!r}")


CATALOG_NAMES = ("mixed:<AxB>", "upb-tiles", "horodecki:<a>", "bell")
__all__ = [
    "NamedState",
    "maximally_mixed",
    "pure_product",
    "bell_state",
    "upb_tiles_state",
    "horodecki_state",
    "by_name",
    "DEFAULT_TOL",
]
