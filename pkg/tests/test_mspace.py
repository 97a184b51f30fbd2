import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_state
from oracles import pt_loops
from pptextreme.bipartite import BipartiteDims, partial_transpose
from pptextreme.linalg import image_projector
from pptextreme.mspace import (
    basis,
    combined_operator,
    conjugation_superop,
    devectorize,
    pt_conjugated,
    pt_superop,
    vectorize,
)

DIMS = [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)]
dims_st = st.sampled_from(DIMS)


def test_basis_for_n2():
    b = basis((1, 2))
    x = np.array([[0, 1], [1, 0]])
    y = np.array([[0, -1j], [1j, 0]])
    expect = [np.diag([1, 0]), np.diag([0, 1]), x / np.sqrt(2), y / np.sqrt(2)]
    for got, want in zip(b, expect):
        np.testing.assert_allclose(got, want, atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_basis_orthonormal_hermitian_complete(n):
    b = basis((1, n))
    assert len(b) == n * n
    gram = np.array([[np.trace(u @ v) for v in b] for u in b])
    np.testing.assert_allclose(gram, np.eye(n * n), atol=1e-14)
    for u in b:
        np.testing.assert_array_equal(u, u.conj().T)
    # completeness: sum_k B_k (x) B_k^T resolves the identity on flattened matrices
    a = np.random.default_rng(n).standard_normal((n, n))
    a = a + a.T
    np.testing.assert_allclose(sum(np.trace(u @ a).real * u for u in b), a, atol=1e-13)


@settings(max_examples=30, deadline=None)
@given(dims=dims_st, seed=st.integers(0, 2**32 - 1))
def test_vectorization_isometry(dims, seed):
    r = np.random.default_rng(seed)
    n = dims[0] * dims[1]
    a = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    b = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    a, b = a + a.conj().T, b + b.conj().T
    va, vb = vectorize(a, dims), vectorize(b, dims)
    assert va.dtype == float
    assert va @ vb == pytest.approx(np.trace(a @ b).real, rel=1e-12, abs=1e-12)
    np.testing.assert_allclose(devectorize(va, dims), a, atol=1e-12)


@pytest.mark.parametrize("dims", DIMS)
def test_pt_superop_signed_permutation(dims):
    pi = pt_superop(dims)
    n2 = pi.shape[0]
    np.testing.assert_array_equal(pi @ pi, np.eye(n2))
    np.testing.assert_array_equal(pi, pi.T)
    assert abs(abs(np.linalg.det(pi)) - 1) < 1e-12
    assert np.all(np.isin(pi, [-1.0, 0.0, 1.0]))
    a = np.random.default_rng(0).standard_normal((dims[0] * dims[1],) * 2)
    a = a + a.T
    np.testing.assert_allclose(pi @ vectorize(a, dims), vectorize(pt_loops(a, *dims), dims), atol=1e-14)


def test_pt_superop_is_a_copy():
    pi = pt_superop((2, 2))
    pi[0, 0] = 7
    assert pt_superop((2, 2))[0, 0] == 1


@settings(max_examples=25, deadline=None)
@given(dims=dims_st, rank=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_conjugation_superop_projection(dims, rank, seed):
    r = np.random.default_rng(seed)
    n = dims[0] * dims[1]
    rank = min(rank, n)
    p = image_projector(random_state(dims, rank, r))
    s = conjugation_superop(p, dims)
    np.testing.assert_allclose(s @ s, s, atol=1e-12)
    np.testing.assert_allclose(s, s.T, atol=1e-14)
    assert round(np.trace(s)) == rank * rank
    a = r.standard_normal((n, n))
    a = a + a.T
    np.testing.assert_allclose(s @ vectorize(a, dims), vectorize(p @ a @ p, dims), atol=1e-12)


def test_conjugation_superop_rejects_non_projector():
    with pytest.raises(ValueError):
        conjugation_superop(np.diag([1.0, 0.5, 0.0, 0.0]), (2, 2))


@settings(max_examples=25, deadline=None)
@given(dims=dims_st, r1=st.integers(1, 8), r2=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_combined_operator_spectrum_and_duality(dims, r1, r2, seed):
    r = np.random.default_rng(seed)
    n = dims[0] * dims[1]
    p = image_projector(random_state(dims, min(r1, n), r))
    q = image_projector(random_state(dims, min(r2, n), r))
    op = combined_operator(p, q, dims)
    vals = np.linalg.eigvalsh(op)
    assert vals[0] >= -1e-6 and vals[-1] <= 1 + 1e-6
    # the eigenvalue-1 multiplicity of P Qbar P equals that of Qbar P Qbar
    sp = conjugation_superop(p, dims)
    qbar = pt_conjugated(conjugation_superop(q, dims), dims)
    other = np.linalg.eigvalsh(qbar @ sp @ qbar)
    assert np.sum(vals > 1 - 1e-9) == np.sum(other > 1 - 1e-9)


def test_combined_operator_for_state_faces():
    dims = BipartiteDims(2, 2)
    rho = np.diag([0.5, 0.5, 0, 0]).astype(complex)
    p = image_projector(rho)
    q = image_projector(partial_transpose(rho, dims))
    vals = np.linalg.eigvalsh(combined_operator(p, q, dims))
    # rho = |0><0| (x) 1/2: the face is the 4-dim block of Hermitian 2x2 on B
    assert np.sum(vals > 1 - 1e-12) == 4
