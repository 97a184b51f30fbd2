import numpy as np
import pytest

from pptextreme.linalg import (
    NotPSDError,
    Tolerances,
    hermitian,
    image_basis,
    image_projector,
    is_psd,
    numerical_rank,
    random_hermitian,
    random_unitary,
    spectral_decompose,
)


def test_tolerances_defaults_and_validation():
    tol = Tolerances()
    assert tol.zero_eig == 1e-9
    assert tol.bisect == 1e-12
    assert tol.recon_for(9) == pytest.approx(9e-10)
    with pytest.raises(ValueError):
        Tolerances(zero_eig=0.0)
    with pytest.raises(ValueError):
        Tolerances(one_eig=0.5)


def test_hermitian_rejects_non_square():
    with pytest.raises(ValueError):
        hermitian(np.zeros((2, 3)))


def test_spectral_decompose_descending_and_reconstructs(rng):
    a = random_hermitian(6, rng)
    dec = spectral_decompose(a)
    assert np.all(np.diff(dec.eigenvalues) <= 0)
    np.testing.assert_allclose(dec.reconstruct(), a, atol=1e-12)
    np.testing.assert_allclose(dec.eigenvectors.conj().T @ dec.eigenvectors, np.eye(6), atol=1e-12)


def test_numerical_rank_and_image(rng):
    g = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    a = g @ g.conj().T
    assert numerical_rank(a) == 3
    assert numerical_rank(np.zeros((4, 4))) == 0
    v = image_basis(a)
    assert v.shape == (5, 3)
    p = image_projector(a)
    np.testing.assert_allclose(p @ p, p, atol=1e-12)
    np.testing.assert_allclose(p @ a, a, atol=1e-12)


def test_is_psd_and_image_basis_rejects_indefinite():
    assert is_psd(np.diag([1.0, 0.0, 1e-12]))
    assert not is_psd(np.diag([1.0, -1e-3]))
    with pytest.raises(NotPSDError):
        image_basis(np.diag([1.0, -0.5]))


def test_random_unitary_is_unitary(rng):
    u = random_unitary(7, rng)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(7), atol=1e-12)
